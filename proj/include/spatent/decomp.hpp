#pragma once

#include "spatent/cooccur.hpp"
#include "spatent/error.hpp"
#include "spatent/prob.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace spatent {

/// Identities inside a decomposition are checked to this absolute tolerance.
inline constexpr double kIdentityTolerance = 1e-10;

struct BandTerms {
  std::string label;
  double p_w = 0.0;
  /// H(Z | w_k), the entropy of pair categories within the band.
  double residual_partial = 0.0;
  /// PI(Z, w_k) = KL(p(Z | w_k) || p(Z)).
  double info_partial = 0.0;
  /// Band holds no pairs; both terms are 0 and p_w is 0.
  bool empty = false;
};

/// Additive split of the pair entropy H(Z) into the part explained by the
/// distance class W and the residual left after conditioning on it:
///
///   H(Z) = MI(Z, W) + H(Z)_W = sum_k p(w_k) [PI(Z, w_k) + H(Z | w_k)].
struct EntropyDecomposition {
  double marginal = 0.0;
  double residual_global = 0.0;
  double mutual_information = 0.0;
  double mi_proportional = 0.0;
  /// H(Z) = 0, so the proportional MI is set to 0 by convention.
  bool mi_proportional_flagged = false;
  std::vector<BandTerms> bands;
};

double partial_residual(const Pmf& z_given_band);

/// sum_k p(w_k) H(Z | w_k) over the columns of an R x K conditional table.
/// Columns with zero weight are skipped.
double global_residual(const Pmf& p_w, const Eigen::MatrixXd& conditionals);

/// MI of a Z x W joint table, computed as KL(p_ZW || p_Z p_W) and checked
/// against H(Z) - H(Z)_W. Throws ConsistencyError if the two disagree.
double spatial_mutual_information(const JointPmf& joint);

/// KL(p(Z | w_k) || p(Z)).
double partial_information(const Pmf& z_given_band, const Pmf& p_z);

/// MI / H(Z); 0 and flagged when H(Z) = 0.
Flagged<double> proportional_mi(const EntropyDecomposition& decomposition);

EntropyDecomposition decompose(const CooccurrenceEstimate& estimate);
/// Requires an unordered sample.
EntropyDecomposition decompose(const PairSample& sample);
EntropyDecomposition decompose(const CategoricalGrid& grid, const DistanceClassification& bands,
                               unsigned threads = 1);

nlohmann::json to_json(const EntropyDecomposition& decomposition);
/// Column names of the flat CSV form for a decomposition with `num_bands` bands.
std::string csv_header(Index num_bands);
std::string csv_row(const EntropyDecomposition& decomposition);

}  // namespace spatent
