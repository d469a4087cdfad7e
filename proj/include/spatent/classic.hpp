#pragma once

#include "spatent/cooccur.hpp"
#include "spatent/lattice.hpp"

#include <Eigen/Core>

namespace spatent {

/// Occurrence probabilities p_g of a phenomenon over the G areas of a window,
/// with the area sizes T_g.
class AreaProbabilities {
 public:
  AreaProbabilities(Eigen::VectorXd probs, Eigen::VectorXd sizes);

  const Eigen::VectorXd& probs() const noexcept { return probs_; }
  const Eigen::VectorXd& sizes() const noexcept { return sizes_; }
  Index num_areas() const noexcept { return probs_.size(); }
  /// lambda_g = p_g / T_g.
  Eigen::VectorXd intensity() const { return probs_.cwiseQuotient(sizes_); }

 private:
  Eigen::VectorXd probs_;
  Eigen::VectorXd sizes_;
};

/// Row-standardised G x G area adjacency with a positive diagonal.
class AreaNeighbourhood {
 public:
  explicit AreaNeighbourhood(Eigen::MatrixXd weights);

  /// Each area neighbours only itself.
  static AreaNeighbourhood identity(Index num_areas);
  /// Equal weights over the areas whose centroids lie within `radius`
  /// (inclusive) of each area's centroid, itself included.
  static AreaNeighbourhood within(const AreaPartition& partition, double radius);

  const Eigen::MatrixXd& weights() const noexcept { return weights_; }
  Index num_areas() const noexcept { return weights_.rows(); }

 private:
  Eigen::MatrixXd weights_;
};

/// p_g = c_g / C, the share of `target` pixels falling in each area.
AreaProbabilities estimate_area_probs(const CategoricalGrid& grid, const AreaPartition& partition,
                                      Category target);

/// sum_g p_g log(T_g / p_g).
double batty_entropy(const AreaProbabilities& areas);

/// sum_g p_g log(1 / p~_g) with p~ = A p.
double karlstrom_entropy(const AreaProbabilities& areas, const AreaNeighbourhood& neighbourhood);

/// Entropy of the pair variable over edge-sharing pixel pairs. Ordered pairs
/// by default.
double oneill_entropy(const CategoricalGrid& grid, bool ordered = true, unsigned threads = 1);

/// Entropy of the pair variable over all pairs within distance d (d >= 1).
double leibovici_entropy(const CategoricalGrid& grid, double d, bool ordered = true,
                         unsigned threads = 1);

/// 1 - normalised contiguous-pair entropy; the normaliser is log(I^2) for
/// ordered pairs and log((I^2 + I) / 2) otherwise.
double relative_contagion(const CategoricalGrid& grid, bool ordered = true, unsigned threads = 1);

/// Negated contiguous-pair entropy.
double parresol_edwards(const CategoricalGrid& grid, bool ordered = true, unsigned threads = 1);

}  // namespace spatent
