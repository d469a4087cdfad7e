#pragma once

#include "spatent/lattice.hpp"
#include "spatent/prob.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spatent {

/// How pixel co-occurrences are turned into categories of the pair variable Z.
struct CooccurrenceScheme {
  Category num_categories = 2;
  bool ordered = false;
  int degree = 2;

  bool operator==(const CooccurrenceScheme&) const = default;
};

/// Number of Z categories: I^m when ordered, C(I+m-1, m) otherwise.
/// Throws ArithmeticOverflow when the count does not fit in 64 bits.
std::uint64_t count_categories(const CooccurrenceScheme& scheme);

/// Z category of the pair (first, second), where `first` is the pixel that
/// precedes in row-major order. Unordered categories enumerate {i <= j}
/// lexicographically; ordered ones enumerate (i, j) row-major.
Index z_index(Category first, Category second, const CooccurrenceScheme& scheme);

/// "(i,j)" for ordered categories, "{i,j}" for unordered ones.
std::string z_label(Index r, const CooccurrenceScheme& scheme);
std::vector<std::string> z_labels(const CooccurrenceScheme& scheme);

/// The distance-class variable W: K bands (d_{k-1}, d_k] over pair distances.
class DistanceClassification {
 public:
  explicit DistanceClassification(std::vector<double> breaks);

  /// Breaks 0, 1, 2, 5, 10, 20, 30, 50*sqrt(2).
  static DistanceClassification standard();
  /// The standard breaks with the last one widened, if needed, to cover `grid`.
  static DistanceClassification standard_for(const CategoricalGrid& grid);
  /// Single cumulative band (0, d].
  static DistanceClassification cumulative(double d);
  /// Comma-separated increasing break list, e.g. "0,1,2,5".
  static DistanceClassification parse(const std::string& breaks);

  Index num_bands() const noexcept { return static_cast<Index>(breaks_.size()) - 1; }
  const std::vector<double>& breaks() const noexcept { return breaks_; }
  double lower(Index k) const { return breaks_[static_cast<std::size_t>(k)]; }
  double upper(Index k) const { return breaks_[static_cast<std::size_t>(k) + 1]; }

  /// Band whose interval contains `distance`, if any.
  std::optional<Index> band_of(double distance) const noexcept;
  /// Same, for a squared integer distance, compared without a square root.
  std::optional<Index> band_of_squared(std::int64_t squared) const noexcept;

  /// True when every pair distance of the grid falls in some band.
  bool covers(const CategoricalGrid& grid) const;

  std::string label(Index k) const;
  std::vector<std::string> labels() const;

  /// Classification with bands k and k+1 joined.
  DistanceClassification merged(Index k) const;

  bool operator==(const DistanceClassification&) const = default;

 private:
  std::vector<double> breaks_;
};

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using CountVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Tabulated co-occurrences: entry (r, k) counts pixel pairs of Z category r
/// whose centroid distance lies in band k. Column sums are the Q_k.
class PairSample {
 public:
  PairSample(CooccurrenceScheme scheme, DistanceClassification bands, CountMatrix counts);

  const CooccurrenceScheme& scheme() const noexcept { return scheme_; }
  const DistanceClassification& bands() const noexcept { return bands_; }
  const CountMatrix& counts() const noexcept { return counts_; }

  Index num_bands() const noexcept { return counts_.cols(); }
  Index num_z_categories() const noexcept { return counts_.rows(); }

  /// Q_k for every band.
  CountVector band_totals() const { return counts_.colwise().sum().transpose(); }
  /// Q.
  std::int64_t total() const { return counts_.sum(); }
  /// Tabulation of all pairs regardless of band.
  CountVector pooled() const { return counts_.rowwise().sum(); }

  /// Collapses (i,j) and (j,i); identity on an unordered sample.
  PairSample unordered() const;
  /// Sample over the classification with bands k and k+1 joined.
  PairSample merged_bands(Index k) const;

  /// `band,z_category,count`, one row per nonzero cell.
  void write_csv(std::ostream& out) const;

  bool operator==(const PairSample&) const = default;

 private:
  CooccurrenceScheme scheme_;
  DistanceClassification bands_;
  CountMatrix counts_;
};

/// Tallies every unordered pixel pair {u, v}, u != v, into its distance band
/// and Z category. Work is organised by displacement vector, so no N x N
/// adjacency structure is built; `threads` > 1 splits displacement rows across
/// workers with identical results.
PairSample enumerate_pairs(const CategoricalGrid& grid, const DistanceClassification& bands,
                           const CooccurrenceScheme& scheme, unsigned threads = 1);

/// O(N^2) reference enumerator that visits every pixel pair explicitly.
PairSample enumerate_pairs_reference(const CategoricalGrid& grid,
                                     const DistanceClassification& bands,
                                     const CooccurrenceScheme& scheme);

/// Estimated distributions of Z, W and Z|W from a pair sample.
struct CooccurrenceEstimate {
  Pmf p_w;
  /// R x K; column k is p(Z | w_k), or zeros for an empty band.
  Eigen::MatrixXd conditionals;
  std::vector<bool> empty_band;
  Pmf p_z;
  JointPmf joint;

  /// p(Z | w_k) as a Pmf. Throws for an empty band.
  Pmf conditional(Index k) const;
};

CooccurrenceEstimate conditional_pmfs(const PairSample& sample);

}  // namespace spatent
