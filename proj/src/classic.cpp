#include "spatent/classic.hpp"

#include "spatent/error.hpp"
#include "spatent/prob.hpp"

#include <cmath>

namespace spatent {

AreaProbabilities::AreaProbabilities(Eigen::VectorXd probs, Eigen::VectorXd sizes)
    : probs_(std::move(probs)), sizes_(std::move(sizes)) {
  if (probs_.size() != sizes_.size()) throw InputError("probabilities and sizes differ in length");
  check_distribution(probs_, "area probabilities");
  if ((sizes_.array() <= 0.0).any()) throw InputError("every area size must be positive");
}

AreaNeighbourhood::AreaNeighbourhood(Eigen::MatrixXd weights) : weights_(std::move(weights)) {
  if (weights_.rows() != weights_.cols() || weights_.rows() == 0) {
    throw InputError("neighbourhood weights must be a nonempty square matrix");
  }
  if ((weights_.array() < 0.0).any()) throw InputError("neighbourhood weights must be nonnegative");
  if ((weights_.diagonal().array() <= 0.0).any()) {
    throw InputError("every area must neighbour itself");
  }
  if (((weights_.rowwise().sum().array() - 1.0).abs() > kMassTolerance).any()) {
    throw InputError("neighbourhood weights must be row-standardised");
  }
}

AreaNeighbourhood AreaNeighbourhood::identity(Index num_areas) {
  return AreaNeighbourhood(Eigen::MatrixXd::Identity(num_areas, num_areas));
}

AreaNeighbourhood AreaNeighbourhood::within(const AreaPartition& partition, double radius) {
  if (!(radius >= 0.0)) throw InputError("neighbourhood radius must be nonnegative");
  const Index g = partition.num_areas();
  const auto& centroids = partition.centroids();
  Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(g, g);
  for (Index a = 0; a < g; ++a) {
    for (Index b = 0; b < g; ++b) {
      if (a == b || (centroids.row(a) - centroids.row(b)).norm() <= radius) adjacency(a, b) = 1.0;
    }
  }
  const Eigen::VectorXd degree = adjacency.rowwise().sum();
  return AreaNeighbourhood(degree.cwiseInverse().asDiagonal() * adjacency);
}

AreaProbabilities estimate_area_probs(const CategoricalGrid& grid, const AreaPartition& partition,
                                      Category target) {
  if (partition.rows() != grid.rows() || partition.cols() != grid.cols()) {
    throw InputError("partition does not match the grid shape");
  }
  Eigen::VectorXd hits = Eigen::VectorXd::Zero(partition.num_areas());
  for (Index u = 0; u < grid.size(); ++u) {
    if (grid.at(u) == target) hits(partition.area_of(u) - 1) += 1.0;
  }
  const double total = hits.sum();
  if (total == 0.0) {
    throw UndefinedPhenomenon("category " + std::to_string(target) + " does not occur in the grid");
  }
  return AreaProbabilities(hits / total, partition.sizes());
}

double batty_entropy(const AreaProbabilities& areas) {
  const auto& p = areas.probs();
  const auto& t = areas.sizes();
  double sum = 0.0;
  for (Index g = 0; g < p.size(); ++g) {
    if (p(g) > 0.0) sum += p(g) * std::log(t(g) / p(g));
  }
  return sum;
}

double karlstrom_entropy(const AreaProbabilities& areas, const AreaNeighbourhood& neighbourhood) {
  if (neighbourhood.num_areas() != areas.num_areas()) {
    throw InputError("neighbourhood and probabilities cover different areas");
  }
  const Eigen::VectorXd smoothed = neighbourhood.weights() * areas.probs();
  const auto& p = areas.probs();
  double sum = 0.0;
  for (Index g = 0; g < p.size(); ++g) {
    if (p(g) <= 0.0) continue;
    // unreachable with a positive diagonal
    if (smoothed(g) <= 0.0) throw ConsistencyError("smoothed probability vanished on a charged area");
    sum -= p(g) * std::log(smoothed(g));
  }
  return sum;
}

double leibovici_entropy(const CategoricalGrid& grid, double d, bool ordered, unsigned threads) {
  if (!(d >= 1.0)) throw InputError("cumulative distance must be at least one pixel");
  // pairs beyond d fall into a catch-all second band that is ignored
  const CooccurrenceScheme scheme{grid.num_categories(), ordered};
  const double far = std::max(d, grid.max_pair_distance());
  const auto bands = far > d ? DistanceClassification({0.0, d, far}) : DistanceClassification({0.0, d});
  const auto sample = enumerate_pairs(grid, bands, scheme, threads);
  if (sample.band_totals()(0) == 0) throw InputError("grid has no pixel pairs within distance d");
  return shannon(conditional_pmfs(sample).conditional(0));
}

double oneill_entropy(const CategoricalGrid& grid, bool ordered, unsigned threads) {
  return leibovici_entropy(grid, 1.0, ordered, threads);
}

double relative_contagion(const CategoricalGrid& grid, bool ordered, unsigned threads) {
  if (grid.num_categories() < 2) throw InputError("relative contagion needs I >= 2");
  const auto r = count_categories({grid.num_categories(), ordered});
  return 1.0 - oneill_entropy(grid, ordered, threads) / std::log(static_cast<double>(r));
}

double parresol_edwards(const CategoricalGrid& grid, bool ordered, unsigned threads) {
  return -oneill_entropy(grid, ordered, threads);
}

}  // namespace spatent
