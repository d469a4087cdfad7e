#include "spatent/prob.hpp"

#include <utility>

namespace spatent {

namespace {

std::vector<std::string> numbered_labels(Eigen::Index n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

}  // namespace

Pmf::Pmf(std::vector<std::string> labels, Eigen::VectorXd probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
  if (static_cast<Eigen::Index>(labels_.size()) != probs_.size()) {
    throw InputError("pmf has " + std::to_string(labels_.size()) + " labels for " +
                     std::to_string(probs_.size()) + " probabilities");
  }
  check_distribution(probs_);
}

Pmf::Pmf(Eigen::VectorXd probs) : Pmf(numbered_labels(probs.size()), probs) {}

Pmf Pmf::uniform(Eigen::Index n) {
  if (n <= 0) throw InputError("uniform pmf needs at least one label");
  return Pmf(Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
}

Pmf Pmf::from_counts(std::vector<std::string> labels, const Eigen::VectorXd& counts) {
  if ((counts.array() < 0.0).any()) throw InvalidDistribution("negative count");
  const double total = counts.sum();
  if (total <= 0.0) throw InvalidDistribution("counts sum to zero");
  return Pmf(std::move(labels), counts / total);
}

JointPmf::JointPmf(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                   Eigen::MatrixXd probs)
    : row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)),
      probs_(std::move(probs)) {
  if (static_cast<Eigen::Index>(row_labels_.size()) != probs_.rows() ||
      static_cast<Eigen::Index>(col_labels_.size()) != probs_.cols()) {
    throw InputError("joint pmf labels do not match the table shape");
  }
  check_distribution(probs_, "joint pmf");
}

JointPmf::JointPmf(Eigen::MatrixXd probs)
    : JointPmf(numbered_labels(probs.rows()), numbered_labels(probs.cols()), probs) {}

JointPmf JointPmf::from_conditionals(std::vector<std::string> row_labels,
                                     std::vector<std::string> col_labels,
                                     const Eigen::MatrixXd& conditionals,
                                     const Eigen::VectorXd& weights) {
  if (weights.size() != conditionals.cols()) throw InputError("weights do not match columns");
  return JointPmf(std::move(row_labels), std::move(col_labels),
                  conditionals * weights.asDiagonal());
}

JointPmf JointPmf::product(const Pmf& rows, const Pmf& cols) {
  return JointPmf(rows.labels(), cols.labels(), rows.probs() * cols.probs().transpose());
}

Pmf JointPmf::row_margin() const { return Pmf(row_labels_, probs_.rowwise().sum()); }

Pmf JointPmf::col_margin() const {
  return Pmf(col_labels_, probs_.colwise().sum().transpose());
}

Pmf JointPmf::column_conditional(Eigen::Index k) const {
  const double mass = probs_.col(k).sum();
  if (mass <= 0.0) throw InvalidDistribution("conditioning column has zero mass");
  return Pmf(row_labels_, probs_.col(k) / mass);
}

Pmf JointPmf::row_conditional(Eigen::Index r) const {
  const double mass = probs_.row(r).sum();
  if (mass <= 0.0) throw InvalidDistribution("conditioning row has zero mass");
  return Pmf(col_labels_, probs_.row(r).transpose() / mass);
}

JointPmf JointPmf::transposed() const {
  return JointPmf(col_labels_, row_labels_, probs_.transpose());
}

double shannon(const Pmf& p) { return entropy_of(p.probs()); }

Flagged<double> shannon_normalized(const Pmf& p) {
  if (p.size() < 2) return {0.0, true};
  return {shannon(p) / std::log(static_cast<double>(p.size())), false};
}

double kl_divergence(const Pmf& p, const Pmf& q) {
  if (p.labels() != q.labels()) throw InputError("divergence needs identical label sets");
  return divergence_of(p.probs(), q.probs());
}

double joint_entropy(const JointPmf& j) { return entropy_of(j.probs()); }

Flagged<double> conditional_entropy(const JointPmf& j, Margin conditioning) {
  const Eigen::MatrixXd table =
      conditioning == Margin::Cols ? j.probs() : Eigen::MatrixXd(j.probs().transpose());
  Flagged<double> out;
  for (Eigen::Index k = 0; k < table.cols(); ++k) {
    const double weight = table.col(k).sum();
    if (weight <= 0.0) {
      out.flagged = true;
      continue;
    }
    out.value += weight * entropy_of(table.col(k) / weight);
  }
  return out;
}

double mutual_information(const JointPmf& j) { return mutual_information_of(j.probs()); }

}  // namespace spatent
