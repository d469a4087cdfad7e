#pragma once

#include "spatent/error.hpp"

#include <Eigen/Core>

#include <cmath>
#include <string>
#include <vector>

namespace spatent {

/// Tolerance on total probability mass.
inline constexpr double kMassTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Expression-level kernels. These accept any dense Eigen expression holding
// probabilities and use the natural logarithm with 0 log(1/0) = 0.
// They do not validate; the Pmf/JointPmf overloads below do.
// ---------------------------------------------------------------------------

template <typename Scalar>
inline Scalar information_term(Scalar p) {
  return p > Scalar(0) ? -p * std::log(p) : Scalar(0);
}

/// Sum over all coefficients of p log(1/p).
template <typename Derived>
typename Derived::Scalar entropy_of(const Eigen::DenseBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  return p.derived().unaryExpr([](Scalar x) { return information_term(x); }).sum();
}

/// Sum of p log(p/q) over coefficients with p > 0. Requires q > 0 wherever p > 0.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar divergence_of(const Eigen::DenseBase<DerivedP>& p,
                                        const Eigen::DenseBase<DerivedQ>& q) {
  using Scalar = typename DerivedP::Scalar;
  eigen_assert(p.size() == q.size());
  Scalar sum(0);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Scalar pi = p.derived().coeff(i);
    if (pi <= Scalar(0)) continue;
    const Scalar qi = q.derived().coeff(i);
    if (qi <= Scalar(0)) {
      throw AbsoluteContinuityError("p has mass at index " + std::to_string(i) +
                                    " where q has none");
    }
    sum += pi * std::log(pi / qi);
  }
  return sum;
}

/// Mutual information of a two-way table of joint probabilities.
template <typename Derived>
typename Derived::Scalar mutual_information_of(const Eigen::MatrixBase<Derived>& joint) {
  using Scalar = typename Derived::Scalar;
  const auto rows = joint.rowwise().sum().eval();
  const auto cols = joint.colwise().sum().eval();
  Scalar sum(0);
  for (Eigen::Index k = 0; k < joint.cols(); ++k) {
    for (Eigen::Index r = 0; r < joint.rows(); ++r) {
      const Scalar p = joint(r, k);
      if (p > Scalar(0)) sum += p * std::log(p / (rows(r) * cols(k)));
    }
  }
  return sum;
}

/// Throws InvalidDistribution unless all entries are >= 0 and sum to 1.
template <typename Derived>
void check_distribution(const Eigen::DenseBase<Derived>& p, const char* what = "pmf") {
  if (p.size() == 0) throw InvalidDistribution(std::string(what) + " is empty");
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double v = static_cast<double>(p.derived().coeff(i));
    if (!(v >= 0.0)) {
      throw InvalidDistribution(std::string(what) + " has a negative or NaN entry");
    }
  }
  const double mass = static_cast<double>(p.sum());
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw InvalidDistribution(std::string(what) + " has total mass " + std::to_string(mass));
  }
}

// ---------------------------------------------------------------------------
// Labelled containers
// ---------------------------------------------------------------------------

/// Univariate probability mass function over named categories.
class Pmf {
 public:
  Pmf(std::vector<std::string> labels, Eigen::VectorXd probs);

  /// Labels "1".."n".
  explicit Pmf(Eigen::VectorXd probs);

  static Pmf uniform(Eigen::Index n);
  /// Relative frequencies of nonnegative counts; throws if they sum to zero.
  static Pmf from_counts(std::vector<std::string> labels, const Eigen::VectorXd& counts);

  Eigen::Index size() const noexcept { return probs_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Eigen::VectorXd& probs() const noexcept { return probs_; }
  double operator[](Eigen::Index i) const { return probs_(i); }

 private:
  std::vector<std::string> labels_;
  Eigen::VectorXd probs_;
};

/// Two-way probability table; rows index the first variable, columns the second.
class JointPmf {
 public:
  JointPmf(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
           Eigen::MatrixXd probs);
  explicit JointPmf(Eigen::MatrixXd probs);

  /// p_{row|col} diag(p_col): column k of `conditionals` scaled by weights(k).
  static JointPmf from_conditionals(std::vector<std::string> row_labels,
                                    std::vector<std::string> col_labels,
                                    const Eigen::MatrixXd& conditionals,
                                    const Eigen::VectorXd& weights);

  /// Outer product p q'.
  static JointPmf product(const Pmf& rows, const Pmf& cols);

  Eigen::Index rows() const noexcept { return probs_.rows(); }
  Eigen::Index cols() const noexcept { return probs_.cols(); }
  const Eigen::MatrixXd& probs() const noexcept { return probs_; }
  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }

  Pmf row_margin() const;
  Pmf col_margin() const;
  /// Distribution of the row variable given column k. Throws on zero mass.
  Pmf column_conditional(Eigen::Index k) const;
  /// Distribution of the column variable given row r. Throws on zero mass.
  Pmf row_conditional(Eigen::Index r) const;

  JointPmf transposed() const;

 private:
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  Eigen::MatrixXd probs_;
};

/// Which variable of a JointPmf is conditioned on.
enum class Margin { Rows, Cols };

double shannon(const Pmf& p);

/// shannon(p) / log(n). A single-label pmf has no spread to normalize and
/// yields 0 with the flag set.
Flagged<double> shannon_normalized(const Pmf& p);

double kl_divergence(const Pmf& p, const Pmf& q);

double joint_entropy(const JointPmf& j);

/// Residual entropy of the other variable given `conditioning`. Labels of the
/// conditioning variable with zero mass are skipped and set the flag.
Flagged<double> conditional_entropy(const JointPmf& j, Margin conditioning);

double mutual_information(const JointPmf& j);

}  // namespace spatent
