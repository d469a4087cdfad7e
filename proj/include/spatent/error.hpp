#pragma once

#include <stdexcept>
#include <string>

namespace spatent {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range caller input (bad index, bad file, bad shape).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Probability vector with negative entries or mass different from one.
class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

/// p_i > 0 where q_i = 0 in a divergence.
class AbsoluteContinuityError : public Error {
 public:
  using Error::Error;
};

class UnsupportedPartition : public Error {
 public:
  using Error::Error;
};

class UnsupportedDegree : public Error {
 public:
  using Error::Error;
};

/// A pair distance falls outside every band of the classification.
class CoverageError : public Error {
 public:
  using Error::Error;
};

class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

/// Target category absent from the grid, so area probabilities are undefined.
class UndefinedPhenomenon : public Error {
 public:
  using Error::Error;
};

/// Two routes to the same quantity disagree beyond tolerance.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A value together with a flag marking that a degenerate case was hit and the
/// value is a conventional default rather than a computed quantity.
template <typename T>
struct Flagged {
  T value{};
  bool flagged = false;
};

}  // namespace spatent
