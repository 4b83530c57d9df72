#pragma once

#include <stdexcept>
#include <string>

namespace homoset {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A matrix required to be invertible failed the scale-relative
/// determinant test |det| > 1e-12 * frob^3.
class NonInvertibleError : public Error {
 public:
  using Error::Error;
};

/// The denominator of the double-root formula vanished: the pencil has a
/// triple root or no unique double root.
class DegenerateRootError : public Error {
 public:
  using Error::Error;
};

/// A generated scene violates its own invariants (w_i = 0, no visible
/// region, ...).
class DegenerateSceneError : public Error {
 public:
  using Error::Error;
};

/// Dehomogenisation would divide by a third coordinate below 1e-14.
class PointAtInfinityError : public Error {
 public:
  using Error::Error;
};

/// A design matrix has nullity > 1, so the minimiser direction is not
/// unique.
class RankDeficientError : public Error {
 public:
  using Error::Error;
};

/// Unrecoverable breakdown while solving the normal equations.
class LinAlgError : public Error {
 public:
  using Error::Error;
};

/// The constrained solver failed to reduce the maximum constraint
/// violation over several consecutive outer rounds.
class ConstraintStallError : public Error {
 public:
  using Error::Error;
};

/// Malformed argument or input data.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace homoset
