#ifndef CARTANORM_ERROR_HPP
#define CARTANORM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cartanorm {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together (ambient dimensions, matrix sizes).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on input violating its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A filtration leaves a nonzero ideal inside g^0.
class EffectivityError : public Error {
 public:
  using Error::Error;
};

}  // namespace cartanorm

#endif  // CARTANORM_ERROR_HPP
