#pragma once

#include <stdexcept>
#include <string>

namespace gpb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain an operation accepts.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Lengths of a state and a potential (or similar paired inputs) disagree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Asymptotic formulas were asked for outside the regime where they are
/// defined, e.g. log_p(g_rho) <= 1 or a realization without any lake
/// longer than the cutoff.
class OutOfRegime : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical procedure failed to bracket or converge.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace gpb
