// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace lpnb {

/// Raised when a squared mutual distance falls at or below the collision floor.
class CollisionError : public std::runtime_error {
public:
  CollisionError(std::string msg, int pair_i, int pair_j)
      : std::runtime_error(std::move(msg)), i(pair_i), j(pair_j) {}
  int i;
  int j;
};

/// A composed quadratic form failed to expand in the invariant basis.
class ExpansionError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The numerical kernel of the structure matrix has unexpected dimension.
class RankError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class NoConvergenceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class SingularJacobianError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive reference integrator could not keep the requested tolerance.
class StepSizeUnderflowError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

} // namespace lpnb
