#pragma once

#include <catch2/catch_amalgamated.hpp>

#include "lpnb/lpnb.hpp"

namespace testutil {

using namespace lpnb;

inline MassSystem equal3() { return MassSystem::gravitational({1.0, 1.0, 1.0}); }
inline MassSystem mixed2() { return MassSystem::gravitational({1.0, 2.5}); }
inline MassSystem mixed3() { return MassSystem::gravitational({1.0, 2.0, 0.7}); }
inline MassSystem mixed4() {
  return MassSystem::gravitational({1.0, 2.0, 0.7, 1.3});
}

inline double max_rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale =
      std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), 1e-300});
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

inline double state_rel_diff(const ReducedState& a, const ReducedState& b) {
  const Eigen::VectorXd pa = a.packed(), pb = b.packed();
  const double scale = std::max({pa.cwiseAbs().maxCoeff(), pb.cwiseAbs().maxCoeff(), 1e-300});
  return (pa - pb).cwiseAbs().maxCoeff() / scale;
}

} // namespace testutil
