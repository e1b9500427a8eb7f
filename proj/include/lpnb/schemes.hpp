// Splitting schemes built from the two exact flows, plus trajectory
// integration with invariant observers.
#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "lpnb/flows.hpp"
#include "lpnb/invariants.hpp"
#include "lpnb/mass_system.hpp"
#include "lpnb/reduced_state.hpp"

namespace lpnb {

struct SplitScheme {
  enum class Flow { Kinetic, Potential };
  struct Stage {
    Flow flow;
    double coeff;
  };

  std::string name;
  int order = 0;
  std::vector<Stage> stages;

  /// Consistency: the kinetic and potential coefficients each sum to one.
  bool is_consistent(double tol = 1e-14) const {
    double k = 0.0, v = 0.0;
    for (const Stage& s : stages)
      (s.flow == Flow::Kinetic ? k : v) += s.coeff;
    return std::abs(k - 1.0) <= tol && std::abs(v - 1.0) <= tol;
  }

  static SplitScheme kinetic_first() {
    return {"kv", 1, {{Flow::Kinetic, 1.0}, {Flow::Potential, 1.0}}};
  }
  static SplitScheme potential_first() {
    return {"vk", 1, {{Flow::Potential, 1.0}, {Flow::Kinetic, 1.0}}};
  }
  static SplitScheme strang() {
    return {"strang",
            2,
            {{Flow::Kinetic, 0.5}, {Flow::Potential, 1.0}, {Flow::Kinetic, 0.5}}};
  }

  /// Triple-jump composition of Strang with w1 = 1/(2 - 2^(1/3)),
  /// w0 = 1 - 2 w1; adjacent kinetic stages merged.
  static SplitScheme yoshida4() {
    const double w1 = 1.0 / (2.0 - std::cbrt(2.0));
    const double w0 = 1.0 - 2.0 * w1;
    return {"yoshida4",
            4,
            {{Flow::Kinetic, 0.5 * w1},
             {Flow::Potential, w1},
             {Flow::Kinetic, 0.5 * (w1 + w0)},
             {Flow::Potential, w0},
             {Flow::Kinetic, 0.5 * (w0 + w1)},
             {Flow::Potential, w1},
             {Flow::Kinetic, 0.5 * w1}}};
  }

  static SplitScheme by_name(const std::string& name) {
    if (name == "kv") return kinetic_first();
    if (name == "vk") return potential_first();
    if (name == "strang") return strang();
    if (name == "yoshida4") return yoshida4();
    throw std::invalid_argument("unknown scheme: " + name);
  }
};

/// One step of the composition scheme.
inline ReducedState scheme_step(const MassSystem& sys, const ReducedState& y,
                                double h, const SplitScheme& scheme) {
  ReducedState out = y;
  for (const auto& stage : scheme.stages)
    out = (stage.flow == SplitScheme::Flow::Kinetic)
              ? kinetic_flow(out, stage.coeff * h)
              : potential_flow(sys, out, stage.coeff * h);
  return out;
}

/// Jacobian of one scheme step (analytic per stage).
inline Eigen::MatrixXd scheme_step_jacobian(const MassSystem& sys,
                                            const ReducedState& y, double h,
                                            const SplitScheme& scheme) {
  const int N = reduced_dim(y.n);
  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(N, N);
  ReducedState cur = y;
  for (const auto& stage : scheme.stages) {
    if (stage.flow == SplitScheme::Flow::Kinetic) {
      j = kinetic_flow_jacobian(y.n, stage.coeff * h) * j;
      cur = kinetic_flow(cur, stage.coeff * h);
    } else {
      j = potential_flow_jacobian(sys, cur, stage.coeff * h) * j;
      cur = potential_flow(sys, cur, stage.coeff * h);
    }
  }
  return j;
}

struct TrajectorySample {
  int step;
  double t;
  ReducedState y;
  double hamiltonian;
  double gram_determinant;
  double angular_momentum; // squared; NaN when no closed form (n >= 4)
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  bool failed = false;
  int failed_step = -1;
  std::string failure;
};

/// Iterate the scheme for n_steps from y0, sampling every `stride` steps
/// (step 0 and the final step always included).  A CollisionError stops the
/// run and is recorded rather than rethrown.
inline Trajectory integrate(const MassSystem& sys, const ReducedState& y0, double h,
                            int n_steps, const SplitScheme& scheme, int stride = 1) {
  if (stride < 1) throw std::invalid_argument("integrate: stride must be >= 1");
  Trajectory traj;
  auto record = [&](int step, const ReducedState& y) {
    TrajectorySample s{step, step * h, y, 0.0, 0.0,
                       std::numeric_limits<double>::quiet_NaN()};
    s.hamiltonian = reduced_hamiltonian(sys, y);
    s.gram_determinant = gram_det(sys, y);
    if (y.n <= 3) s.angular_momentum = angular_momentum_sq(sys, y);
    traj.samples.push_back(std::move(s));
  };
  ReducedState y = y0;
  record(0, y);
  for (int k = 1; k <= n_steps; ++k) {
    try {
      y = scheme_step(sys, y, h, scheme);
    } catch (const CollisionError& e) {
      traj.failed = true;
      traj.failed_step = k;
      traj.failure = e.what();
      return traj;
    }
    if (k % stride == 0 || k == n_steps) record(k, y);
  }
  return traj;
}

} // namespace lpnb
