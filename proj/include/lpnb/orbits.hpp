// Symmetric periodic orbits of the Strang map for the equal-mass three-body
// problem: the collinear-isosceles seed family, half-period shooting,
// monodromy, and the discrete symmetry action on reduced coordinates.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "lpnb/errors.hpp"
#include "lpnb/flows.hpp"
#include "lpnb/full_state.hpp"
#include "lpnb/invariants.hpp"
#include "lpnb/mass_system.hpp"
#include "lpnb/quadratic_form.hpp"
#include "lpnb/reduced_state.hpp"

namespace lpnb {

/// Three free parameters of the collinear symmetric initial condition
/// (equal masses, n = 3): body 3 at the midpoint of 1 and 2.
struct SymmetricSeed {
  double rho13 = 0.0;
  double nu13 = 0.0;
  double sigma13 = 0.0;
};

/// Reference orbit coordinates for the 18-step figure-eight (h = 1/3) and
/// its continuum limit at reduced period 6.
inline SymmetricSeed figure8_seed_guess() { return {2.33107, 2.35105, 1.28227}; }
inline SymmetricSeed figure8_continuum_point() { return {2.34791, 2.3746, 1.28904}; }

/// Expand the three parameters to the full reduced state:
/// rho = (4r, r, r), nu = (0, w, w), sigma = (0, s, -s), delta = 2s
/// in lexicographic pair order (12, 13, 23).  The expansion lies on the
/// det G = |L_c|^2 = 0 leaf.
inline ReducedState seed_to_state(const SymmetricSeed& seed) {
  ReducedState y(3);
  y.rho << 4.0 * seed.rho13, seed.rho13, seed.rho13;
  y.nu << 0.0, seed.nu13, seed.nu13;
  y.sigma << 0.0, seed.sigma13, -seed.sigma13;
  y.delta << 2.0 * seed.sigma13;
  return y;
}

/// Planar equal-mass configuration realising the seed: bodies 1,2 at
/// (-r, 0), (r, 0); body 3 at the origin with v_3 = -2 v_1, v_2 = v_1.
/// Requires rho13 nu13 >= sigma13^2 (Cauchy-Schwarz on the cone).
inline FullState seed_full_configuration(const SymmetricSeed& seed) {
  const double r = std::sqrt(seed.rho13);
  const double vx = -seed.sigma13 / (3.0 * r);
  const double vy2 = seed.nu13 / 9.0 - vx * vx;
  if (vy2 < 0)
    throw std::invalid_argument("seed_full_configuration: seed violates the cone");
  const double vy = std::sqrt(vy2);
  FullState s(3, 2);
  s.q << -r, 0.0, r, 0.0, 0.0, 0.0;
  s.v << vx, vy, vx, vy, -2.0 * vx, -2.0 * vy;
  return s;
}

/// Body relabeling on reduced coordinates: state of q'_a = q_{perm[a]}.
/// The delta coordinates transform by conjugating their antisymmetric
/// Laplacians and re-expanding in the delta basis.
inline ReducedState permute_bodies(const ReducedState& y, const std::vector<int>& perm) {
  const int n = y.n;
  if (static_cast<int>(perm.size()) != n)
    throw DimensionError("permute_bodies: bad permutation length");
  ReducedState out(n);
  for (int p = 0; p < pair_count(n); ++p) {
    auto [a, b] = pair_from_index(n, p);
    const int q = pair_index(n, perm[a], perm[b]);
    out.rho[p] = y.rho[q];
    out.nu[p] = y.nu[q];
    out.sigma[p] = y.sigma[q];
  }
  const int dn = delta_count(n);
  if (dn > 0) {
    Eigen::MatrixXd pm = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a) pm(a, perm[a]) = 1.0;
    const auto basis = delta_basis(n);
    Eigen::MatrixXd forms(n * n, dn);
    for (int m = 0; m < dn; ++m) {
      const Eigen::MatrixXd dm = delta_matrix(n, basis[m]);
      forms.col(m) = Eigen::Map<const Eigen::VectorXd>(dm.data(), n * n);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(forms);
    for (int m = 0; m < dn; ++m) {
      const Eigen::MatrixXd conj =
          pm.transpose() * delta_matrix(n, basis[m]) * pm;
      const Eigen::VectorXd t = Eigen::Map<const Eigen::VectorXd>(conj.data(), n * n);
      const Eigen::VectorXd c = qr.solve(t);
      if ((forms * c - t).norm() > 1e-10 * std::max(1.0, t.norm()))
        throw ExpansionError("permute_bodies: conjugated form outside delta span");
      out.delta[m] = c.dot(y.delta);
    }
  }
  return out;
}

/// Motion-reversal on reduced coordinates.
inline ReducedState time_reversal(const ReducedState& y) {
  ReducedState out = y;
  out.sigma = -y.sigma;
  out.delta = -y.delta;
  return out;
}

/// Reversor fixing the collinear seed: swap bodies 1,2 then reverse.
inline ReducedState reversor_collinear(const ReducedState& y) {
  return time_reversal(permute_bodies(y, {1, 0, 2}));
}

/// Reversor fixing the half-period isosceles target: swap bodies 2,3.
inline ReducedState reversor_isosceles(const ReducedState& y) {
  return time_reversal(permute_bodies(y, {0, 2, 1}));
}

struct ResidualInfo {
  Eigen::Vector3d residual;
  ReducedState endpoint;
  bool valid = true;
};

/// Shoot m Strang steps from the seed; residual of the isosceles target
/// (rho12 - rho13, nu12 - nu13, sigma12 + sigma13).  sigma23 = 0 then
/// follows from the conserved constraints and is reported via `endpoint`.
inline ResidualInfo symmetry_residual(const MassSystem& sys, const SymmetricSeed& seed,
                                      double h, int m) {
  if (sys.n() != 3) throw DimensionError("symmetry_residual: n = 3 only");
  ResidualInfo info{Eigen::Vector3d::Zero(), ReducedState(3), true};
  ReducedState y = seed_to_state(seed);
  try {
    for (int k = 0; k < m; ++k) y = strang_step(sys, y, h);
  } catch (const CollisionError&) {
    info.valid = false;
    return info;
  }
  info.endpoint = y;
  info.residual << y.rho[0] - y.rho[1], y.nu[0] - y.nu[1], y.sigma[0] + y.sigma[1];
  return info;
}

struct OrbitSearchOptions {
  double tol = 1e-12;
  int max_iterations = 50;
  double fd_step = 1e-7;
};

struct OrbitResult {
  SymmetricSeed seed;
  int iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
  ReducedState half_period_state;
};

/// Damped Newton iteration on the half-period residual.
inline OrbitResult find_orbit(const MassSystem& sys, const SymmetricSeed& guess,
                              double h, int m,
                              const OrbitSearchOptions& opts = {}) {
  auto eval = [&](const SymmetricSeed& s) { return symmetry_residual(sys, s, h, m); };
  SymmetricSeed cur = guess;
  ResidualInfo info = eval(cur);
  if (!info.valid)
    throw NoConvergenceError("find_orbit: collision at the initial guess");
  OrbitResult result;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const double fnorm = info.residual.norm();
    if (fnorm <= opts.tol) {
      result.seed = cur;
      result.iterations = it;
      result.residual_norm = fnorm;
      result.converged = true;
      result.half_period_state = info.endpoint;
      return result;
    }
    auto component = [](SymmetricSeed& s, int c) -> double& {
      return c == 0 ? s.rho13 : (c == 1 ? s.nu13 : s.sigma13);
    };
    Eigen::Matrix3d jac;
    for (int c = 0; c < 3; ++c) {
      const double eps = opts.fd_step * std::max(1.0, std::abs(component(cur, c)));
      SymmetricSeed plus = cur, minus = cur;
      component(plus, c) += eps;
      component(minus, c) -= eps;
      const ResidualInfo rp = eval(plus), rm = eval(minus);
      if (!rp.valid || !rm.valid)
        throw NoConvergenceError("find_orbit: collision while differencing");
      jac.col(c) = (rp.residual - rm.residual) / (2.0 * eps);
    }
    Eigen::FullPivLU<Eigen::Matrix3d> lu(jac);
    if (!lu.isInvertible())
      throw SingularJacobianError("find_orbit: singular shooting Jacobian");
    const Eigen::Vector3d step = lu.solve(-info.residual);
    double alpha = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving, alpha *= 0.5) {
      SymmetricSeed trial{cur.rho13 + alpha * step[0], cur.nu13 + alpha * step[1],
                          cur.sigma13 + alpha * step[2]};
      const ResidualInfo ti = eval(trial);
      if (!ti.valid) continue;
      if (ti.residual.norm() < fnorm * (1.0 - 1e-4 * alpha) || ti.residual.norm() <= opts.tol) {
        cur = trial;
        info = ti;
        improved = true;
        break;
      }
    }
    if (!improved)
      throw NoConvergenceError("find_orbit: line search stalled");
  }
  throw NoConvergenceError("find_orbit: no convergence within iteration budget");
}

/// Eigenvalues of the product of step Jacobians around a periodic orbit.
inline std::vector<std::complex<double>> monodromy_eigenvalues(
    const MassSystem& sys, const ReducedState& y0, double h, int period_steps) {
  const int N = reduced_dim(y0.n);
  Eigen::MatrixXd mono = Eigen::MatrixXd::Identity(N, N);
  ReducedState y = y0;
  for (int k = 0; k < period_steps; ++k) {
    mono = strang_step_jacobian(sys, y, h) * mono;
    y = strang_step(sys, y, h);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(mono);
  std::vector<std::complex<double>> eigs(N);
  for (int i = 0; i < N; ++i) eigs[i] = es.eigenvalues()[i];
  return eigs;
}

/// Greedy reciprocal pairing quality: max over pairs of |l_a * l_b - 1|.
inline double reciprocal_pairing_error(std::vector<std::complex<double>> eigs) {
  double worst = 0.0;
  while (eigs.size() >= 2) {
    const std::complex<double> l = eigs.back();
    eigs.pop_back();
    std::size_t best = 0;
    double bestErr = 1e300;
    for (std::size_t i = 0; i < eigs.size(); ++i) {
      const double err = std::abs(l * eigs[i] - 1.0);
      if (err < bestErr) {
        bestErr = err;
        best = i;
      }
    }
    worst = std::max(worst, bestErr);
    eigs.erase(eigs.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

/// All eigenvalue moduli within tol of one.
inline bool is_elliptic(const std::vector<std::complex<double>>& eigs,
                        double tol = 1e-6) {
  for (const auto& l : eigs)
    if (std::abs(std::abs(l) - 1.0) > tol) return false;
  return true;
}

/// Map the h = 1/m family member to the h = 1 family via the gravitational
/// scaling with lambda = m^(2/3).
inline SymmetricSeed scaling_family(const SymmetricSeed& seed, int m) {
  const double lambda = std::pow(static_cast<double>(m), 2.0 / 3.0);
  return {seed.rho13 * lambda * lambda, seed.nu13 / lambda,
          seed.sigma13 * std::sqrt(lambda)};
}

/// Generate the full period-6m orbit from the computed m-step arc using the
/// two reversors and the cyclic relabeling they compose to.
inline std::vector<ReducedState> symmetric_orbit_points(
    const std::vector<ReducedState>& arc) {
  const int m = static_cast<int>(arc.size()) - 1;
  if (m < 1) throw DimensionError("symmetric_orbit_points: need an arc");
  std::vector<ReducedState> pts(static_cast<std::size_t>(6 * m), ReducedState(3));
  for (int k = 0; k <= m; ++k) pts[static_cast<std::size_t>(k)] = arc[static_cast<std::size_t>(k)];
  // reflect through the isosceles point: Y_{2m-k} = R1(Y_k)
  for (int k = 0; k < m; ++k)
    pts[static_cast<std::size_t>(2 * m - k)] = reversor_isosceles(arc[static_cast<std::size_t>(k)]);
  // shift by 2m steps: Y_{k+2m} = (R1 o R0)(Y_k)
  for (int k = 0; k < 2 * m; ++k)
    pts[static_cast<std::size_t>(k + 2 * m)] =
        reversor_isosceles(reversor_collinear(pts[static_cast<std::size_t>(k)]));
  for (int k = 0; k < 2 * m; ++k)
    pts[static_cast<std::size_t>(k + 4 * m)] =
        reversor_isosceles(reversor_collinear(pts[static_cast<std::size_t>(k + 2 * m)]));
  return pts;
}

} // namespace lpnb
