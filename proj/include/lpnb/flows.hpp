// Exact flows of the kinetic and potential parts on the reduced space,
// their analytic Jacobians, and the gravitational scaling map.
//
// Kinetic:    (rho, nu, sigma, delta) -> (rho + 2t sigma + t^2 nu, nu,
//                                         sigma + t nu, delta)
// Potential:  rho fixed; with g = V'(rho), a = -L(rho) g, b = -v(rho)^t g:
//             sigma += t a, delta += t b,
//             nu -= (L(2t sigma + t^2 a) + Delta(2t delta + t^2 b)) g.
// Both are exact Poisson flows and hence preserve every Casimir.
#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "lpnb/errors.hpp"
#include "lpnb/invariants.hpp"
#include "lpnb/mass_system.hpp"
#include "lpnb/reduced_state.hpp"
#include "lpnb/structure_matrix.hpp"

namespace lpnb {

inline ReducedState kinetic_flow(const ReducedState& y, double t) {
  ReducedState out = y;
  out.rho = y.rho + 2.0 * t * y.sigma + t * t * y.nu;
  out.sigma = y.sigma + t * y.nu;
  return out;
}

inline ReducedState potential_flow(const MassSystem& sys, const ReducedState& y,
                                   double t) {
  if (y.n != sys.n()) throw DimensionError("potential_flow: n mismatch");
  const Eigen::VectorXd g = potential_gradient(sys, y.rho);
  const Eigen::VectorXd a = -(L_block(sys, y.rho) * g);
  ReducedState out = y;
  out.sigma = y.sigma + t * a;
  Eigen::VectorXd b;
  if (delta_count(y.n) > 0) {
    b = -(v_block(sys, y.rho).transpose() * g);
    out.delta = y.delta + t * b;
  }
  Eigen::VectorXd w = 2.0 * t * y.sigma + t * t * a;
  Eigen::VectorXd kickv = L_block(sys, w) * g;
  if (delta_count(y.n) > 0) {
    Eigen::VectorXd z = 2.0 * t * y.delta + t * t * b;
    kickv += delta_block(sys, z) * g;
  }
  out.nu = y.nu - kickv;
  return out;
}

/// Two-term variant of the nu update, kept as an algebraic cross-check of
/// potential_flow (identical by linearity of the blocks).
inline ReducedState potential_flow_direct(const MassSystem& sys,
                                          const ReducedState& y, double t) {
  const Eigen::VectorXd g = potential_gradient(sys, y.rho);
  const Eigen::VectorXd a = -(L_block(sys, y.rho) * g);
  ReducedState out = y;
  out.sigma = y.sigma + t * a;
  Eigen::VectorXd nu = y.nu - 2.0 * t * (L_block(sys, y.sigma) * g) -
                       t * t * (L_block(sys, a) * g);
  if (delta_count(y.n) > 0) {
    const Eigen::VectorXd b = -(v_block(sys, y.rho).transpose() * g);
    out.delta = y.delta + t * b;
    nu -= 2.0 * t * (delta_block(sys, y.delta) * g) +
          t * t * (delta_block(sys, b) * g);
  }
  out.nu = nu;
  return out;
}

inline ReducedState strang_step(const MassSystem& sys, const ReducedState& y,
                                double h) {
  return kinetic_flow(potential_flow(sys, kinetic_flow(y, 0.5 * h), h), 0.5 * h);
}

/// Jacobian of the kinetic flow; constant in Y.
inline Eigen::MatrixXd kinetic_flow_jacobian(int n, double t) {
  const int P = pair_count(n);
  const int N = reduced_dim(n);
  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(N, N);
  j.block(0, P, P, P) = t * t * Eigen::MatrixXd::Identity(P, P);
  j.block(0, 2 * P, P, P) = 2.0 * t * Eigen::MatrixXd::Identity(P, P);
  j.block(2 * P, P, P, P) = t * Eigen::MatrixXd::Identity(P, P);
  return j;
}

/// Second derivatives of the pair potentials; falls back to a central
/// difference of deriv when the potential carries no analytic deriv2.
inline Eigen::VectorXd potential_hessian_diag(const MassSystem& sys,
                                              const Eigen::VectorXd& rho) {
  const int n = sys.n();
  Eigen::VectorXd h(pair_count(n));
  for (int p = 0; p < pair_count(n); ++p) {
    auto [i, j] = pair_from_index(n, p);
    if (sys.has_second_deriv()) {
      h[p] = sys.pair_potential_deriv2(i, j, rho[p]);
    } else {
      const double eps = 1e-6 * std::max(1.0, std::abs(rho[p]));
      h[p] = (sys.pair_potential_deriv(i, j, rho[p] + eps) -
              sys.pair_potential_deriv(i, j, rho[p] - eps)) /
             (2.0 * eps);
    }
  }
  return h;
}

/// Analytic Jacobian of the potential flow.
inline Eigen::MatrixXd potential_flow_jacobian(const MassSystem& sys,
                                               const ReducedState& y, double t) {
  const int n = sys.n();
  const int P = pair_count(n);
  const int D = delta_count(n);
  const int N = reduced_dim(n);
  const Eigen::VectorXd g = potential_gradient(sys, y.rho);
  const Eigen::VectorXd gp = potential_hessian_diag(sys, y.rho);
  const Eigen::MatrixXd Lrho = L_block(sys, y.rho);
  const Eigen::VectorXd a = -(Lrho * g);

  // columns L(e_m) g and Delta(e_m) g
  Eigen::MatrixXd GL(P, P);
  for (int m = 0; m < P; ++m)
    GL.col(m) = L_block(sys, Eigen::VectorXd::Unit(P, m)) * g;
  Eigen::MatrixXd GD(P, std::max(D, 0));
  for (int m = 0; m < D; ++m)
    GD.col(m) = delta_block(sys, Eigen::VectorXd::Unit(D, m)) * g;

  // da/drho and db/drho
  const Eigen::MatrixXd Da = -GL - Lrho * gp.asDiagonal();
  Eigen::MatrixXd vrho_t(D, P), Db(D, P);
  if (D > 0) {
    vrho_t = v_block(sys, y.rho).transpose();
    Eigen::MatrixXd Gv(D, P);
    for (int m = 0; m < P; ++m)
      Gv.col(m) = v_block(sys, Eigen::VectorXd::Unit(P, m)).transpose() * g;
    Db = -Gv - vrho_t * gp.asDiagonal();
  }

  Eigen::VectorXd w = 2.0 * t * y.sigma + t * t * a;
  Eigen::MatrixXd LwDz = L_block(sys, w);
  if (D > 0) {
    const Eigen::VectorXd b = -(vrho_t * g);
    const Eigen::VectorXd z = 2.0 * t * y.delta + t * t * b;
    LwDz += delta_block(sys, z);
  }

  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(N, N);
  // nu rows
  j.block(P, 0, P, P) = -LwDz * gp.asDiagonal() - t * t * (GL * Da);
  j.block(P, 2 * P, P, P) = -2.0 * t * GL;
  // sigma rows
  j.block(2 * P, 0, P, P) = t * Da;
  if (D > 0) {
    j.block(P, 0, P, P) -= t * t * (GD * Db);
    j.block(P, 3 * P, P, D) = -2.0 * t * GD;
    j.block(3 * P, 0, D, P) = t * Db;
  }
  return j;
}

/// Jacobian of one Strang step, chained through the three exact flows.
inline Eigen::MatrixXd strang_step_jacobian(const MassSystem& sys,
                                            const ReducedState& y, double h) {
  const Eigen::MatrixXd jk = kinetic_flow_jacobian(sys.n(), 0.5 * h);
  const ReducedState y1 = kinetic_flow(y, 0.5 * h);
  const Eigen::MatrixXd jv = potential_flow_jacobian(sys, y1, h);
  return jk * jv * jk;
}

/// Gravitational scaling map S^lambda: (l^2 rho, nu / l, sqrt(l) sigma,
/// sqrt(l) delta); intertwines the flows as Phi^{t l^{3/2}} o S = S o Phi^t.
inline ReducedState scale_state(const ReducedState& y, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("scale_state: lambda must be > 0");
  ReducedState out = y;
  const double r = std::sqrt(lambda);
  out.rho = lambda * lambda * y.rho;
  out.nu = y.nu / lambda;
  out.sigma = r * y.sigma;
  out.delta = r * y.delta;
  return out;
}

} // namespace lpnb
