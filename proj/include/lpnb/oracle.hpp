// Full-coordinate reference layer: direct equations of motion, a
// high-accuracy adaptive integrator, canonical brackets of invariant
// observables, and the drift/kick maps.  Everything here is the brute-force
// ground truth the reduced machinery is tested against.
#pragma once

#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "lpnb/errors.hpp"
#include "lpnb/full_state.hpp"
#include "lpnb/invariants.hpp"
#include "lpnb/mass_system.hpp"
#include "lpnb/quadratic_form.hpp"

namespace lpnb::oracle {

/// Pairwise forces: row i = force on body i (so that dv_i/dt = force_i/m_i).
inline Eigen::MatrixXd forces(const MassSystem& sys, const FullState& s) {
  check_consistent(sys, s);
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(s.n(), s.d);
  for (int i = 0; i < s.n(); ++i)
    for (int j = i + 1; j < s.n(); ++j) {
      const Eigen::RowVectorXd dq = s.qdiff(i, j);
      const double rho = dq.squaredNorm();
      if (rho <= sys.collision_floor())
        throw CollisionError("forces: bodies at collision floor", i, j);
      const Eigen::RowVectorXd fij = -2.0 * sys.pair_potential_deriv(i, j, rho) * dq;
      f.row(i) += fij;
      f.row(j) -= fij;
    }
  return f;
}

/// Time derivative of the full state: qdot = v, vdot_i = force_i / m_i.
inline FullState full_rhs(const MassSystem& sys, const FullState& s) {
  FullState out(s.n(), s.d);
  out.q = s.v;
  out.v = forces(sys, s);
  for (int i = 0; i < s.n(); ++i) out.v.row(i) /= sys.mass(i);
  return out;
}

inline double full_hamiltonian(const MassSystem& sys, const FullState& s) {
  double k = 0.0;
  for (int i = 0; i < s.n(); ++i) k += 0.5 * sys.mass(i) * s.v.row(i).squaredNorm();
  double v = 0.0;
  for (int i = 0; i < s.n(); ++i)
    for (int j = i + 1; j < s.n(); ++j)
      v += sys.pair_potential(i, j, s.qdiff(i, j).squaredNorm());
  return k + v;
}

/// Angular momentum about the centre of mass as the antisymmetric d x d
/// matrix sum m_i (q_i - C) wedge (v_i - P/M).
inline Eigen::MatrixXd angular_momentum_matrix(const MassSystem& sys, const FullState& s) {
  const Eigen::RowVectorXd c = centre_of_mass(sys, s);
  const Eigen::RowVectorXd vc = total_momentum(sys, s) / sys.total_mass();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(s.d, s.d);
  for (int i = 0; i < s.n(); ++i) {
    const Eigen::VectorXd dq = (s.q.row(i) - c).transpose();
    const Eigen::VectorXd dv = (s.v.row(i) - vc).transpose();
    l += sys.mass(i) * (dq * dv.transpose() - dv * dq.transpose());
  }
  return l;
}

/// |L_c|^2 with the scalar product tr(A B^t)/2 on antisymmetric matrices
/// (reduces to the usual vector norm for d = 3).
inline double angular_momentum_sq_full(const MassSystem& sys, const FullState& s) {
  const Eigen::MatrixXd l = angular_momentum_matrix(sys, s);
  return 0.5 * (l.array() * l.array()).sum();
}

/// Canonical bracket {f,g} = sum_i (df/dq_i . dg/dv_i - dg/dq_i . df/dv_i)/m_i
/// of two invariant quadratic observables, evaluated at a full state.
inline double canonical_bracket(const MassSystem& sys, const FullState& s,
                                const QuadraticForm& f, const QuadraticForm& g) {
  const Eigen::MatrixXd fq = f.grad_q(s), fv = f.grad_v(s);
  const Eigen::MatrixXd gq = g.grad_q(s), gv = g.grad_v(s);
  double out = 0.0;
  for (int i = 0; i < s.n(); ++i)
    out += (fq.row(i).dot(gv.row(i)) - gq.row(i).dot(fv.row(i))) / sys.mass(i);
  return out;
}

/// Exact flow of the kinetic part in full coordinates.
inline FullState drift(const FullState& s, double t) {
  FullState out = s;
  out.q += t * s.v;
  return out;
}

/// Exact flow of the potential part in full coordinates (positions frozen).
inline FullState kick(const MassSystem& sys, const FullState& s, double t) {
  FullState out = s;
  const Eigen::MatrixXd f = forces(sys, s);
  for (int i = 0; i < s.n(); ++i) out.v.row(i) += t / sys.mass(i) * f.row(i);
  return out;
}

namespace detail {
// Dormand-Prince 5(4) tableau.
struct Dopri5 {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};
} // namespace detail

/// High-accuracy adaptive reference integration of the full equations of
/// motion over time T.  `tol` is the target overall accuracy; the local
/// tolerance is driven two orders tighter.  Test support only.
inline FullState reference_integrate(const MassSystem& sys, const FullState& s0,
                                     double T, double tol) {
  using detail::Dopri5;
  check_consistent(sys, s0);
  const int n = s0.n(), d = s0.d;
  const int m = 2 * n * d;
  const double local_tol = std::max(1e-15, tol * 1e-2);

  auto pack = [&](const FullState& s) {
    Eigen::VectorXd z(m);
    z.head(n * d) = Eigen::Map<const Eigen::VectorXd>(s.q.data(), n * d);
    z.tail(n * d) = Eigen::Map<const Eigen::VectorXd>(s.v.data(), n * d);
    return z;
  };
  auto unpack = [&](const Eigen::VectorXd& z) {
    FullState s(n, d);
    s.q = Eigen::Map<const Eigen::MatrixXd>(z.data(), n, d);
    s.v = Eigen::Map<const Eigen::MatrixXd>(z.data() + n * d, n, d);
    return s;
  };
  auto rhs = [&](const Eigen::VectorXd& z) { return pack(full_rhs(sys, unpack(z))); };

  Eigen::VectorXd y = pack(s0);
  const double dir = (T >= 0) ? 1.0 : -1.0;
  double t = 0.0;
  double h = dir * std::min(1e-2, std::abs(T));
  if (T == 0.0) return s0;
  Eigen::VectorXd k1 = rhs(y);
  const double hmin = std::abs(T) * 1e-14;
  int guard = 0;
  while (dir * (T - t) > 0.0) {
    if (++guard > 50'000'000) throw StepSizeUnderflowError("reference_integrate: too many steps");
    if (dir * (t + h) > dir * T) h = T - t;
    const Eigen::VectorXd k2 = rhs(y + h * (Dopri5::a21 * k1));
    const Eigen::VectorXd k3 = rhs(y + h * (Dopri5::a31 * k1 + Dopri5::a32 * k2));
    const Eigen::VectorXd k4 =
        rhs(y + h * (Dopri5::a41 * k1 + Dopri5::a42 * k2 + Dopri5::a43 * k3));
    const Eigen::VectorXd k5 = rhs(y + h * (Dopri5::a51 * k1 + Dopri5::a52 * k2 +
                                            Dopri5::a53 * k3 + Dopri5::a54 * k4));
    const Eigen::VectorXd k6 =
        rhs(y + h * (Dopri5::a61 * k1 + Dopri5::a62 * k2 + Dopri5::a63 * k3 +
                     Dopri5::a64 * k4 + Dopri5::a65 * k5));
    const Eigen::VectorXd ynew =
        y + h * (Dopri5::b1 * k1 + Dopri5::b3 * k3 + Dopri5::b4 * k4 +
                 Dopri5::b5 * k5 + Dopri5::b6 * k6);
    const Eigen::VectorXd k7 = rhs(ynew);
    const Eigen::VectorXd errv =
        h * (Dopri5::e1 * k1 + Dopri5::e3 * k3 + Dopri5::e4 * k4 + Dopri5::e5 * k5 +
             Dopri5::e6 * k6 + Dopri5::e7 * k7);
    double err = 0.0;
    for (int i = 0; i < m; ++i) {
      const double sc = local_tol * (1.0 + std::max(std::abs(y[i]), std::abs(ynew[i])));
      err = std::max(err, std::abs(errv[i]) / sc);
    }
    if (err <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;
    }
    const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    h *= fac;
    if (std::abs(h) < hmin)
      throw StepSizeUnderflowError("reference_integrate: step size underflow");
  }
  return unpack(y);
}

} // namespace lpnb::oracle
