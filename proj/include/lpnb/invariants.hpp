// Projection to invariant coordinates and the scalar functionals on them:
// energies, moment of inertia, Gram matrix, squared angular momentum.
#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "lpnb/errors.hpp"
#include "lpnb/full_state.hpp"
#include "lpnb/mass_system.hpp"
#include "lpnb/quadratic_form.hpp"
#include "lpnb/reduced_state.hpp"

namespace lpnb {

/// Project a full-coordinate state onto the invariant chart.
inline ReducedState project(const MassSystem& sys, const FullState& s) {
  check_consistent(sys, s);
  const int n = sys.n();
  ReducedState y(n);
  for (int p = 0; p < pair_count(n); ++p) {
    auto [i, j] = pair_from_index(n, p);
    const Eigen::RowVectorXd dq = s.qdiff(i, j);
    const Eigen::RowVectorXd dv = s.vdiff(i, j);
    y.rho[p] = dq.squaredNorm();
    y.nu[p] = dv.squaredNorm();
    y.sigma[p] = dq.dot(dv);
  }
  const auto basis = delta_basis(n);
  for (std::size_t m = 0; m < basis.size(); ++m) {
    const auto& c = basis[m];
    y.delta[static_cast<int>(m)] =
        s.qdiff(c.i, c.j).dot(s.vdiff(c.k, c.l)) - s.vdiff(c.i, c.j).dot(s.qdiff(c.k, c.l));
  }
  return y;
}

/// Kinetic energy relative to the centre of mass: (1/2M) sum m_i m_j nu_ij.
inline double relative_kinetic_energy(const MassSystem& sys, const ReducedState& y) {
  if (y.n != sys.n()) throw DimensionError("relative_kinetic_energy: n mismatch");
  return sys.kinetic_gradient().dot(y.nu);
}

/// Vector of pair-potential derivatives dV_ij/drho_ij at the given rho.
/// Throws CollisionError when any rho_ij is at or below the collision floor.
inline Eigen::VectorXd potential_gradient(const MassSystem& sys,
                                          const Eigen::VectorXd& rho) {
  const int n = sys.n();
  Eigen::VectorXd g(pair_count(n));
  for (int p = 0; p < pair_count(n); ++p) {
    auto [i, j] = pair_from_index(n, p);
    if (rho[p] <= sys.collision_floor())
      throw CollisionError("potential_gradient: pair at collision floor", i, j);
    g[p] = sys.pair_potential_deriv(i, j, rho[p]);
  }
  return g;
}

inline double potential_energy(const MassSystem& sys, const ReducedState& y) {
  if (y.n != sys.n()) throw DimensionError("potential_energy: n mismatch");
  double v = 0.0;
  for (int p = 0; p < pair_count(y.n); ++p) {
    auto [i, j] = pair_from_index(y.n, p);
    if (y.rho[p] <= sys.collision_floor())
      throw CollisionError("potential_energy: pair at collision floor", i, j);
    v += sys.pair_potential(i, j, y.rho[p]);
  }
  return v;
}

/// Generator of the reduced dynamics: H_c = K_c + V.
inline double reduced_hamiltonian(const MassSystem& sys, const ReducedState& y) {
  return relative_kinetic_energy(sys, y) + potential_energy(sys, y);
}

/// Moment of inertia about the centre of mass: (1/M) sum m_i m_j rho_ij.
inline double moment_of_inertia(const MassSystem& sys, const ReducedState& y) {
  if (y.n != sys.n()) throw DimensionError("moment_of_inertia: n mismatch");
  return 2.0 * sys.kinetic_gradient().dot(y.rho);
}

/// Coefficients expressing the cross products C_{i(n-1), j(n-1)} needed by
/// the Gram matrix in the delta basis; row order: pairs i<j over 0..n-2.
inline Eigen::MatrixXd gram_delta_coefficients(int n) {
  const int dn = delta_count(n);
  const auto basis = delta_basis(n);
  Eigen::MatrixXd forms(n * n, dn);
  for (int m = 0; m < dn; ++m) {
    const Eigen::MatrixXd dm = delta_matrix(n, basis[m]);
    forms.col(m) = Eigen::Map<const Eigen::VectorXd>(dm.data(), n * n);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(forms);
  Eigen::MatrixXd coeffs(dn, dn);
  int row = 0;
  for (int i = 0; i < n - 1; ++i)
    for (int j = i + 1; j < n - 1; ++j) {
      const Eigen::MatrixXd target = delta_matrix(n, DeltaPair{i, n - 1, j, n - 1});
      const Eigen::VectorXd t = Eigen::Map<const Eigen::VectorXd>(target.data(), n * n);
      const Eigen::VectorXd c = qr.solve(t);
      if ((forms * c - t).norm() > 1e-10 * std::max(1.0, t.norm()))
        throw ExpansionError("gram_delta_coefficients: cross product outside delta span");
      coeffs.row(row++) = c.transpose();
    }
  return coeffs;
}

/// Gram matrix of the basis difference vectors (q_{i,n-1}, v_{i,n-1}),
/// i = 0..n-2, expressed in the invariants.  Size (2n-2) x (2n-2); positive
/// semidefinite on projected states; det is a Casimir.
inline Eigen::MatrixXd gram_matrix(const MassSystem& sys, const ReducedState& y) {
  if (y.n != sys.n()) throw DimensionError("gram_matrix: n mismatch");
  const int n = y.n;
  const int k = n - 1;
  const auto rho_p = [&](int i, int j) { return y.rho[pair_index(n, i, j)]; };
  const auto nu_p = [&](int i, int j) { return y.nu[pair_index(n, i, j)]; };
  const auto sig_p = [&](int i, int j) { return y.sigma[pair_index(n, i, j)]; };

  Eigen::VectorXd cross = Eigen::VectorXd::Zero(delta_count(n));
  if (delta_count(n) > 0) cross = gram_delta_coefficients(n) * y.delta;
  const auto cross_at = [&](int i, int j) {
    // value of C_{i(n-1), j(n-1)}, i<j
    int row = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b, ++row)
        if (a == i && b == j) return cross[row];
    throw DimensionError("gram_matrix: bad cross index");
  };

  Eigen::MatrixXd g(2 * k, 2 * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const double qq = (i == j) ? rho_p(i, n - 1)
                                 : 0.5 * (rho_p(i, n - 1) + rho_p(j, n - 1) - rho_p(i, j));
      const double vv = (i == j) ? nu_p(i, n - 1)
                                 : 0.5 * (nu_p(i, n - 1) + nu_p(j, n - 1) - nu_p(i, j));
      double qv;
      if (i == j) {
        qv = sig_p(i, n - 1);
      } else {
        const double sym = sig_p(i, n - 1) + sig_p(j, n - 1) - sig_p(i, j);
        const double anti = (i < j) ? cross_at(i, j) : -cross_at(j, i);
        qv = 0.5 * (sym + anti);
      }
      g(i, j) = qq;
      g(k + i, k + j) = vv;
      g(i, k + j) = qv;
      g(k + j, i) = qv;
    }
  return g;
}

inline double gram_det(const MassSystem& sys, const ReducedState& y) {
  return gram_matrix(sys, y).determinant();
}

/// Squared angular momentum about the centre of mass; closed forms for
/// n = 2 and n = 3.
inline double angular_momentum_sq(const MassSystem& sys, const ReducedState& y) {
  if (y.n != sys.n()) throw DimensionError("angular_momentum_sq: n mismatch");
  const int n = y.n;
  if (n == 2) {
    const double mu = sys.mu(0, 1);
    return mu * mu * (y.rho[0] * y.nu[0] - y.sigma[0] * y.sigma[0]);
  }
  if (n == 3) {
    const double M = sys.total_mass();
    double term1 = 0.0;
    for (int p = 0; p < 3; ++p) {
      auto [i, j] = pair_from_index(3, p);
      const double mm = sys.mass(i) * sys.mass(j);
      term1 += mm * mm / (M * M) * (y.rho[p] * y.nu[p] - y.sigma[p] * y.sigma[p]);
    }
    const double rs = y.rho.sum(), ns = y.nu.sum(), ss = y.sigma.sum();
    double inner = 0.0;
    for (int p = 0; p < 3; ++p) {
      auto [i, j] = pair_from_index(3, p);
      const int kk = 3 - i - j; // the body not in the pair
      inner += sys.mass(kk) / M *
               ((rs - 2.0 * y.rho[p]) * (ns - 2.0 * y.nu[p]) -
                (ss - 2.0 * y.sigma[p]) * (ss - 2.0 * y.sigma[p]));
    }
    const double d = y.delta[0];
    return term1 +
           sys.mass(0) * sys.mass(1) * sys.mass(2) / (2.0 * M) * (d * d + inner);
  }
  throw DimensionError("angular_momentum_sq: closed form only for n = 2, 3");
}

} // namespace lpnb
