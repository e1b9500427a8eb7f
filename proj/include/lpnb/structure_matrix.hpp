// Closed-form building blocks L, Delta, v, Sigma of the reduced Poisson
// structure matrix, the assembled B(Y) for n = 2, 3, 4, the bracket
// contraction, and the numerical Casimir kernel.
//
// Conventions (validated entry-by-entry against canonical full-coordinate
// brackets; see docs/SIGNS.md): coordinates packed as (rho, nu, sigma,
// delta) in lexicographic pair order, and
//
//         ( 0     2(L(s)-Dl)   L(r)    v(r) )
//     B = ( .        0        -L(n)    v(n) )
//         ( .        .         Dl      v(s) )
//         ( .        .         .       Sg   )
//
// with Dl = Delta(delta), Sg = Sigma(delta), lower triangle by antisymmetry.
#pragma once

#include <Eigen/Dense>

#include "lpnb/algebra.hpp"
#include "lpnb/errors.hpp"
#include "lpnb/mass_system.hpp"
#include "lpnb/reduced_state.hpp"

namespace lpnb {

/// L(tau), any n: diagonal 2 tau_ij / mu_ij; zero for disjoint pairs;
/// (tau_ij + tau_jl - tau_il)/m_j when the pairs share exactly index j.
inline Eigen::MatrixXd L_block(const MassSystem& sys, const Eigen::VectorXd& tau) {
  const int n = sys.n();
  const int P = pair_count(n);
  if (tau.size() != P) throw DimensionError("L_block: bad tau length");
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(P, P);
  for (int p = 0; p < P; ++p) {
    auto [i, j] = pair_from_index(n, p);
    l(p, p) = 2.0 * tau[p] / sys.mu(i, j);
    for (int q = p + 1; q < P; ++q) {
      auto [k, m] = pair_from_index(n, q);
      int shared = -1, u = -1, w = -1;
      if (i == k) { shared = i; u = j; w = m; }
      else if (i == m) { shared = i; u = j; w = k; }
      else if (j == k) { shared = j; u = i; w = m; }
      else if (j == m) { shared = j; u = i; w = k; }
      if (shared < 0) continue;
      const double val =
          (tau[p] + tau[q] - tau[pair_index(n, u, w)]) / sys.mass(shared);
      l(p, q) = val;
      l(q, p) = val;
    }
  }
  return l;
}

namespace detail {

inline Eigen::MatrixXd delta_block_closed(const MassSystem& sys,
                                          const Eigen::VectorXd& d) {
  const int n = sys.n();
  const auto m = [&](int i) { return sys.mass(i - 1); }; // 1-based masses
  if (n == 2) return Eigen::MatrixXd::Zero(1, 1);
  if (n == 3) {
    Eigen::MatrixXd dl = Eigen::MatrixXd::Zero(3, 3);
    const double del = d[0];
    dl(0, 1) = -del / m(1); // (12,13)
    dl(0, 2) = del / m(2);  // (12,23)
    dl(1, 2) = -del / m(3); // (13,23)
    return dl - dl.transpose().eval();
  }
  if (n == 4) {
    Eigen::MatrixXd dl = Eigen::MatrixXd::Zero(6, 6);
    const double d1 = d[0], d2 = d[1], d3 = d[2];
    const double sppp = d1 + d2 + d3;  // d1+d2+d3
    const double smpp = -d1 + d2 + d3; // -d1+d2+d3
    const double sppm = d1 + d2 - d3;  // d1+d2-d3
    const double spmp = d1 - d2 + d3;  // d1-d2+d3
    dl(0, 1) = -sppp / (2 * m(1));
    dl(0, 2) = -smpp / (2 * m(1));
    dl(0, 3) = sppp / (2 * m(2));
    dl(0, 4) = smpp / (2 * m(2));
    dl(1, 2) = sppm / (2 * m(1));
    dl(1, 3) = -sppp / (2 * m(3));
    dl(1, 5) = -sppm / (2 * m(3));
    dl(2, 4) = -smpp / (2 * m(4));
    dl(2, 5) = sppm / (2 * m(4));
    dl(3, 4) = -spmp / (2 * m(2));
    dl(3, 5) = spmp / (2 * m(3));
    dl(4, 5) = -spmp / (2 * m(4));
    return dl - dl.transpose().eval();
  }
  throw DimensionError("delta_block_closed: only n <= 4");
}

inline Eigen::MatrixXd v_block_closed(const MassSystem& sys,
                                      const Eigen::VectorXd& tau) {
  const int n = sys.n();
  const auto m = [&](int i) { return sys.mass(i - 1); };
  if (n == 2) return Eigen::MatrixXd::Zero(1, 0);
  if (n == 3) {
    const double t12 = tau[0], t13 = tau[1], t23 = tau[2];
    Eigen::MatrixXd v(3, 1);
    v(0, 0) = (t23 - t13 + t12) / m(1) - (-t23 + t13 + t12) / m(2);
    v(1, 0) = (-t23 + t13 + t12) / m(3) - (t23 + t13 - t12) / m(1);
    v(2, 0) = (t23 + t13 - t12) / m(2) - (t23 - t13 + t12) / m(3);
    return v;
  }
  if (n == 4) {
    const double t12 = tau[0], t13 = tau[1], t14 = tau[2];
    const double t23 = tau[3], t24 = tau[4], t34 = tau[5];
    const auto mu = [&](int i, int j) { return sys.mu(i - 1, j - 1); };
    Eigen::MatrixXd v(6, 3);
    v(0, 0) = -(t13 - t14 - t23 + t24) / mu(1, 2);
    v(0, 1) = (t12 - t13 + t23) / m(1) + (-t12 - t14 + t24) / m(2);
    v(0, 2) = (-t12 - t13 + t23) / m(2) + (t12 - t14 + t24) / m(1);
    v(1, 0) = (t12 + t13 - t23) / m(3) + (-t13 + t14 - t34) / m(1);
    v(1, 1) = (t12 - t13 - t23) / m(1) + (t13 + t14 - t34) / m(3);
    v(1, 2) = (t12 - t14 - t23 + t34) / mu(1, 3);
    v(2, 0) = (-t12 - t14 + t24) / m(4) + (-t13 + t14 + t34) / m(1);
    v(2, 1) = (t12 - t13 - t24 + t34) / mu(1, 4);
    v(2, 2) = (t12 - t14 - t24) / m(1) + (t13 + t14 - t34) / m(4);
    v(3, 0) = (-t12 + t13 - t23) / m(3) + (t23 - t24 + t34) / m(2);
    v(3, 1) = -(t12 - t13 - t24 + t34) / mu(2, 3);
    v(3, 2) = (-t12 + t13 + t23) / m(2) + (-t23 - t24 + t34) / m(3);
    v(4, 0) = (t12 - t14 + t24) / m(4) + (t23 - t24 - t34) / m(2);
    v(4, 1) = (-t12 + t14 + t24) / m(2) + (-t23 - t24 + t34) / m(4);
    v(4, 2) = -(t12 - t14 - t23 + t34) / mu(2, 4);
    v(5, 0) = (t13 - t14 - t23 + t24) / mu(3, 4);
    v(5, 1) = (t13 - t14 - t34) / m(3) + (t23 - t24 + t34) / m(4);
    v(5, 2) = (-t13 + t14 - t34) / m(4) + (-t23 + t24 + t34) / m(3);
    return v;
  }
  throw DimensionError("v_block_closed: only n <= 4");
}

inline Eigen::MatrixXd sigma_block_closed(const MassSystem& sys,
                                          const Eigen::VectorXd& d) {
  const int n = sys.n();
  const auto m = [&](int i) { return sys.mass(i - 1); };
  if (n == 2) return Eigen::MatrixXd::Zero(0, 0);
  if (n == 3) return Eigen::MatrixXd::Zero(1, 1);
  if (n == 4) {
    const double d1 = d[0], d2 = d[1], d3 = d[2];
    const double a = (d1 - d2 + d3) / (2 * m(1));
    const double b = (d1 + d2 - d3) / (2 * m(2));
    const double c = (-d1 + d2 + d3) / (2 * m(3));
    const double e = (d1 + d2 + d3) / (2 * m(4));
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(3, 3);
    s(0, 1) = a - b + c + e;
    s(0, 2) = a - b - c - e;
    s(1, 2) = a + b - c + e;
    return s - s.transpose().eval();
  }
  throw DimensionError("sigma_block_closed: only n <= 4");
}

} // namespace detail

/// Delta(delta): the {sigma,sigma} block. Closed tables for n <= 4,
/// structure constants otherwise.
inline Eigen::MatrixXd delta_block(const MassSystem& sys, const Eigen::VectorXd& d) {
  const int n = sys.n();
  if (n <= 4) return detail::delta_block_closed(sys, d);
  const auto alg = algebra_for(sys);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(pair_count(n), pair_count(n));
  for (int m = 0; m < delta_count(n); ++m) out += d[m] * alg->Delta_unit(m);
  return out;
}

/// v(tau): the {pair-block, delta} column block.
inline Eigen::MatrixXd v_block(const MassSystem& sys, const Eigen::VectorXd& tau) {
  const int n = sys.n();
  if (n <= 4) return detail::v_block_closed(sys, tau);
  const auto alg = algebra_for(sys);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(pair_count(n), delta_count(n));
  for (int m = 0; m < pair_count(n); ++m) out += tau[m] * alg->v_unit(m);
  return out;
}

/// Sigma(delta): the {delta,delta} block.
inline Eigen::MatrixXd sigma_block(const MassSystem& sys, const Eigen::VectorXd& d) {
  const int n = sys.n();
  if (n <= 4) return detail::sigma_block_closed(sys, d);
  const auto alg = algebra_for(sys);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(delta_count(n), delta_count(n));
  for (int m = 0; m < delta_count(n); ++m) out += d[m] * alg->Sigma_unit(m);
  return out;
}

/// Closed-form structure matrix for n = 2, 3, 4.
inline Eigen::MatrixXd structure_matrix_closed(const MassSystem& sys,
                                               const ReducedState& y) {
  const int n = sys.n();
  if (n > 4) throw DimensionError("structure_matrix_closed: only n <= 4");
  if (y.n != n) throw DimensionError("structure_matrix_closed: n mismatch");
  const int P = pair_count(n);
  const int D = delta_count(n);
  const int N = reduced_dim(n);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(N, N);
  const Eigen::MatrixXd dl = detail::delta_block_closed(sys, y.delta);
  b.block(0, P, P, P) = 2.0 * (L_block(sys, y.sigma) - dl);
  b.block(0, 2 * P, P, P) = L_block(sys, y.rho);
  b.block(P, 2 * P, P, P) = -L_block(sys, y.nu);
  b.block(2 * P, 2 * P, P, P) = dl;
  if (D > 0) {
    b.block(0, 3 * P, P, D) = detail::v_block_closed(sys, y.rho);
    b.block(P, 3 * P, P, D) = detail::v_block_closed(sys, y.nu);
    b.block(2 * P, 3 * P, P, D) = detail::v_block_closed(sys, y.sigma);
    b.block(3 * P, 3 * P, D, D) = detail::sigma_block_closed(sys, y.delta);
  }
  // exact antisymmetry: lower triangle mirrors the upper
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < r; ++c) b(r, c) = -b(c, r);
  return b;
}

/// Best available structure matrix: closed for n <= 4, general otherwise.
inline Eigen::MatrixXd structure_matrix(const MassSystem& sys, const ReducedState& y) {
  return sys.n() <= 4 ? structure_matrix_closed(sys, y)
                      : structure_matrix_general(sys, y);
}

/// {f,g}(Y) = grad_f^t B(Y) grad_g for gradients in packed coordinates.
inline double poisson_bracket(const MassSystem& sys, const ReducedState& y,
                              const Eigen::VectorXd& f_grad,
                              const Eigen::VectorXd& g_grad) {
  if (f_grad.size() != y.dim() || g_grad.size() != y.dim())
    throw DimensionError("poisson_bracket: gradient length mismatch");
  return f_grad.dot(structure_matrix(sys, y) * g_grad);
}

inline int expected_casimir_count(int n) { return n - 1; }

/// Orthonormal basis of the numerical kernel of B(Y) (singular vectors with
/// singular value below tol * s_max).  When `expected` is nonnegative a
/// mismatch throws RankError.
inline Eigen::MatrixXd casimir_kernel(const MassSystem& sys, const ReducedState& y,
                                      int expected = -1, double tol = 1e-10) {
  const Eigen::MatrixXd b = structure_matrix(sys, y);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double smax = sv.size() ? sv[0] : 0.0;
  int k = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] <= tol * std::max(smax, 1e-300)) ++k;
  if (expected >= 0 && k != expected)
    throw RankError("casimir_kernel: kernel dimension " + std::to_string(k) +
                    ", expected " + std::to_string(expected));
  return svd.matrixV().rightCols(k);
}

} // namespace lpnb
