// Galilean-invariant quadratic forms as 2x2 block-Laplacian matrices.
//
// A shift-invariant quadratic observable f(q,v) corresponds to the Hessian
//
//     A = [ R  S+D ]      f = 1/2 sum_ab R_ab q_a.q_b + 1/2 sum_ab P_ab v_a.v_b
//         [ S-D  P ]          + sum_ab (S+D)_ab q_a.v_b
//
// with R, P, S symmetric Laplacian and D antisymmetric Laplacian n x n
// blocks (every block annihilates the all-ones vector).  The canonical
// bracket of two such observables induces the twisted commutator
// A*B = A J B - B J A with J = [[0, M],[-M, 0]], M = diag(1/m_i).
#pragma once

#include <Eigen/Dense>

#include "lpnb/full_state.hpp"
#include "lpnb/mass_system.hpp"
#include "lpnb/pair_index.hpp"

namespace lpnb {

/// Symmetric Laplacian unit E_ij: +1 at (i,i),(j,j), -1 at (i,j),(j,i).
inline Eigen::MatrixXd laplacian_unit(int n, int i, int j) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
  e(i, i) = 1.0;
  e(j, j) = 1.0;
  e(i, j) = -1.0;
  e(j, i) = -1.0;
  return e;
}

/// Antisymmetric Laplacian of C_{ij,kl} = q_ij.v_kl - v_ij.q_kl.
inline Eigen::MatrixXd delta_matrix(int n, const DeltaPair& c) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  w(c.i, c.k) += 1.0;
  w(c.j, c.l) += 1.0;
  w(c.i, c.l) -= 1.0;
  w(c.j, c.k) -= 1.0;
  return w - w.transpose();
}

struct QuadraticForm {
  int n = 0;
  Eigen::MatrixXd R, P, S, D;

  QuadraticForm() = default;
  explicit QuadraticForm(int n_)
      : n(n_), R(Eigen::MatrixXd::Zero(n_, n_)), P(Eigen::MatrixXd::Zero(n_, n_)),
        S(Eigen::MatrixXd::Zero(n_, n_)), D(Eigen::MatrixXd::Zero(n_, n_)) {}

  static QuadraticForm rho_form(int n, int i, int j) {
    QuadraticForm f(n);
    f.R = 2.0 * laplacian_unit(n, i, j);
    return f;
  }
  static QuadraticForm nu_form(int n, int i, int j) {
    QuadraticForm f(n);
    f.P = 2.0 * laplacian_unit(n, i, j);
    return f;
  }
  static QuadraticForm sigma_form(int n, int i, int j) {
    QuadraticForm f(n);
    f.S = laplacian_unit(n, i, j);
    return f;
  }
  static QuadraticForm delta_form(int n, const DeltaPair& c) {
    QuadraticForm f(n);
    f.D = delta_matrix(n, c);
    return f;
  }

  Eigen::MatrixXd full() const {
    Eigen::MatrixXd a(2 * n, 2 * n);
    a.topLeftCorner(n, n) = R;
    a.topRightCorner(n, n) = S + D;
    a.bottomLeftCorner(n, n) = S - D;
    a.bottomRightCorner(n, n) = P;
    return a;
  }

  static QuadraticForm from_full(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows()) / 2;
    QuadraticForm f(n);
    f.R = a.topLeftCorner(n, n);
    f.P = a.bottomRightCorner(n, n);
    const Eigen::MatrixXd w = a.topRightCorner(n, n);
    f.S = 0.5 * (w + w.transpose());
    f.D = 0.5 * (w - w.transpose());
    return f;
  }

  /// Value on a full state; the Kronecker lift over d is implicit in the
  /// body-wise scalar products.
  double eval(const FullState& s) const {
    const Eigen::MatrixXd qq = s.q * s.q.transpose();
    const Eigen::MatrixXd vv = s.v * s.v.transpose();
    const Eigen::MatrixXd qv = s.q * s.v.transpose();
    return 0.5 * (R.array() * qq.array()).sum() +
           0.5 * (P.array() * vv.array()).sum() +
           ((S + D).array() * qv.array()).sum();
  }

  /// Gradients with respect to positions and velocities (n x d each).
  Eigen::MatrixXd grad_q(const FullState& s) const {
    return R * s.q + (S + D) * s.v;
  }
  Eigen::MatrixXd grad_v(const FullState& s) const {
    return P * s.v + (S - D) * s.q; // (S+D)^t = S-D
  }

  double max_abs() const {
    return std::max(std::max(R.cwiseAbs().maxCoeff(), P.cwiseAbs().maxCoeff()),
                    std::max(S.cwiseAbs().maxCoeff(), D.cwiseAbs().maxCoeff()));
  }

  /// Block-Laplacian property: symmetry pattern plus zero row sums.
  bool is_block_laplacian(double tol = 1e-12) const {
    auto rowsum_ok = [tol](const Eigen::MatrixXd& m) {
      return m.rowwise().sum().cwiseAbs().maxCoeff() <= tol;
    };
    return (R - R.transpose()).cwiseAbs().maxCoeff() <= tol &&
           (P - P.transpose()).cwiseAbs().maxCoeff() <= tol &&
           (S - S.transpose()).cwiseAbs().maxCoeff() <= tol &&
           (D + D.transpose()).cwiseAbs().maxCoeff() <= tol && rowsum_ok(R) &&
           rowsum_ok(P) && rowsum_ok(S) && rowsum_ok(D);
  }
};

/// Twisted commutator A*B = A J B - B J A; closed on block-Laplacian forms.
inline QuadraticForm compose(const QuadraticForm& a, const QuadraticForm& b,
                             const MassSystem& sys) {
  if (a.n != b.n || a.n != sys.n())
    throw DimensionError("compose: mismatched sizes");
  const int n = a.n;
  Eigen::MatrixXd minv = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) minv(i, i) = 1.0 / sys.mass(i);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = minv;
  j.bottomLeftCorner(n, n) = -minv;
  const Eigen::MatrixXd fa = a.full(), fb = b.full();
  return QuadraticForm::from_full(fa * j * fb - fb * j * fa);
}

} // namespace lpnb
