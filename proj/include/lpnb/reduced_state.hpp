// Reduced phase point Y = (rho, nu, sigma, delta).
#pragma once

#include <Eigen/Dense>

#include "lpnb/errors.hpp"
#include "lpnb/pair_index.hpp"

namespace lpnb {

/// Invariant coordinates of an n-body configuration:
///   rho_ij   = |q_i - q_j|^2          (pair block, lexicographic order)
///   nu_ij    = |v_i - v_j|^2
///   sigma_ij = (q_i - q_j).(v_i - v_j)
///   delta    = coordinates in the C_{ij,kl} basis from delta_basis(n)
/// Total length (2n-1)(n-1).
struct ReducedState {
  int n = 0;
  Eigen::VectorXd rho, nu, sigma, delta;

  ReducedState() = default;
  explicit ReducedState(int n_)
      : n(n_), rho(Eigen::VectorXd::Zero(pair_count(n_))),
        nu(Eigen::VectorXd::Zero(pair_count(n_))),
        sigma(Eigen::VectorXd::Zero(pair_count(n_))),
        delta(Eigen::VectorXd::Zero(delta_count(n_))) {
    if (n_ < 2) throw DimensionError("ReducedState: need n >= 2");
  }

  int dim() const { return reduced_dim(n); }

  /// Flat layout (rho | nu | sigma | delta); the row/column order of the
  /// structure matrix.
  Eigen::VectorXd packed() const {
    const int P = pair_count(n);
    Eigen::VectorXd y(dim());
    y.segment(0, P) = rho;
    y.segment(P, P) = nu;
    y.segment(2 * P, P) = sigma;
    y.segment(3 * P, delta.size()) = delta;
    return y;
  }

  static ReducedState from_packed(int n, const Eigen::VectorXd& y) {
    if (y.size() != reduced_dim(n))
      throw DimensionError("ReducedState::from_packed: wrong length");
    ReducedState s(n);
    const int P = pair_count(n);
    s.rho = y.segment(0, P);
    s.nu = y.segment(P, P);
    s.sigma = y.segment(2 * P, P);
    s.delta = y.segment(3 * P, delta_count(n));
    return s;
  }

  /// True when the squared-norm blocks are componentwise nonnegative.
  /// States projected from real configurations always satisfy this; points
  /// produced by raw coordinate arithmetic need not.
  bool is_cone_point(double tol = 0.0) const {
    return (rho.array() >= -tol).all() && (nu.array() >= -tol).all();
  }
};

} // namespace lpnb
