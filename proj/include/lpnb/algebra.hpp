// General-n reduced Poisson structure, assembled from first principles:
// compose basis forms pairwise with the twisted commutator and expand the
// results back in the invariant basis.  The expansion coefficients are the
// structure constants; contracting them with Y gives B(Y).
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "lpnb/errors.hpp"
#include "lpnb/mass_system.hpp"
#include "lpnb/quadratic_form.hpp"
#include "lpnb/reduced_state.hpp"

namespace lpnb {

/// Ordered basis of invariant quadratic forms for one system: rho pairs,
/// nu pairs, sigma pairs, delta quadruples; the packed-Y coordinate order.
inline std::vector<QuadraticForm> invariant_basis(int n) {
  std::vector<QuadraticForm> basis;
  basis.reserve(reduced_dim(n));
  for (int p = 0; p < pair_count(n); ++p) {
    auto [i, j] = pair_from_index(n, p);
    basis.push_back(QuadraticForm::rho_form(n, i, j));
  }
  for (int p = 0; p < pair_count(n); ++p) {
    auto [i, j] = pair_from_index(n, p);
    basis.push_back(QuadraticForm::nu_form(n, i, j));
  }
  for (int p = 0; p < pair_count(n); ++p) {
    auto [i, j] = pair_from_index(n, p);
    basis.push_back(QuadraticForm::sigma_form(n, i, j));
  }
  for (const DeltaPair& c : delta_basis(n))
    basis.push_back(QuadraticForm::delta_form(n, c));
  return basis;
}

/// Immutable after construction; safe to share across threads.
class LiePoissonAlgebra {
public:
  explicit LiePoissonAlgebra(const MassSystem& sys)
      : n_(sys.n()), dim_(reduced_dim(sys.n())), basis_(invariant_basis(sys.n())) {
    const int n = n_;
    Eigen::MatrixXd cols(4 * n * n, dim_);
    for (int a = 0; a < dim_; ++a) cols.col(a) = vectorize(basis_[a]);
    qr_.compute(cols);
    if (qr_.rank() != dim_)
      throw ExpansionError("LiePoissonAlgebra: invariant basis is not independent");
    basis_mat_ = cols;

    coeffs_.assign(dim_ * dim_, Eigen::VectorXd());
    for (int a = 0; a < dim_; ++a)
      for (int b = a + 1; b < dim_; ++b) {
        const Eigen::VectorXd c = expand(compose(basis_[a], basis_[b], sys));
        coeffs_[a * dim_ + b] = c;
        coeffs_[b * dim_ + a] = -c;
      }
  }

  int n() const { return n_; }
  int dim() const { return dim_; }
  const std::vector<QuadraticForm>& basis() const { return basis_; }

  /// Coefficients of the composed form in the invariant basis; throws
  /// ExpansionError when the residual exceeds tolerance.
  Eigen::VectorXd expand(const QuadraticForm& f, double tol = 1e-10) const {
    const Eigen::VectorXd t = vectorize(f);
    const Eigen::VectorXd c = qr_.solve(t);
    const double resid = (basis_mat_ * c - t).norm();
    if (resid > tol * std::max(1.0, t.norm()))
      throw ExpansionError("LiePoissonAlgebra: form does not lie in the basis span");
    return c;
  }

  /// Structure constants of the coordinate pair (a,b): {Y_a, Y_b} = c . Y.
  const Eigen::VectorXd& structure_coefficients(int a, int b) const {
    return coeffs_[a * dim_ + b];
  }

  Eigen::MatrixXd structure_matrix(const ReducedState& y) const {
    if (y.n != n_) throw DimensionError("structure_matrix: n mismatch");
    const Eigen::VectorXd yp = y.packed();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(dim_, dim_);
    for (int a = 0; a < dim_; ++a)
      for (int c = a + 1; c < dim_; ++c) {
        const double val = coeffs_[a * dim_ + c].dot(yp);
        b(a, c) = val;
        b(c, a) = -val;
      }
    return b;
  }

  /// Per-unit-coordinate block tables read off the structure constants.
  /// L_unit[m](p,q): coefficient of tau_m in the {rho_p, sigma_q} entry, and
  /// analogously for the other three block functions.
  Eigen::MatrixXd L_unit(int m) const {
    const int P = pair_count(n_);
    Eigen::MatrixXd l(P, P);
    for (int p = 0; p < P; ++p)
      for (int q = 0; q < P; ++q) l(p, q) = coeffs_at(p, 2 * P + q)[m];
    return l;
  }
  Eigen::MatrixXd Delta_unit(int m) const {
    const int P = pair_count(n_);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(P, P);
    for (int p = 0; p < P; ++p)
      for (int q = 0; q < P; ++q)
        if (p != q) d(p, q) = coeffs_at(2 * P + p, 2 * P + q)[3 * P + m];
    return d;
  }
  Eigen::MatrixXd v_unit(int m) const {
    const int P = pair_count(n_);
    const int D = delta_count(n_);
    Eigen::MatrixXd v(P, D);
    for (int p = 0; p < P; ++p)
      for (int c = 0; c < D; ++c) v(p, c) = coeffs_at(p, 3 * P + c)[m];
    return v;
  }
  Eigen::MatrixXd Sigma_unit(int m) const {
    const int P = pair_count(n_);
    const int D = delta_count(n_);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(D, D);
    for (int c = 0; c < D; ++c)
      for (int e = 0; e < D; ++e)
        if (c != e) s(c, e) = coeffs_at(3 * P + c, 3 * P + e)[3 * P + m];
    return s;
  }

private:
  const Eigen::VectorXd& coeffs_at(int a, int b) const { return coeffs_[a * dim_ + b]; }

  Eigen::VectorXd vectorize(const QuadraticForm& f) const {
    const int n2 = n_ * n_;
    Eigen::VectorXd v(4 * n2);
    v.segment(0, n2) = Eigen::Map<const Eigen::VectorXd>(f.R.data(), n2);
    v.segment(n2, n2) = Eigen::Map<const Eigen::VectorXd>(f.P.data(), n2);
    v.segment(2 * n2, n2) = Eigen::Map<const Eigen::VectorXd>(f.S.data(), n2);
    v.segment(3 * n2, n2) = Eigen::Map<const Eigen::VectorXd>(f.D.data(), n2);
    return v;
  }

  int n_;
  int dim_;
  std::vector<QuadraticForm> basis_;
  Eigen::MatrixXd basis_mat_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
  std::vector<Eigen::VectorXd> coeffs_;
};

/// Shared, lazily built algebra per mass vector.  The cache is internally
/// synchronized; the returned object is immutable.
inline std::shared_ptr<const LiePoissonAlgebra> algebra_for(const MassSystem& sys) {
  static std::mutex mtx;
  static std::map<std::vector<double>, std::shared_ptr<const LiePoissonAlgebra>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(sys.masses());
  if (it != cache.end()) return it->second;
  auto alg = std::make_shared<const LiePoissonAlgebra>(sys);
  cache.emplace(sys.masses(), alg);
  return alg;
}

/// Structure matrix assembled by the basis-expansion route (any n >= 2).
inline Eigen::MatrixXd structure_matrix_general(const MassSystem& sys,
                                                const ReducedState& y) {
  return algebra_for(sys)->structure_matrix(y);
}

} // namespace lpnb
