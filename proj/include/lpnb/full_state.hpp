// Full-coordinate phase point (positions and velocities in R^d).
//
// Only the projection and the reference (oracle) dynamics ever see d; all
// reduced-space code is dimension-free.
#pragma once

#include <Eigen/Dense>

#include "lpnb/errors.hpp"
#include "lpnb/mass_system.hpp"

namespace lpnb {

struct FullState {
  int d = 0;
  Eigen::MatrixXd q; // n x d, row i = position of body i
  Eigen::MatrixXd v; // n x d, row i = velocity of body i

  FullState() = default;
  FullState(int n, int d_)
      : d(d_), q(Eigen::MatrixXd::Zero(n, d_)), v(Eigen::MatrixXd::Zero(n, d_)) {
    if (n < 2 || d_ < 1) throw DimensionError("FullState: need n >= 2, d >= 1");
  }

  int n() const { return static_cast<int>(q.rows()); }

  Eigen::RowVectorXd qdiff(int i, int j) const { return q.row(i) - q.row(j); }
  Eigen::RowVectorXd vdiff(int i, int j) const { return v.row(i) - v.row(j); }
};

inline void check_consistent(const MassSystem& sys, const FullState& s) {
  if (s.n() != sys.n() || s.v.rows() != s.q.rows() || s.v.cols() != s.q.cols())
    throw DimensionError("FullState does not match MassSystem");
}

inline Eigen::RowVectorXd centre_of_mass(const MassSystem& sys, const FullState& s) {
  Eigen::RowVectorXd c = Eigen::RowVectorXd::Zero(s.d);
  for (int i = 0; i < s.n(); ++i) c += sys.mass(i) * s.q.row(i);
  return c / sys.total_mass();
}

inline Eigen::RowVectorXd total_momentum(const MassSystem& sys, const FullState& s) {
  Eigen::RowVectorXd p = Eigen::RowVectorXd::Zero(s.d);
  for (int i = 0; i < s.n(); ++i) p += sys.mass(i) * s.v.row(i);
  return p;
}

/// Galilean transform: q -> R q + q0 + t0 v0, v -> R v + v0 with R in O(d).
inline FullState galilean_transform(const FullState& s, const Eigen::MatrixXd& R,
                                    const Eigen::RowVectorXd& q0,
                                    const Eigen::RowVectorXd& v0, double t0 = 0.0) {
  FullState out(s.n(), s.d);
  for (int i = 0; i < s.n(); ++i) {
    out.q.row(i) = s.q.row(i) * R.transpose() + q0 + t0 * v0;
    out.v.row(i) = s.v.row(i) * R.transpose() + v0;
  }
  return out;
}

} // namespace lpnb
