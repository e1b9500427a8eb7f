// Seeded random states for cross-validation runs and tests.
#pragma once

#include <random>

#include <Eigen/Dense>

#include "lpnb/full_state.hpp"
#include "lpnb/reduced_state.hpp"

namespace lpnb {

using Rng = std::mt19937_64;

inline FullState random_full_state(Rng& rng, int n, int d, double pos_scale = 1.0,
                                   double vel_scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  FullState s(n, d);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) {
      s.q(i, k) = pos_scale * gauss(rng);
      s.v(i, k) = vel_scale * gauss(rng);
    }
  return s;
}

/// Random state with all mutual distances bounded away from collision.
inline FullState random_separated_state(Rng& rng, int n, int d, double min_dist = 0.3) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    FullState s = random_full_state(rng, n, d);
    double dmin = 1e300;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        dmin = std::min(dmin, s.qdiff(i, j).norm());
    if (dmin >= min_dist) return s;
  }
  throw std::runtime_error("random_separated_state: sampling failed");
}

/// Haar-ish random element of O(d); reflections included.
inline Eigen::MatrixXd random_orthogonal(Rng& rng, int d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::VectorXd rd = qr.matrixQR().diagonal();
  for (int i = 0; i < d; ++i)
    if (rd[i] < 0) q.col(i) = -q.col(i);
  if (std::uniform_int_distribution<int>(0, 1)(rng)) q.col(0) = -q.col(0);
  return q;
}

/// Generic reduced point: gaussian coordinates, not necessarily the
/// projection of any real configuration.
inline ReducedState random_reduced_state(Rng& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  ReducedState y(n);
  for (int p = 0; p < y.rho.size(); ++p) {
    y.rho[p] = gauss(rng);
    y.nu[p] = gauss(rng);
    y.sigma[p] = gauss(rng);
  }
  for (int m = 0; m < y.delta.size(); ++m) y.delta[m] = gauss(rng);
  return y;
}

/// Reduced point with rho safely positive, suitable for potential flows.
inline ReducedState random_flow_state(Rng& rng, int n) {
  std::uniform_real_distribution<double> upos(0.5, 2.5);
  std::normal_distribution<double> gauss(0.0, 0.5);
  ReducedState y(n);
  for (int p = 0; p < y.rho.size(); ++p) {
    y.rho[p] = upos(rng);
    y.nu[p] = upos(rng);
    y.sigma[p] = gauss(rng);
  }
  for (int m = 0; m < y.delta.size(); ++m) y.delta[m] = gauss(rng);
  return y;
}

} // namespace lpnb
