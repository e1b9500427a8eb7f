// Mass system: body masses, pair potential, and derived constants.
#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lpnb/errors.hpp"
#include "lpnb/pair_index.hpp"

namespace lpnb {

/// Pairwise potential V_ij as a function of the squared distance rho_ij.
/// deriv is dV_ij/drho; deriv2 is optional and only needed for analytic
/// flow Jacobians (monodromy, Poisson-map checks).
struct PairPotential {
  std::string name;
  std::function<double(int i, int j, double rho)> value;
  std::function<double(int i, int j, double rho)> deriv;
  std::function<double(int i, int j, double rho)> deriv2; // may be empty
};

/// Immutable description of an n-body system.  All reduced-space operations
/// take it by const reference; no member mutates after construction.
class MassSystem {
public:
  static MassSystem gravitational(std::vector<double> masses, double G = 1.0,
                                  double collision_floor = 1e-14) {
    const std::vector<double> m = masses;
    PairPotential pot;
    pot.name = "gravitational";
    pot.value = [m, G](int i, int j, double rho) {
      return -G * m[i] * m[j] / std::sqrt(rho);
    };
    pot.deriv = [m, G](int i, int j, double rho) {
      return 0.5 * G * m[i] * m[j] * std::pow(rho, -1.5);
    };
    pot.deriv2 = [m, G](int i, int j, double rho) {
      return -0.75 * G * m[i] * m[j] * std::pow(rho, -2.5);
    };
    MassSystem sys(std::move(masses), G, collision_floor);
    sys.potential_ = std::move(pot);
    return sys;
  }

  static MassSystem custom(std::vector<double> masses, PairPotential potential,
                           double G = 1.0, double collision_floor = 1e-14) {
    MassSystem sys(std::move(masses), G, collision_floor);
    sys.potential_ = std::move(potential);
    return sys;
  }

  int n() const { return static_cast<int>(masses_.size()); }
  double mass(int i) const { return masses_[i]; }
  const std::vector<double>& masses() const { return masses_; }
  double total_mass() const { return total_mass_; }
  double G() const { return grav_const_; }
  double collision_floor() const { return collision_floor_; }
  const PairPotential& potential() const { return potential_; }

  /// Reduced mass of the pair: 1/mu_ij = 1/m_i + 1/m_j.
  double mu(int i, int j) const {
    return masses_[i] * masses_[j] / (masses_[i] + masses_[j]);
  }

  /// Gradient of the relative kinetic energy in the nu coordinates:
  /// component m_i m_j / (2M) at pair slot (i,j).  Constant per system.
  const Eigen::VectorXd& kinetic_gradient() const { return kc_grad_; }

  double pair_potential(int i, int j, double rho) const {
    return potential_.value(i, j, rho);
  }
  double pair_potential_deriv(int i, int j, double rho) const {
    return potential_.deriv(i, j, rho);
  }
  bool has_second_deriv() const { return static_cast<bool>(potential_.deriv2); }
  double pair_potential_deriv2(int i, int j, double rho) const {
    return potential_.deriv2(i, j, rho);
  }

private:
  MassSystem(std::vector<double> masses, double G, double floor)
      : masses_(std::move(masses)), grav_const_(G), collision_floor_(floor) {
    if (masses_.size() < 2) throw DimensionError("MassSystem: need n >= 2");
    total_mass_ = 0.0;
    for (double m : masses_) {
      if (!(m > 0.0)) throw std::invalid_argument("MassSystem: masses must be positive");
      total_mass_ += m;
    }
    if (!(grav_const_ > 0.0))
      throw std::invalid_argument("MassSystem: G must be positive");
    const int P = pair_count(n());
    kc_grad_.resize(P);
    for (int p = 0; p < P; ++p) {
      auto [i, j] = pair_from_index(n(), p);
      kc_grad_[p] = masses_[i] * masses_[j] / (2.0 * total_mass_);
    }
  }

  std::vector<double> masses_;
  double grav_const_;
  double collision_floor_;
  double total_mass_ = 0.0;
  Eigen::VectorXd kc_grad_;
  PairPotential potential_;
};

} // namespace lpnb
