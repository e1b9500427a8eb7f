// Config files, trajectory CSV, and JSON summaries.
//
// Config format: line-oriented "key = value", '#' comments.  Keys:
//   masses          list of positive reals (required)
//   G               gravitational constant (default 1)
//   potential       "gravitational" (default)
//   collision_floor squared-distance floor (default 1e-14)
// and exactly one initial-condition form:
//   seed            rho13 nu13 sigma13   (equal-mass n=3 symmetric family)
//   reduced         packed Y = (rho | nu | sigma | delta), length (2n-1)(n-1)
//   d + q + v       full coordinates, row-major n x d each
#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpnb/invariants.hpp"
#include "lpnb/mass_system.hpp"
#include "lpnb/orbits.hpp"
#include "lpnb/schemes.hpp"
#include "lpnb/structure_matrix.hpp"

namespace lpnb {

/// Fixed 17-significant-digit formatting used for every numeric output.
inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct ParsedConfig {
  std::vector<double> masses;
  double G = 1.0;
  std::string potential = "gravitational";
  double collision_floor = 1e-14;
  std::optional<SymmetricSeed> seed;
  std::optional<std::vector<double>> reduced;
  int d = 0;
  std::optional<std::vector<double>> q;
  std::optional<std::vector<double>> v;

  MassSystem make_system() const {
    if (masses.size() < 2) throw std::runtime_error("config: need at least two masses");
    if (potential != "gravitational")
      throw std::runtime_error("config: unknown potential '" + potential + "'");
    return MassSystem::gravitational(masses, G, collision_floor);
  }

  bool has_initial_state() const {
    return seed.has_value() || reduced.has_value() || (q.has_value() && v.has_value());
  }

  /// Normalise whichever initial-condition form was given to a ReducedState.
  ReducedState initial_state(const MassSystem& sys) const {
    const int n = sys.n();
    if (seed) {
      if (n != 3) throw std::runtime_error("config: seed form needs n = 3");
      return seed_to_state(*seed);
    }
    if (reduced) {
      if (static_cast<int>(reduced->size()) != reduced_dim(n))
        throw std::runtime_error("config: reduced vector has wrong length");
      return ReducedState::from_packed(
          n, Eigen::Map<const Eigen::VectorXd>(reduced->data(),
                                               static_cast<int>(reduced->size())));
    }
    if (q && v) {
      if (d < 1) throw std::runtime_error("config: full coordinates need d");
      if (static_cast<int>(q->size()) != n * d || static_cast<int>(v->size()) != n * d)
        throw std::runtime_error("config: q/v have wrong length");
      FullState s(n, d);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) {
          s.q(i, k) = (*q)[static_cast<std::size_t>(i * d + k)];
          s.v(i, k) = (*v)[static_cast<std::size_t>(i * d + k)];
        }
      return project(sys, s);
    }
    throw std::runtime_error("config: no initial condition given");
  }
};

inline ParsedConfig parse_config_text(std::istream& in) {
  ParsedConfig cfg;
  std::string line;
  int lineno = 0;
  auto parse_list = [&](const std::string& text, const std::string& key) {
    std::vector<double> vals;
    std::istringstream ls(text);
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": bad number '" + tok + "' for " + key);
      }
    }
    return vals;
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::istringstream check(line);
      std::string leftover;
      if (check >> leftover)
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": expected key = value");
      continue;
    }
    std::istringstream ks(line.substr(0, eq));
    std::string key;
    ks >> key;
    const std::string value = line.substr(eq + 1);
    if (key == "masses") cfg.masses = parse_list(value, key);
    else if (key == "G") cfg.G = parse_list(value, key).at(0);
    else if (key == "potential") { std::istringstream vs(value); vs >> cfg.potential; }
    else if (key == "collision_floor") cfg.collision_floor = parse_list(value, key).at(0);
    else if (key == "seed") {
      const auto vals = parse_list(value, key);
      if (vals.size() != 3)
        throw std::runtime_error("config: seed needs exactly 3 values");
      cfg.seed = SymmetricSeed{vals[0], vals[1], vals[2]};
    } else if (key == "reduced") cfg.reduced = parse_list(value, key);
    else if (key == "d") cfg.d = static_cast<int>(parse_list(value, key).at(0));
    else if (key == "q") cfg.q = parse_list(value, key);
    else if (key == "v") cfg.v = parse_list(value, key);
    else throw std::runtime_error("config line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
  }
  return cfg;
}

inline ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_config_text(in);
}

inline std::string trajectory_csv_header(int n) {
  std::ostringstream os;
  os << "step,t";
  const auto pair_cols = [&](const std::string& name) {
    for (int p = 0; p < pair_count(n); ++p) {
      auto [i, j] = pair_from_index(n, p);
      os << ',' << name << '_' << (i + 1) << (j + 1);
    }
  };
  pair_cols("rho");
  pair_cols("nu");
  pair_cols("sigma");
  for (int m = 0; m < delta_count(n); ++m) os << ",delta_" << (m + 1);
  os << ",H,detG,Lc2";
  return os.str();
}

/// CSV with one row per sample; a failed run ends with a comment marker row
/// "# failed step=<k>: <reason>".
inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj, int n) {
  os << trajectory_csv_header(n) << '\n';
  for (const auto& s : traj.samples) {
    os << s.step << ',' << format_g17(s.t);
    const Eigen::VectorXd y = s.y.packed();
    for (int i = 0; i < y.size(); ++i) os << ',' << format_g17(y[i]);
    os << ',' << format_g17(s.hamiltonian) << ',' << format_g17(s.gram_determinant)
       << ',' << format_g17(s.angular_momentum) << '\n';
  }
  if (traj.failed)
    os << "# failed step=" << traj.failed_step << ": " << traj.failure << '\n';
}

/// Least-squares slope of the series f(t) (per unit time).
inline double linear_fit_slope(const std::vector<double>& t, const std::vector<double>& f) {
  const std::size_t n = t.size();
  if (n < 2) return 0.0;
  double tm = 0, fm = 0;
  for (std::size_t i = 0; i < n; ++i) { tm += t[i]; fm += f[i]; }
  tm /= static_cast<double>(n);
  fm /= static_cast<double>(n);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (t[i] - tm) * (f[i] - fm);
    den += (t[i] - tm) * (t[i] - tm);
  }
  return den > 0 ? num / den : 0.0;
}

inline nlohmann::json trajectory_summary(const Trajectory& traj) {
  nlohmann::json j;
  j["samples"] = traj.samples.size();
  j["failed"] = traj.failed;
  if (traj.failed) {
    j["failed_step"] = traj.failed_step;
    j["failure"] = traj.failure;
  }
  if (traj.samples.empty()) return j;
  std::vector<double> t, h, dg, lc;
  for (const auto& s : traj.samples) {
    t.push_back(s.t);
    h.push_back(s.hamiltonian);
    dg.push_back(s.gram_determinant);
    lc.push_back(s.angular_momentum);
  }
  auto block = [&](const std::vector<double>& f) {
    nlohmann::json b;
    double lo = f[0], hi = f[0], dev = 0.0;
    for (double x : f) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      dev = std::max(dev, std::abs(x - f[0]));
    }
    b["first"] = f[0];
    b["last"] = f.back();
    b["min"] = lo;
    b["max"] = hi;
    b["max_abs_dev"] = dev;
    b["fluctuation"] = hi - lo;
    b["drift_slope"] = linear_fit_slope(t, f);
    return b;
  };
  j["H"] = block(h);
  j["detG"] = block(dg);
  if (!std::isnan(lc[0])) j["Lc2"] = block(lc);
  return j;
}

/// Structure matrix and its blocks at a state, for inspection.
inline nlohmann::json dump_structure_json(const MassSystem& sys, const ReducedState& y) {
  auto mat = [](const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      rows.push_back(row);
    }
    return rows;
  };
  nlohmann::json j;
  j["n"] = sys.n();
  const Eigen::VectorXd yp = y.packed();
  j["Y"] = std::vector<double>(yp.data(), yp.data() + yp.size());
  j["B"] = mat(structure_matrix(sys, y));
  j["L_rho"] = mat(L_block(sys, y.rho));
  j["L_nu"] = mat(L_block(sys, y.nu));
  j["L_sigma"] = mat(L_block(sys, y.sigma));
  j["Delta"] = mat(delta_block(sys, y.delta));
  if (delta_count(sys.n()) > 0) {
    j["v_rho"] = mat(v_block(sys, y.rho));
    j["v_nu"] = mat(v_block(sys, y.nu));
    j["v_sigma"] = mat(v_block(sys, y.sigma));
    j["Sigma"] = mat(sigma_block(sys, y.delta));
  }
  return j;
}

} // namespace lpnb
