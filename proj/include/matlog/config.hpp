#pragma once

#include <string>
#include <utility>
#include <vector>

#include "matlog/errors.hpp"

namespace matlog {

// Every numeric judgment in the library compares against a named tolerance
// from this record. Reports embed the effective values; the CLI can override
// any of them by name.
struct Config {
  // linalg
  double schur_unitarity_tol = 1e-12;      // ||q q* - I||_F
  double schur_reconstruction_tol = 1e-11; // ||q t q* - a||_F / ||a||_F
  double inverse_cond_floor = 1e-13;       // sigma_min / ||a||_F below -> singular
  // matfun
  double exp_scaling_theta = 5.371920351148152;  // Pade-13 scaling threshold on ||a||_1
  double exp_norm_budget = 700.0;                // ||a||_F above -> overflow refusal
  double log_sqrt_target = 0.25;                 // sqrt until ||t - I||_1 below this
  double cut_tol = 1e-12;                        // spectrum distance to ]-inf,0]
  double low_confidence_cut = 1e-6;              // flag verdicts this close to the cut
  double phi_solve_min_eig = 0.1;                // min |eig| above -> phi via solve
  double cluster_radius = 1e-6;                  // eigenvalue clustering for Hermite nodes
  double interpolation_multiplicity_cap = 12;    // max confluent node multiplicity
  // scalar
  double newton_step_tol = 1e-14;          // |step| < tol*(1+|z|) stops Newton
  double newton_iter_cap = 50;
  double root_residual_tol = 1e-12;        // |e^r - 1 - r| accepted as a U-root
  double root_separation = 1e-6;           // distinct-root / distinct-companion gap
  double boundary_floor = 1e-10;           // min sampled |f| on a census contour
  double window_clearance = 1e-6;          // stricter floor used by prop2 windows
  double census_integrality_tol = 1e-3;    // raw winding sum must be this close to Z
  double companion_grid_step = 0.5;
  double companion_residual_tol = 1e-12;   // |phi(v) - phi(u)| for companion pairs
  // laws
  double law_residual_tol = 1e-8;          // normalized log-law residual
  double commuting_tol = 1e-8;             // normalized commutator below -> commuting
  double noncommuting_floor = 1e-2;        // falsify keeps samples above this
  double identity_rel_tol = 1e-8;          // ||e^{a+b} - e^a e^b|| relative
  double item3_identity_tol = 1e-10;       // exactness demanded of the item-(3) family
  double pivot_floor = 1e-10;              // |w_k| above -> pivot index
  double item_condition_tol = 1e-6;        // prop3 items (4)/(5) phi matches
  double borderline_lo = 1e-9;             // prop3 residuals inside [lo,hi] are
  double borderline_hi = 1e-7;             //   reported as borderline disagreements
  double counterexample_tol = 1e-8;        // residual below this flags a candidate
  double descent_iterations = 200;         // per-trial local search steps
  double classify_u_roots = 20;            // U-roots the item-(2) test is limited to
  double classify_gap_tol = 1e-8;          // prop1 items (1)/(3) spectral matches
  double classify_u_membership_tol = 1e-6; // prop1 item (2) distance to a U-root
  double prop3_commute_tol = 1e-12;        // ||a0 b0 - b0 a0||_F admitted
  double prop4_hermitian_tol = 1e-12;      // ||x - x*|| relative, on inputs
  double prop4_log_hermitian_tol = 1e-10;  // same check on computed logs

  double get(const std::string& name) const;
  void set(const std::string& name, double value);  // ConfigError on unknown name

  // Declaration-order (name, value) view; reports serialize this verbatim.
  std::vector<std::pair<std::string, double>> named() const;
};

inline const Config& default_config() {
  static const Config cfg{};
  return cfg;
}

namespace detail {
inline const std::vector<std::pair<std::string, double Config::*>>&
config_fields() {
  static const std::vector<std::pair<std::string, double Config::*>> fields = {
      {"schur_unitarity_tol", &Config::schur_unitarity_tol},
      {"schur_reconstruction_tol", &Config::schur_reconstruction_tol},
      {"inverse_cond_floor", &Config::inverse_cond_floor},
      {"exp_scaling_theta", &Config::exp_scaling_theta},
      {"exp_norm_budget", &Config::exp_norm_budget},
      {"log_sqrt_target", &Config::log_sqrt_target},
      {"cut_tol", &Config::cut_tol},
      {"low_confidence_cut", &Config::low_confidence_cut},
      {"phi_solve_min_eig", &Config::phi_solve_min_eig},
      {"cluster_radius", &Config::cluster_radius},
      {"interpolation_multiplicity_cap",
       &Config::interpolation_multiplicity_cap},
      {"newton_step_tol", &Config::newton_step_tol},
      {"newton_iter_cap", &Config::newton_iter_cap},
      {"root_residual_tol", &Config::root_residual_tol},
      {"root_separation", &Config::root_separation},
      {"boundary_floor", &Config::boundary_floor},
      {"window_clearance", &Config::window_clearance},
      {"census_integrality_tol", &Config::census_integrality_tol},
      {"companion_grid_step", &Config::companion_grid_step},
      {"companion_residual_tol", &Config::companion_residual_tol},
      {"law_residual_tol", &Config::law_residual_tol},
      {"commuting_tol", &Config::commuting_tol},
      {"noncommuting_floor", &Config::noncommuting_floor},
      {"identity_rel_tol", &Config::identity_rel_tol},
      {"item3_identity_tol", &Config::item3_identity_tol},
      {"pivot_floor", &Config::pivot_floor},
      {"item_condition_tol", &Config::item_condition_tol},
      {"borderline_lo", &Config::borderline_lo},
      {"borderline_hi", &Config::borderline_hi},
      {"counterexample_tol", &Config::counterexample_tol},
      {"descent_iterations", &Config::descent_iterations},
      {"classify_u_roots", &Config::classify_u_roots},
      {"classify_gap_tol", &Config::classify_gap_tol},
      {"classify_u_membership_tol", &Config::classify_u_membership_tol},
      {"prop3_commute_tol", &Config::prop3_commute_tol},
      {"prop4_hermitian_tol", &Config::prop4_hermitian_tol},
      {"prop4_log_hermitian_tol", &Config::prop4_log_hermitian_tol},
  };
  return fields;
}
}  // namespace detail

inline double Config::get(const std::string& name) const {
  for (const auto& [key, member] : detail::config_fields())
    if (key == name) return this->*member;
  throw ConfigError("unknown tolerance name: " + name);
}

inline void Config::set(const std::string& name, double value) {
  for (const auto& [key, member] : detail::config_fields())
    if (key == name) {
      this->*member = value;
      return;
    }
  throw ConfigError("unknown tolerance name: " + name);
}

inline std::vector<std::pair<std::string, double>> Config::named() const {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& [key, member] : detail::config_fields())
    out.emplace_back(key, this->*member);
  return out;
}

}  // namespace matlog
