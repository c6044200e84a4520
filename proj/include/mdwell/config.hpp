#pragma once

// Run configuration: flat JSON keys, CLI --set overrides, and the parameter
// source rule. sigma determines the cubic roots (alpha1, alpha2); the roots
// determine (beta, gamma) through beta = (alpha2 - alpha1)/sqrt(2),
// gamma = alpha1 + alpha2; explicit (beta, gamma) override but must agree with
// values derived from explicitly-given roots to 1e-10. The resolved config is
// echoed into every report so a run can be reproduced from its own output.

#include <cmath>
#include <optional>
#include <string>

#include <json.hpp>

#include "darboux.hpp"
#include "error.hpp"
#include "grid.hpp"
#include "kink.hpp"
#include "susy.hpp"

namespace mdwell {

struct RunConfig {
  double alpha1 = 1.0;
  double alpha2 = -1.5;
  std::optional<double> sigma;
  double beta = -2.5 / kSqrt2;
  double gamma = -0.5;
  double epsilon = 0.1;
  double epsilon0 = 0.0;
  double amplitude = 1.0;
  double lambda = 10.0;
  Convention convention = Convention::PaperFigure;
  double xi_min = -8.0;
  double xi_max = 8.0;
  int n = 4001;
};

namespace detail {

inline double require_number(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) fail("config-invalid", "key '" + key + "' must be a number");
  return v.get<double>();
}

}  // namespace detail

// Applies one `key=value` override (CLI --set) onto the raw JSON object.
inline void apply_override(nlohmann::json& obj, const std::string& keyval) {
  const auto eq = keyval.find('=');
  if (eq == std::string::npos || eq == 0)
    fail("config-invalid", "--set expects key=value, got '" + keyval + "'");
  const std::string key = keyval.substr(0, eq);
  const std::string val = keyval.substr(eq + 1);
  if (key == "convention") {
    obj[key] = val;
    return;
  }
  try {
    std::size_t used = 0;
    if (key == "n") {
      obj[key] = std::stoi(val, &used);
    } else {
      obj[key] = std::stod(val, &used);
    }
    if (used != val.size()) throw std::invalid_argument(val);
  } catch (const std::exception&) {
    fail("config-invalid", "cannot parse value for --set " + keyval);
  }
}

inline nlohmann::json parse_config_text(const std::string& text) {
  try {
    nlohmann::json obj = nlohmann::json::parse(text);
    if (!obj.is_object()) fail("config-invalid", "config root must be a JSON object");
    return obj;
  } catch (const nlohmann::json::parse_error& e) {
    fail("config-invalid", std::string("config is not valid JSON: ") + e.what());
  }
}

// Resolves a raw key/value object into an effective RunConfig, enforcing the
// parameter source rule and rejecting unknown keys.
inline RunConfig resolve_config(const nlohmann::json& obj) {
  RunConfig cfg;
  bool a1_given = false, a2_given = false, sigma_given = false;
  bool beta_given = false, gamma_given = false;

  for (const auto& [key, value] : obj.items()) {
    if (key == "alpha1") {
      cfg.alpha1 = detail::require_number(value, key);
      a1_given = true;
    } else if (key == "alpha2") {
      cfg.alpha2 = detail::require_number(value, key);
      a2_given = true;
    } else if (key == "sigma") {
      cfg.sigma = detail::require_number(value, key);
      sigma_given = true;
    } else if (key == "beta") {
      cfg.beta = detail::require_number(value, key);
      beta_given = true;
    } else if (key == "gamma") {
      cfg.gamma = detail::require_number(value, key);
      gamma_given = true;
    } else if (key == "epsilon") {
      cfg.epsilon = detail::require_number(value, key);
    } else if (key == "epsilon0") {
      cfg.epsilon0 = detail::require_number(value, key);
    } else if (key == "amplitude") {
      cfg.amplitude = detail::require_number(value, key);
    } else if (key == "lambda") {
      cfg.lambda = detail::require_number(value, key);
    } else if (key == "convention") {
      if (!value.is_string()) fail("config-invalid", "convention must be a string");
      const std::string s = value.get<std::string>();
      if (s == "PaperFigure") {
        cfg.convention = Convention::PaperFigure;
      } else if (s == "Normalized") {
        cfg.convention = Convention::Normalized;
      } else {
        fail("config-invalid", "convention must be PaperFigure or Normalized, got '" + s + "'");
      }
    } else if (key == "xi_min") {
      cfg.xi_min = detail::require_number(value, key);
    } else if (key == "xi_max") {
      cfg.xi_max = detail::require_number(value, key);
    } else if (key == "n") {
      if (!value.is_number_integer()) fail("config-invalid", "n must be an integer");
      cfg.n = value.get<int>();
    } else {
      fail("config-invalid", "unknown config key '" + key + "'");
    }
  }

  // sigma fixes the outer cubic roots; explicitly-given roots must agree.
  if (sigma_given) {
    CubicRoots roots;
    try {
      roots = solve_cubic(*cfg.sigma);
    } catch (const Error& e) {
      fail("config-invalid", std::string("sigma does not admit three real roots: ") + e.what());
    }
    if (a1_given && std::fabs(cfg.alpha1 - roots.alpha1) > 1e-8)
      fail("config-invalid", "alpha1 inconsistent with sigma-derived root");
    if (a2_given && std::fabs(cfg.alpha2 - roots.alpha2) > 1e-8)
      fail("config-invalid", "alpha2 inconsistent with sigma-derived root");
    if (!a1_given) cfg.alpha1 = roots.alpha1;
    if (!a2_given) cfg.alpha2 = roots.alpha2;
  }

  const bool alphas_active = a1_given || a2_given || sigma_given;
  if (alphas_active) {
    KinkParams kp;
    try {
      kp = kink_params(cfg.alpha1, cfg.alpha2);
    } catch (const Error& e) {
      fail("config-invalid", e.what());
    }
    if (beta_given && std::fabs(cfg.beta - kp.beta) > 1e-10)
      fail("config-invalid", "explicit beta inconsistent with (alpha1, alpha2)");
    if (gamma_given && std::fabs(cfg.gamma - kp.gamma) > 1e-10)
      fail("config-invalid", "explicit gamma inconsistent with (alpha1, alpha2)");
    if (!beta_given) cfg.beta = kp.beta;
    if (!gamma_given) cfg.gamma = kp.gamma;
  } else if (beta_given || gamma_given) {
    // Echo stays self-consistent: back-derive the roots the explicit pair implies.
    cfg.alpha1 = 0.5 * (cfg.gamma - kSqrt2 * cfg.beta);
    cfg.alpha2 = 0.5 * (cfg.gamma + kSqrt2 * cfg.beta);
  }

  if (!(cfg.xi_min < cfg.xi_max))
    fail("config-invalid", "xi_min must be less than xi_max");
  if (cfg.n < 9) fail("config-invalid", "n must be at least 9");
  if (cfg.beta == 0.0) fail("config-invalid", "beta must be nonzero");
  return cfg;
}

inline SusyParams susy_params(const RunConfig& cfg) {
  return SusyParams{cfg.beta, cfg.gamma, cfg.epsilon, cfg.epsilon0, cfg.amplitude};
}

inline Grid config_grid(const RunConfig& cfg) { return make_grid(cfg.xi_min, cfg.xi_max, cfg.n); }

inline DeformationParams deformation_params(const RunConfig& cfg) {
  return DeformationParams{cfg.lambda, cfg.convention};
}

inline nlohmann::json echo_config(const RunConfig& cfg) {
  nlohmann::json j{
      {"alpha1", cfg.alpha1},
      {"alpha2", cfg.alpha2},
      {"beta", cfg.beta},
      {"gamma", cfg.gamma},
      {"epsilon", cfg.epsilon},
      {"epsilon0", cfg.epsilon0},
      {"amplitude", cfg.amplitude},
      {"lambda", cfg.lambda},
      {"convention", cfg.convention == Convention::PaperFigure ? "PaperFigure" : "Normalized"},
      {"xi_min", cfg.xi_min},
      {"xi_max", cfg.xi_max},
      {"n", cfg.n},
  };
  if (cfg.sigma) j["sigma"] = *cfg.sigma;
  return j;
}

}  // namespace mdwell
