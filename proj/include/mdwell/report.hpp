#pragma once

// The consistency report: every closed form of the construction is checked
// against an independent route (analytic identity chain, quadrature, or the
// grid eigensolver), and the two known misprinted textbook forms are measured
// and recorded as data. Ground-truth checks decide the pass verdict; the
// printed-form gaps are informational and can never fail the run.

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "darboux.hpp"
#include "io.hpp"
#include "kink.hpp"
#include "spectral.hpp"
#include "susy.hpp"

namespace mdwell {

struct CheckLine {
  std::string name;
  bool ok = false;
  double value = 0.0;
  double tolerance = 0.0;
};

struct VerifyOutcome {
  nlohmann::json report;
  std::vector<CheckLine> checks;
  bool all_pass = false;
};

namespace detail {

// Scale for the kink closed-form identity m'' + eps m - 2 R m' = 0: the sup of
// the individual term magnitudes, floored at 1, so the relative tolerance
// stays meaningful when everything is small.
inline double kink_identity_scale(const SusyParams& p, const Grid& g) {
  double s = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double xi = g.point(i);
    const double ch = std::cosh(0.5 * p.beta * xi);
    const double sech2 = 1.0 / (ch * ch);
    const double m = switching_kink_at(p.beta, p.gamma, xi);
    const double mp = -0.5 * p.beta * sech2;
    const double mpp = 0.5 * p.beta * p.beta * sech2 * std::tanh(0.5 * p.beta * xi);
    s = std::max(s, std::fabs(mpp) + std::fabs(p.epsilon * m) +
                        std::fabs(2.0 * superpotential_at(p, xi) * mp));
  }
  return std::max(1.0, s);
}

inline double kink_identity_residual(const SusyParams& p, const Grid& g) {
  double sup = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double xi = g.point(i);
    const double ch = std::cosh(0.5 * p.beta * xi);
    const double sech2 = 1.0 / (ch * ch);
    const double m = switching_kink_at(p.beta, p.gamma, xi);
    const double mp = -0.5 * p.beta * sech2;
    const double mpp = 0.5 * p.beta * p.beta * sech2 * std::tanh(0.5 * p.beta * xi);
    sup = std::max(sup, std::fabs(mpp + p.epsilon * m - 2.0 * superpotential_at(p, xi) * mp));
  }
  return sup;
}

inline nlohmann::json pair_json(double a, double b) { return nlohmann::json::array({a, b}); }

}  // namespace detail

inline VerifyOutcome run_verify_compute(const RunConfig& cfg) {
  VerifyOutcome out;
  nlohmann::json& rep = out.report;
  auto record = [&out](const std::string& name, double value, double tol) {
    out.checks.push_back(CheckLine{name, std::fabs(value) <= tol, value, tol});
    return out.checks.back().ok;
  };

  const SusyParams p = susy_params(cfg);
  validate(p, true);
  validate(deformation_params(cfg));
  const Grid g = config_grid(cfg);

  // Closed-form layer on the configured grid.
  const SampledField r = superpotential(p, g);
  const SampledField u = potential(p, g);
  const SampledField u_alt = potential_expanded(p, g);
  const SampledField phi0 = ground_state(p, g);
  const SampledField phi1 = excited_state(p, g);

  double riccati = 0.0;
  for (int i = 0; i < g.n; ++i)
    riccati = std::max(riccati, std::fabs(u_alt.values[i] - u.values[i]));
  rep["riccati_residual"] = riccati;
  record("riccati_residual", riccati, 1e-11 * max_abs(u.values));

  const double kink_resid = detail::kink_identity_residual(p, g);
  rep["eq7_residual"] = kink_resid;
  record("kink_identity_residual", kink_resid, 1e-11 * detail::kink_identity_scale(p, g));

  // Pointwise Schrodinger residuals of the closed-form pair, FD route.
  const double res0 = verify_eigenpair(u, phi0, cfg.epsilon0);
  const double res1 = verify_eigenpair(u, phi1, cfg.epsilon0 + cfg.epsilon);
  rep["schrodinger_residuals"] = {{"phi0", res0}, {"phi1", res1}};
  const double fd_tol = 10.0 * g.h * g.h;
  record("schrodinger_residual_phi0", res0, fd_tol);
  record("schrodinger_residual_phi1", res1, fd_tol);

  // Spectral layer, on a box verified (and if needed widened) for tail decay.
  const Grid gs = widen_for_decay(p, g);
  const SampledField u_s = potential(p, gs);
  const SpectrumResult modes = lowest_modes(discretize(u_s), 2);
  const double computed_split = splitting(modes);
  const double split_err = std::fabs(computed_split - cfg.epsilon) / std::fabs(cfg.epsilon);
  rep["splitting"] = {
      {"expected", cfg.epsilon}, {"computed", computed_split}, {"rel_error", split_err}};
  record("splitting_rel_error", split_err, 0.02);

  // Isospectrality of the deformed family at safely nonsingular lambda.
  {
    const SampledField r_s = superpotential(p, gs);
    const SampledField phi0_s = ground_state(p, gs);
    const SampledField i_s = accumulate_I(phi0_s, Convention::PaperFigure);
    double i_lo = i_s.values.front(), i_hi = i_s.values.front();
    for (double v : i_s.values) {
      i_lo = std::min(i_lo, v);
      i_hi = std::max(i_hi, v);
    }
    const double w = i_hi - i_lo;
    nlohmann::json table = nlohmann::json::array();
    const double lams[3] = {2.0 * w, -2.0 * w, 1e9};
    for (double lam : lams) {
      const DeformedFamily fam = deform(r_s, u_s, phi0_s, {lam, Convention::PaperFigure});
      const double dev = isospectrality_check(u_s, fam.u_lambda, 4);
      const double tol = lam == 1e9 ? 1e-6 : 5e-3;
      const bool ok = record("isospectral_lambda_" + format_value(lam), dev, tol);
      table.push_back({{"lambda", lam}, {"max_deviation", dev}, {"tolerance", tol}, {"ok", ok}});
    }
    rep["isospectral_table"] = table;
  }

  // Morse-like well characteristics; structurally inapplicable configs (not
  // exactly two wells in the window) record nulls instead of failing.
  {
    nlohmann::json mj;
    const double text_bias = 2.0 * cfg.epsilon * cfg.gamma;
    const double closed_form_bias = cfg.epsilon * cfg.gamma;
    try {
      const MorseCharacteristics mc = morse_characteristics(p, g);
      const auto derived = asymptotic_minima(p);
      mj["numerical_bias"] = mc.bias;
      mj["text_bias_2eg"] = text_bias;
      mj["eq13_bias"] = closed_form_bias;
      mj["numerical_minima"] = detail::pair_json(mc.xi_min_left, mc.xi_min_right);
      mj["derived_minima"] = detail::pair_json(derived.first, derived.second);
      mj["eq14_minima"] = detail::pair_json(mc.printed_minima.first, mc.printed_minima.second);
      // Relative where the reference is nonzero, absolute otherwise (gamma = 0
      // makes the expected bias vanish).
      const auto rel_to = [](double measured, double reference) {
        return reference == 0.0 ? measured : (measured - reference) / reference;
      };
      const double bias_tol = cfg.epsilon <= 0.02 ? 0.02 : 0.10;
      record("morse_bias_rel_error", rel_to(mc.bias, text_bias), bias_tol);
      const double loc_tol = std::fabs(cfg.epsilon / (cfg.beta * cfg.beta));
      record("morse_minimum_left_rel_error", rel_to(mc.xi_min_left, derived.first), loc_tol);
      record("morse_minimum_right_rel_error", rel_to(mc.xi_min_right, derived.second), loc_tol);
    } catch (const Error&) {
      mj["numerical_bias"] = nullptr;
      mj["text_bias_2eg"] = text_bias;
      mj["eq13_bias"] = closed_form_bias;
      mj["numerical_minima"] = nullptr;
      mj["derived_minima"] = nullptr;
      mj["eq14_minima"] = nullptr;
    }
    rep["morse"] = mj;
  }

  // Literal printed-form gaps: recorded, never pass/fail.
  {
    double gap_r = 0.0, gap_u = 0.0;
    for (int i = 0; i < g.n; ++i) {
      const PrintedForms pf = printed_closed_forms(p, g.point(i));
      gap_r = std::max(gap_r, std::fabs(pf.r_variant - r.values[i]));
      gap_u = std::max(gap_u, std::fabs(pf.u_variant - u.values[i]));
    }
    rep["printed_eq8_max_gap"] = gap_r;
    rep["printed_eq11_max_gap"] = gap_u;
  }

  // Singularity side rule lives in the anchored convention regardless of the
  // configured one; absence of a root is a valid (null) outcome.
  {
    const SampledField i_cfg = accumulate_I(phi0, Convention::PaperFigure);
    SampledField shifted = i_cfg;
    for (double& v : shifted.values) v += cfg.lambda;
    const std::optional<double> xi_star = find_root(shifted);
    nlohmann::json sj;
    sj["lambda"] = cfg.lambda;
    if (xi_star) {
      const bool side_ok = (*xi_star < 0.0) == (cfg.lambda > 0.0) && *xi_star != 0.0;
      sj["xi_star"] = *xi_star;
      sj["side_rule_ok"] = side_ok;
      out.checks.push_back(CheckLine{"singularity_side_rule", side_ok, *xi_star, 0.0});
    } else {
      sj["xi_star"] = nullptr;
      sj["side_rule_ok"] = nullptr;
    }
    rep["singularity"] = sj;
  }

  // Exact-normalization identity of the deformed ground state.
  {
    const DeformedFamily fam = deform(r, u, phi0, {cfg.lambda, Convention::Normalized});
    const double nrm = norm_l2(fam.phi0_lambda);
    rep["normalization_check"] = nrm;
    record("normalization_deviation", nrm - 1.0, 1e-6);
  }

  rep["config"] = echo_config(cfg);

  out.all_pass = true;
  for (const CheckLine& c : out.checks) out.all_pass = out.all_pass && c.ok;
  return out;
}

inline std::string render_verify_text(const VerifyOutcome& v) {
  std::ostringstream os;
  os << "consistency report\n";
  for (const CheckLine& c : v.checks) {
    os << (c.ok ? "[ ok ] " : "[FAIL] ") << c.name << " = " << format_value(c.value);
    if (c.tolerance > 0.0) os << " (|tol| " << format_value(c.tolerance) << ")";
    os << "\n";
  }
  os << "printed_eq8_max_gap = " << format_value(v.report.at("printed_eq8_max_gap").get<double>())
     << " (informational)\n";
  os << "printed_eq11_max_gap = "
     << format_value(v.report.at("printed_eq11_max_gap").get<double>()) << " (informational)\n";
  os << "overall: " << (v.all_pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

inline VerifyOutcome run_verify(const RunConfig& cfg, const std::string& out_path) {
  VerifyOutcome v = run_verify_compute(cfg);
  atomic_write_file(out_path, v.report.dump(2) + "\n");
  return v;
}

}  // namespace mdwell
