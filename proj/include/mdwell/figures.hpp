#pragma once

// Figure datasets and the lambda convergence table as CSV. All values use the
// fixed %.12e rendering; rows inside the exclusion zone of a deformation
// singularity carry the literal token `inf-excluded` and are tallied in a
// trailing `# excluded=<n>` comment, which is always present so the files
// parse the same way whether or not a singularity occurred.

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "darboux.hpp"
#include "io.hpp"
#include "susy.hpp"

namespace mdwell {

namespace detail {

struct FigureSeries {
  SampledField values;
  std::optional<double> singularity;
};

inline FigureSeries figure_series(int id, const RunConfig& cfg) {
  const SusyParams p = susy_params(cfg);
  const Grid g = config_grid(cfg);
  FigureSeries out;
  switch (id) {
    case 1:
      out.values = potential(p, g);
      return out;
    case 2:
      out.values = ground_state(p, g);
      return out;
    case 5:
      out.values = accumulate_I(ground_state(p, g), cfg.convention);
      return out;
    case 3:
    case 4: {
      const SampledField r = superpotential(p, g);
      const SampledField u = potential(p, g);
      const SampledField phi0 = ground_state(p, g);
      DeformedFamily fam = deform(r, u, phi0, deformation_params(cfg));
      out.singularity = fam.singularity;
      out.values = id == 3 ? std::move(fam.u_lambda) : std::move(fam.phi0_lambda);
      return out;
    }
    default:
      fail("config-invalid", "figure id must be between 1 and 5");
  }
}

inline std::string series_csv(const FigureSeries& s) {
  const Grid& g = s.values.grid;
  int i_star = -1;
  if (s.singularity)
    i_star = static_cast<int>(std::llround((*s.singularity - g.xi_min) / g.h));
  std::string csv = "xi,value\n";
  int excluded = 0;
  for (int i = 0; i < g.n; ++i) {
    const double v = s.values.values[i];
    const bool near_pole = i_star >= 0 && std::abs(i - i_star) <= kSingularityExclusion;
    csv += format_value(g.point(i));
    csv += ',';
    if (near_pole || !std::isfinite(v)) {
      csv += "inf-excluded";
      ++excluded;
    } else {
      csv += format_value(v);
    }
    csv += '\n';
  }
  csv += "# excluded=" + std::to_string(excluded) + "\n";
  return csv;
}

}  // namespace detail

inline void run_figure(int id, const RunConfig& cfg, const std::string& out_path) {
  atomic_write_file(out_path, detail::series_csv(detail::figure_series(id, cfg)));
}

inline void run_lambda_sweep(const RunConfig& cfg, const std::vector<double>& lambdas,
                             const std::string& out_path) {
  for (double lam : lambdas) validate(DeformationParams{lam, cfg.convention});
  const SusyParams p = susy_params(cfg);
  const Grid g = config_grid(cfg);
  const SampledField r = superpotential(p, g);
  const SampledField u = potential(p, g);
  const SampledField phi0 = ground_state(p, g);
  const auto rows = lambda_sweep(r, u, phi0, lambdas);

  std::string csv = "lambda,sup_dev_u,xi_star,norm_check\n";
  for (const LambdaSweepRow& row : rows) {
    csv += format_value(row.lambda);
    csv += ',';
    csv += format_value(row.sup_dev_u);
    csv += ',';
    if (row.xi_star) csv += format_value(*row.xi_star);
    csv += ',';
    csv += format_value(row.norm_check);
    csv += '\n';
  }
  atomic_write_file(out_path, csv);
}

}  // namespace mdwell
