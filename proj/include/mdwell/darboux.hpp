#pragma once

// One-parameter isospectral deformation of a constructed well. From the base
// superpotential R, potential u, and ground state phi0 it builds
//   I(xi)      = int phi0^2,
//   r_lambda   = R + phi0^2/(I + lambda),
//   u_lambda   = u + 4 R phi0^2/(I + lambda) + 2 phi0^4/(I + lambda)^2,
//   phi0_lambda = sqrt(lambda(lambda+1)) phi0/(I + lambda),
// all with analytic inner derivatives (I' = phi0^2, phi0' = -R phi0), so the
// family carries no finite-difference error of its own. lambda in [-1, 0] is
// rejected: the normalization factor vanishes or turns imaginary there.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <vector>

#include "grid.hpp"
#include "numerics.hpp"

namespace mdwell {

// Anchoring convention for I. PaperFigure keeps phi0 as given and anchors
// I(0) = 0, which makes moderate lambda produce a visible singularity and
// gives the side rule sign(xi*) = -sign(lambda) its meaning. Normalized first
// rescales phi0 to unit weighted L2 norm and anchors at the left boundary
// (proxy for -infinity), so I runs over [0, 1] and the sqrt(lambda(lambda+1))
// factor normalizes phi0_lambda exactly.
enum class Convention { PaperFigure, Normalized };

struct DeformationParams {
  double lambda = 0.0;
  Convention convention = Convention::PaperFigure;
};

inline void validate(const DeformationParams& p) {
  if (!std::isfinite(p.lambda)) fail("lambda-forbidden", "lambda must be finite");
  if (p.lambda >= -1.0 && p.lambda <= 0.0)
    fail("lambda-forbidden", "lambda must lie outside [-1, 0]");
}

struct DeformedFamily {
  SampledField r_lambda;
  SampledField u_lambda;
  SampledField phi0_lambda;
  SampledField i_field;
  std::optional<double> singularity;  // root of I + lambda, at most one
};

namespace detail {

inline SampledField rescale_to_unit_norm(const SampledField& phi0) {
  const double nrm = norm_l2(phi0);
  if (!(nrm > 0.0)) fail("invalid-bounds", "cannot normalize a zero field");
  SampledField out = phi0;
  for (double& v : out.values) v /= nrm;
  return out;
}

}  // namespace detail

inline SampledField accumulate_I(const SampledField& phi0, Convention convention) {
  const SampledField base =
      convention == Convention::Normalized ? detail::rescale_to_unit_norm(phi0) : phi0;
  SampledField sq = base;
  for (double& v : sq.values) v *= v;
  const int anchor = convention == Convention::Normalized ? 0 : phi0.grid.anchor;
  return cumulative_integral(sq, anchor);
}

inline DeformedFamily deform(const SampledField& r, const SampledField& u,
                             const SampledField& phi0, const DeformationParams& params) {
  validate(params);
  require_same_grid(r.grid, u.grid);
  require_same_grid(r.grid, phi0.grid);

  const SampledField base = params.convention == Convention::Normalized
                                ? detail::rescale_to_unit_norm(phi0)
                                : phi0;

  DeformedFamily fam;
  fam.i_field = accumulate_I(phi0, params.convention);

  const int n = r.grid.n;
  const double lam = params.lambda;
  const double amp = std::sqrt(lam * (lam + 1.0));
  fam.r_lambda = make_field(r.grid);
  fam.u_lambda = make_field(r.grid);
  fam.phi0_lambda = make_field(r.grid);
  for (int i = 0; i < n; ++i) {
    const double p = base.values[i];
    const double p2 = p * p;
    const double d = fam.i_field.values[i] + lam;
    fam.r_lambda.values[i] = r.values[i] + p2 / d;
    fam.u_lambda.values[i] =
        u.values[i] + 4.0 * r.values[i] * p2 / d + 2.0 * p2 * p2 / (d * d);
    fam.phi0_lambda.values[i] = amp * p / d;
  }

  SampledField shifted = fam.i_field;
  for (double& v : shifted.values) v += lam;
  fam.singularity = find_root(shifted);
  return fam;
}

// Sign of the singularity position, or nullopt when I + lambda has no root.
// For the anchored convention I(0) = 0, I increasing, so a positive lambda can
// only be cancelled left of the origin and vice versa: sign(xi*) = -sign(lambda).
inline std::optional<int> singularity_side(const SampledField& i_field, double lambda) {
  SampledField shifted = i_field;
  for (double& v : shifted.values) v += lambda;
  const std::optional<double> root = find_root(shifted);
  if (!root) return std::nullopt;
  if (*root > 0.0) return 1;
  if (*root < 0.0) return -1;
  return 0;
}

struct LambdaSweepRow {
  double lambda = 0.0;
  double sup_dev_u = 0.0;  // sup|u_lambda - u| outside the exclusion zone
  std::optional<double> xi_star;
  double norm_check = 0.0;  // weighted L2 norm of phi0_lambda, Normalized convention
};

// Sup-norms exclude 5 grid points on each side of a singularity; the peak
// there is a pole, not a deviation the convergence law speaks about.
inline constexpr int kSingularityExclusion = 5;

inline double sup_deviation_excluding(const SampledField& a, const SampledField& b,
                                      std::optional<double> xi_star) {
  require_same_grid(a.grid, b.grid);
  int skip_lo = 1, skip_hi = 0;  // empty range
  if (xi_star) {
    const int i_star =
        static_cast<int>(std::llround((*xi_star - a.grid.xi_min) / a.grid.h));
    skip_lo = i_star - kSingularityExclusion;
    skip_hi = i_star + kSingularityExclusion;
  }
  double m = 0.0;
  for (int i = 0; i < a.grid.n; ++i) {
    if (i >= skip_lo && i <= skip_hi) continue;
    m = std::max(m, std::fabs(a.values[i] - b.values[i]));
  }
  return m;
}

// Convergence/diagnostic table: deviation and singularity from the anchored
// convention, norm check from the normalized one. Rows come back sorted by
// lambda regardless of input order, so the result is order-independent.
inline std::vector<LambdaSweepRow> lambda_sweep(const SampledField& r, const SampledField& u,
                                                const SampledField& phi0,
                                                const std::vector<double>& lambdas) {
  std::vector<LambdaSweepRow> rows;
  rows.reserve(lambdas.size());
  for (double lam : lambdas) {
    const DeformedFamily anchored = deform(r, u, phi0, {lam, Convention::PaperFigure});
    const DeformedFamily normalized = deform(r, u, phi0, {lam, Convention::Normalized});
    LambdaSweepRow row;
    row.lambda = lam;
    row.xi_star = anchored.singularity;
    row.sup_dev_u = sup_deviation_excluding(anchored.u_lambda, u, anchored.singularity);
    row.norm_check = norm_l2(normalized.phi0_lambda);
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(),
            [](const LambdaSweepRow& a, const LambdaSweepRow& b) { return a.lambda < b.lambda; });
  return rows;
}

}  // namespace mdwell
