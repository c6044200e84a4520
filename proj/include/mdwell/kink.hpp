#pragma once

// Traveling-front layer: real roots of the driven cubic psi^3 - psi - sigma,
// the logistic (Montroll) kink connecting the outer roots, the tanh switching
// profile, and residual checks of the traveling equation
// psi'' + rho psi' - psi^3 + psi + sigma = 0.

#include <cmath>
#include <numbers>

#include "grid.hpp"
#include "numerics.hpp"

namespace mdwell {

inline constexpr double kSqrt2 = std::numbers::sqrt2;

// Largest |sigma| admitting three distinct real roots of psi^3 - psi - sigma.
inline constexpr double sigma_limit() { return 2.0 / (3.0 * std::numbers::sqrt3); }

// Roots ordered so alpha1 > alpha3 > alpha2: alpha1 and alpha2 are the outer
// equilibria the kink connects, alpha3 the middle one.
struct CubicRoots {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  double sigma = 0.0;
};

// Trigonometric solution of the depressed cubic psi^3 - psi = sigma. The three
// real branches exist only while the discriminant is positive, i.e.
// |sigma| < 2/(3*sqrt(3)).
inline CubicRoots solve_cubic(double sigma) {
  if (!std::isfinite(sigma) || std::fabs(sigma) >= sigma_limit())
    fail("complex-roots", "no three distinct real roots for |sigma| >= 2/(3*sqrt(3))");
  const double arg = sigma / sigma_limit();  // in (-1, 1)
  const double theta = std::acos(arg);
  const double r = 2.0 / std::sqrt(3.0);
  const double third = 1.0 / 3.0;
  double t0 = r * std::cos(third * theta);
  double t1 = r * std::cos(third * (theta - 2.0 * std::numbers::pi));
  double t2 = r * std::cos(third * (theta - 4.0 * std::numbers::pi));
  // cos ordering gives t0 >= t2 >= t1 for theta in (0, pi); sort explicitly so
  // the convention never depends on that.
  double hi = std::max({t0, t1, t2});
  double lo = std::min({t0, t1, t2});
  double mid = t0 + t1 + t2 - hi - lo;
  return CubicRoots{hi, lo, mid, sigma};
}

// Kink shape parameters derived from the two outer equilibria.
struct KinkParams {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  bool vieta_checked = false;
};

// beta = (alpha2 - alpha1)/sqrt(2), gamma = alpha1 + alpha2. When enforce_vieta
// is set, require alpha1^2 + alpha1*alpha2 + alpha2^2 = 1, the condition that
// both values are roots of psi^3 - psi - sigma for a common sigma.
inline KinkParams kink_params(double alpha1, double alpha2, bool enforce_vieta = false) {
  if (alpha1 == alpha2) fail("equal-roots", "kink needs two distinct equilibria");
  if (enforce_vieta) {
    const double c = alpha1 * alpha1 + alpha1 * alpha2 + alpha2 * alpha2;
    if (std::fabs(c - 1.0) > 1e-8)
      fail("vieta-violation", "alpha1^2 + alpha1*alpha2 + alpha2^2 != 1");
  }
  return KinkParams{alpha1, alpha2, (alpha2 - alpha1) / kSqrt2, alpha1 + alpha2,
                    enforce_vieta};
}

// Logistic kink M(xi) = alpha1 + sqrt(2) beta / (1 + e^{beta xi}); interpolates
// between alpha2 (where beta*xi -> -inf) and alpha1.
inline double montroll_kink_at(const KinkParams& p, double xi) {
  return p.alpha1 + kSqrt2 * p.beta / (1.0 + std::exp(p.beta * xi));
}

inline SampledField montroll_kink(const KinkParams& p, const Grid& g) {
  return sample(g, [&](double xi) { return montroll_kink_at(p, xi); });
}

// Switching profile m(xi) = gamma - tanh(beta xi / 2): same shape family with
// unit tanh amplitude, range (gamma - 1, gamma + 1). This is the profile the
// spectral construction multiplies the ground state by.
inline double switching_kink_at(double beta, double gamma, double xi) {
  return gamma - std::tanh(0.5 * beta * xi);
}

inline SampledField switching_kink(double beta, double gamma, const Grid& g) {
  if (beta == 0.0) fail("invalid-bounds", "switching profile needs beta != 0");
  return sample(g, [&](double xi) { return switching_kink_at(beta, gamma, xi); });
}

// Friction coefficient for which the logistic kink solves the traveling
// equation exactly; valid when (alpha1, alpha2) satisfy the Vieta condition.
// Follows from the first-order reduction psi' = (psi - alpha1)(psi - alpha2)/sqrt(2).
inline double rho_star(const KinkParams& p) { return 3.0 * p.gamma / kSqrt2; }

// Residual of the traveling equation for an arbitrary sampled profile, with
// finite-difference derivatives.
inline SampledField rd_residual(const SampledField& psi, double rho, double sigma) {
  SampledField d1 = differentiate(psi, 1);
  SampledField d2 = differentiate(psi, 2);
  SampledField out = make_field(psi.grid);
  for (int i = 0; i < psi.grid.n; ++i) {
    const double v = psi.values[i];
    out.values[i] = d2.values[i] + rho * d1.values[i] - v * v * v + v + sigma;
  }
  return out;
}

// Residual of the traveling equation for the logistic kink itself, using the
// closed-form derivatives M' = -(beta^2 / (2 sqrt(2))) sech^2(beta xi / 2) and
// M'' = (beta^3 / (2 sqrt(2))) sech^2(beta xi / 2) tanh(beta xi / 2).
inline SampledField rd_residual_analytic(const KinkParams& p, double rho, double sigma,
                                         const Grid& g) {
  SampledField out = make_field(g);
  for (int i = 0; i < g.n; ++i) {
    const double xi = g.point(i);
    const double th = std::tanh(0.5 * p.beta * xi);
    const double ch = std::cosh(0.5 * p.beta * xi);
    const double sech2 = 1.0 / (ch * ch);
    const double m = montroll_kink_at(p, xi);
    const double d1 = -(p.beta * p.beta / (2.0 * kSqrt2)) * sech2;
    const double d2 = (p.beta * p.beta * p.beta / (2.0 * kSqrt2)) * sech2 * th;
    out.values[i] = d2 + rho * d1 - m * m * m + m + sigma;
  }
  return out;
}

// Lab-frame to comoving-frame coordinate change.
inline double traveling_to_lab(double x, double t, double v) { return x - v * t; }

}  // namespace mdwell
