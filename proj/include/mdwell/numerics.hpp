#pragma once

// Numerical kernels shared by every module: finite differences, cumulative
// trapezoid quadrature (plain and endpoint-corrected), discrete L2 norms,
// sign-change root location and local-minimum refinement.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "grid.hpp"

namespace mdwell {

// Second-order finite differences: central stencils in the interior, one-sided
// second-order stencils at the ends (for n == 3 the second-derivative stencil
// degenerates to the central value, which is still exact for quadratics).
inline SampledField differentiate(const SampledField& f, int order) {
  if (order != 1 && order != 2) fail("invalid-order", "derivative order must be 1 or 2");
  const int n = f.grid.n;
  const double h = f.grid.h;
  const std::vector<double>& v = f.values;
  SampledField out = make_field(f.grid);
  std::vector<double>& d = out.values;
  if (order == 1) {
    for (int i = 1; i < n - 1; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  } else {
    const double h2 = h * h;
    for (int i = 1; i < n - 1; ++i) d[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
    if (n >= 4) {
      d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
      d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
    } else {
      d[0] = d[1];
      d[2] = d[1];
    }
  }
  return out;
}

// Composite-trapezoid cumulative integral with result(anchor) == 0 exactly.
// Left of the anchor the result is the negative of the reversed integral, so
// the output is a single consistent antiderivative sample.
inline SampledField cumulative_integral(const SampledField& f, int anchor) {
  const int n = f.grid.n;
  if (anchor < 0 || anchor >= n) fail("anchor-out-of-range", "anchor index outside grid");
  const double h = f.grid.h;
  const std::vector<double>& v = f.values;
  SampledField out = make_field(f.grid);
  std::vector<double>& t = out.values;
  t[anchor] = 0.0;
  for (int i = anchor + 1; i < n; ++i) t[i] = t[i - 1] + 0.5 * h * (v[i - 1] + v[i]);
  for (int i = anchor - 1; i >= 0; --i) t[i] = t[i + 1] - 0.5 * h * (v[i] + v[i + 1]);
  return out;
}

// Endpoint-corrected cumulative trapezoid: subtracting (h^2/12)*(f'(xi)-f'(anchor))
// cancels the leading Euler-Maclaurin endpoint error and raises the order to
// O(h^4) for smooth integrands. fprime must be the analytic derivative of f;
// use this variant when the result feeds an exponential, where the plain rule's
// h^2 endpoint error is amplified far beyond its nominal size.
inline SampledField cumulative_integral_corrected(const SampledField& f,
                                                  const SampledField& fprime,
                                                  int anchor) {
  require_same_grid(f, fprime);
  SampledField out = cumulative_integral(f, anchor);
  const double c = f.grid.h * f.grid.h / 12.0;
  const double fp0 = fprime.values[static_cast<std::size_t>(anchor)];
  for (int i = 0; i < f.grid.n; ++i)
    out.values[i] -= c * (fprime.values[i] - fp0);
  return out;
}

// Trapezoid weight of point i: h at interior points, h/2 at the two ends.
inline double l2_weight(const Grid& g, int i) {
  return (i == 0 || i == g.n - 1) ? 0.5 * g.h : g.h;
}

// Discrete L2 norm with trapezoid weights, sqrt(sum_i w_i v_i^2).
inline double norm_l2(const SampledField& f) {
  double s = 0.0;
  for (int i = 0; i < f.grid.n; ++i) s += l2_weight(f.grid, i) * f.values[i] * f.values[i];
  return std::sqrt(s);
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// Unique sign-change root of a sampled monotone function, refined by bisection
// on the linear interpolant of the bracketing cell until |f| < 1e-12 * max|f|.
// Returns nullopt when the field never changes sign; more than one bracket
// signals violated monotonicity and is an error.
inline std::optional<double> find_root(const SampledField& f) {
  const int n = f.grid.n;
  const std::vector<double>& v = f.values;
  int bracket = -1;
  int exact = -1;
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0.0) {
      // An exact grid-point zero counts as one root unless it extends the
      // previous bracket.
      if (exact != i - 1 || i == 0) {
        ++count;
        exact = i;
      } else {
        exact = i;
      }
      continue;
    }
    if (i + 1 < n && v[i + 1] != 0.0 && std::signbit(v[i]) != std::signbit(v[i + 1])) {
      ++count;
      bracket = i;
    }
  }
  if (count == 0) return std::nullopt;
  if (count > 1) fail("multiple-brackets", "field changes sign more than once");
  if (bracket < 0) return f.grid.point(exact);

  const double tol = 1e-12 * std::max(1e-300, max_abs(v));
  double xa = f.grid.point(bracket);
  double xb = f.grid.point(bracket + 1);
  double fa = v[bracket];
  double fb = v[bracket + 1];
  auto interp = [&](double x) { return fa + (fb - fa) * (x - xa) / (xb - xa); };
  double lo = xa, hi = xb;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double fm = interp(mid);
    if (std::fabs(fm) < tol) break;
    if (std::signbit(fm) == std::signbit(fa))
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

// Strict interior local minima, each refined through the three-point parabola
// q(t) = f_i + b t + a t^2 on t in [-1, 1]; exact for sampled quadratics.
// Results are ordered by xi because the scan is.
inline std::vector<std::pair<double, double>> find_local_minima(const SampledField& f) {
  std::vector<std::pair<double, double>> out;
  const std::vector<double>& v = f.values;
  for (int i = 1; i < f.grid.n - 1; ++i) {
    if (v[i] < v[i - 1] && v[i] < v[i + 1]) {
      const double a = 0.5 * (v[i + 1] - 2.0 * v[i] + v[i - 1]);
      const double b = 0.5 * (v[i + 1] - v[i - 1]);
      const double t = (a > 0.0) ? -b / (2.0 * a) : 0.0;
      out.emplace_back(f.grid.point(i) + t * f.grid.h, v[i] - (a > 0.0 ? b * b / (4.0 * a) : 0.0));
    }
  }
  return out;
}

}  // namespace mdwell
