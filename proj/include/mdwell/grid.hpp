#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "error.hpp"

namespace mdwell {

// Uniform 1-D grid. Point i is exactly xi_min + i*h; no point array is stored.
// anchor is the index of the grid point closest to xi = 0 (ties take the lower
// index), which the cumulative quadrature and the deformation integral use as
// their zero reference.
struct Grid {
  double xi_min = 0.0;
  double xi_max = 0.0;
  int n = 0;
  double h = 0.0;
  int anchor = 0;

  double point(int i) const { return xi_min + i * h; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.xi_min == b.xi_min && a.xi_max == b.xi_max && a.n == b.n;
  }
};

inline Grid make_grid(double xi_min, double xi_max, int n) {
  if (!std::isfinite(xi_min) || !std::isfinite(xi_max) || !(xi_max > xi_min))
    fail("invalid-bounds", "require finite xi_min < xi_max");
  if (n < 3) fail("too-few-points", "require n >= 3");
  Grid g;
  g.xi_min = xi_min;
  g.xi_max = xi_max;
  g.n = n;
  g.h = (xi_max - xi_min) / (n - 1);
  // Nearest point to zero; scan the rounded candidate and its neighbors so the
  // result is exact even when -xi_min/h rounds to the wrong side.
  int guess = static_cast<int>(std::llround(-xi_min / g.h));
  if (guess < 0) guess = 0;
  if (guess > n - 1) guess = n - 1;
  int best = guess > 0 ? guess - 1 : 0;
  for (int j = best + 1; j <= guess + 1 && j < n; ++j)
    if (std::fabs(g.point(j)) < std::fabs(g.point(best))) best = j;
  g.anchor = best;
  return g;
}

// A real-valued function sampled on a grid: the universal numeric currency of
// the library. values.size() == grid.n always.
struct SampledField {
  Grid grid;
  std::vector<double> values;
};

inline SampledField make_field(const Grid& g, double fill = 0.0) {
  return SampledField{g, std::vector<double>(static_cast<std::size_t>(g.n), fill)};
}

template <class F>
SampledField sample(const Grid& g, F&& f) {
  SampledField out = make_field(g);
  for (int i = 0; i < g.n; ++i) out.values[static_cast<std::size_t>(i)] = f(g.point(i));
  return out;
}

inline void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) fail("grid-mismatch", "fields sampled on different grids");
}

inline void require_same_grid(const SampledField& a, const SampledField& b) {
  require_same_grid(a.grid, b.grid);
}

}  // namespace mdwell
