#pragma once

// Grid-based verification engine for the constructed wells: a 3-point
// Dirichlet discretization of -d^2/dxi^2 + u, low-lying eigenpairs through the
// tridiagonal solver, and the derived checks (splitting, pointwise eigenpair
// residuals, isospectrality of the deformed family). Everything here is O(h^2)
// by construction; tests lean on refinement ratios, not absolute magic numbers.

#include <cmath>
#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

#include "grid.hpp"
#include "numerics.hpp"
#include "susy.hpp"
#include "tridiag.hpp"

namespace mdwell {

// Dirichlet operator on the interior points: diagonal 2/h^2 + u_i,
// off-diagonal -1/h^2.
struct Hamiltonian {
  Grid grid;
  SampledField potential;
  std::vector<double> diag;
  std::vector<double> offdiag;
};

inline Hamiltonian discretize(const SampledField& u) {
  const int n = u.grid.n;
  for (int i = 1; i + 1 < n; ++i)
    if (!std::isfinite(u.values[i]))
      fail("singular-potential", "potential is not finite at an interior point");
  Hamiltonian h;
  h.grid = u.grid;
  h.potential = u;
  const double inv_h2 = 1.0 / (u.grid.h * u.grid.h);
  h.diag.resize(static_cast<std::size_t>(n - 2));
  h.offdiag.resize(static_cast<std::size_t>(n - 3));
  for (int i = 1; i + 1 < n; ++i) h.diag[static_cast<std::size_t>(i - 1)] = 2.0 * inv_h2 + u.values[i];
  for (std::size_t i = 0; i < h.offdiag.size(); ++i) h.offdiag[i] = -inv_h2;
  return h;
}

inline double operator_inf_norm(const Hamiltonian& h) {
  double m = 0.0;
  const std::size_t n = h.diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::fabs(h.diag[i]);
    if (i > 0) row += std::fabs(h.offdiag[i - 1]);
    if (i + 1 < n) row += std::fabs(h.offdiag[i]);
    m = std::max(m, row);
  }
  return m;
}

struct SpectrumResult {
  std::vector<double> eigenvalues;            // ascending
  std::vector<SampledField> eigenfunctions;   // full grid, boundary zeros, unit weighted norm
  std::vector<double> residuals;              // algebraic ||H phi - eps phi||_inf per pair
};

// k lowest eigenpairs, k capped at 8: only the bottom of the well matters
// here, and the bisection search is per-index.
inline SpectrumResult lowest_modes(const Hamiltonian& h, int k) {
  if (k < 1 || k > 8) fail("k-out-of-range", "k must be between 1 and 8");
  const auto pairs = solve_tridiag_eigen(h.diag, h.offdiag, k, h.grid.h);

  SpectrumResult out;
  out.eigenvalues.reserve(pairs.size());
  out.eigenfunctions.reserve(pairs.size());
  out.residuals.reserve(pairs.size());
  const std::size_t m = h.diag.size();
  for (const auto& ep : pairs) {
    out.eigenvalues.push_back(ep.value);
    SampledField f = make_field(h.grid);
    for (std::size_t i = 0; i < m; ++i) f.values[i + 1] = ep.vector[i];
    out.eigenfunctions.push_back(std::move(f));
    double resid = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double t = (h.diag[i] - ep.value) * ep.vector[i];
      if (i > 0) t += h.offdiag[i - 1] * ep.vector[i - 1];
      if (i + 1 < m) t += h.offdiag[i] * ep.vector[i + 1];
      resid = std::max(resid, std::fabs(t));
    }
    out.residuals.push_back(resid);
  }
  return out;
}

// Pointwise Schrodinger residual sup|phi'' + (eps - u) phi| / max|phi| over
// interior points, FD second derivative. The optional interval masks a band
// (e.g. around a deformation singularity) out of the sup.
inline double verify_eigenpair(const SampledField& u, const SampledField& phi, double eps,
                               std::optional<std::pair<double, double>> exclusion = std::nullopt) {
  require_same_grid(u.grid, phi.grid);
  const SampledField d2 = differentiate(phi, 2);
  const double scale = max_abs(phi.values);
  if (!(scale > 0.0)) fail("invalid-bounds", "eigenfunction is identically zero");
  double sup = 0.0;
  for (int i = 1; i + 1 < u.grid.n; ++i) {
    const double xi = u.grid.point(i);
    if (exclusion && xi >= exclusion->first && xi <= exclusion->second) continue;
    sup = std::max(sup, std::fabs(d2.values[i] + (eps - u.values[i]) * phi.values[i]));
  }
  return sup / scale;
}

inline double splitting(const SpectrumResult& spec) {
  if (spec.eigenvalues.size() < 2)
    fail("insufficient-modes", "splitting needs at least two eigenvalues");
  return spec.eigenvalues[1] - spec.eigenvalues[0];
}

// Max deviation of the k lowest eigenvalues between two potentials on the same
// grid. Refuses singular (non-finite) deformed potentials outright: eigenvalues
// past a pole belong to a different operator.
inline double isospectrality_check(const SampledField& u, const SampledField& u_lambda, int k) {
  require_same_grid(u.grid, u_lambda.grid);
  for (double v : u_lambda.values)
    if (!std::isfinite(v)) fail("singular-potential", "deformed potential has a singularity in the domain");
  const SpectrumResult a = lowest_modes(discretize(u), k);
  const SpectrumResult b = lowest_modes(discretize(u_lambda), k);
  double dev = 0.0;
  for (int i = 0; i < k; ++i)
    dev = std::max(dev, std::fabs(a.eigenvalues[i] - b.eigenvalues[i]));
  return dev;
}

// Sign changes of a mode, ignoring entries below a relative floor so the
// underflowed tails do not register as oscillation.
inline int node_count(const SampledField& phi, double rel_floor = 1e-7) {
  const double floor = rel_floor * max_abs(phi.values);
  int nodes = 0;
  int prev = 0;
  for (double v : phi.values) {
    if (std::fabs(v) <= floor) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (prev != 0 && s != prev) ++nodes;
    prev = s;
  }
  return nodes;
}

// Dirichlet boxes are only honest when the state has decayed at the walls.
// Widens the box by 1.5x about its center (keeping h) until the ground-state
// tails fall below 1e-10 of the peak; parameters this far from the defaults
// are out of scope, so the cap is generous.
inline Grid widen_for_decay(const SusyParams& p, Grid g) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    const SampledField phi0 = ground_state(p, g);
    const double peak = max_abs(phi0.values);
    const double tail =
        std::max(std::fabs(phi0.values.front()), std::fabs(phi0.values.back()));
    if (tail < 1e-10 * peak) return g;
    const double center = 0.5 * (g.xi_min + g.xi_max);
    const double half = 1.5 * 0.5 * (g.xi_max - g.xi_min);
    const int extra = static_cast<int>(std::ceil((half - 0.5 * (g.xi_max - g.xi_min)) / g.h));
    g = make_grid(center - (0.5 * (g.xi_max - g.xi_min) + extra * g.h),
                  center + (0.5 * (g.xi_max - g.xi_min) + extra * g.h),
                  g.n + 2 * extra);
  }
  fail("invalid-bounds", "ground state does not decay within the widened box");
}

}  // namespace mdwell
