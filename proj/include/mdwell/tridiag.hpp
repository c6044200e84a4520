#pragma once

// Deterministic symmetric-tridiagonal eigensolver: Sturm-sequence bisection for
// the k algebraically smallest eigenvalues, inverse iteration with a partially
// pivoted tridiagonal LU for the eigenvectors, Gram-Schmidt re-orthogonalization
// inside eigenvalue clusters, and one Rayleigh-quotient polish per pair.
//
// Contracts: eigenvalues ascending; every returned pair satisfies
// ||A v - lambda v||_inf <= 1e-9 * ||A||_inf; eigenvectors have unit norm in the
// weighted discrete L2 inner product (weight * sum v_i^2 == 1) and carry a fixed
// sign (positive at their largest-magnitude entry), so outputs are stable enough
// for golden-file comparison. No randomness beyond a fixed-seed integer LCG.

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "error.hpp"

namespace mdwell {

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;
};

namespace detail {

// Number of eigenvalues of T strictly below x, by the classic pivoted Sturm
// count; pivmin guards against overflow of e^2 / q.
inline int sturm_count_below(std::span<const double> d, const std::vector<double>& e2,
                             double x, double pivmin) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    q = (i == 0) ? d[0] - x : d[i] - x - e2[i - 1] / q;
    if (std::fabs(q) <= pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

// Solve (T - shift I) x = b with partial pivoting; overwrites x. Zero pivots are
// replaced by +-pivmin, which is exactly what inverse iteration wants when the
// shift is numerically an eigenvalue.
inline void shifted_solve(std::span<const double> d, std::span<const double> e, double shift,
                          double pivmin, std::vector<double>& x) {
  const std::size_t n = d.size();
  std::vector<double> dl(n, 0.0), dm(n, 0.0), du(n, 0.0), du2(n, 0.0);
  std::vector<int> piv(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    dm[i] = d[i] - shift;
    if (i + 1 < n) {
      dl[i] = e[i];
      du[i] = e[i];
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::fabs(dm[i]) >= std::fabs(dl[i])) {
      piv[i] = 0;
      if (std::fabs(dm[i]) <= pivmin) dm[i] = dm[i] < 0.0 ? -pivmin : pivmin;
      const double m = dl[i] / dm[i];
      dm[i + 1] -= m * du[i];
      dl[i] = m;  // store multiplier
    } else {
      piv[i] = 1;
      const double m = dm[i] / dl[i];
      // swap rows i, i+1
      dm[i] = dl[i];
      const double tmp = dm[i + 1];
      dm[i + 1] = du[i] - m * tmp;
      du2[i] = (i + 2 < n) ? du[i + 1] : 0.0;
      du[i] = tmp;
      if (i + 2 < n) du[i + 1] = -m * du2[i];
      dl[i] = m;
    }
  }
  if (std::fabs(dm[n - 1]) <= pivmin) dm[n - 1] = dm[n - 1] < 0.0 ? -pivmin : pivmin;
  // forward substitution
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (piv[i] == 0) {
      x[i + 1] -= dl[i] * x[i];
    } else {
      const double tmp = x[i];
      x[i] = x[i + 1];
      x[i + 1] = tmp - dl[i] * x[i];
    }
  }
  // back substitution
  x[n - 1] /= dm[n - 1];
  if (n >= 2) {
    const std::size_t i = n - 2;
    x[i] = (x[i] - du[i] * x[i + 1]) / dm[i];
  }
  for (std::size_t ii = 2; ii < n; ++ii) {
    const std::size_t i = n - 1 - ii;
    x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / dm[i];
  }
}

// Portable deterministic start vector: 64-bit LCG, entries in [-0.5, 0.5].
inline void seeded_start(std::vector<double>& x, int which) {
  std::uint64_t s = 0x9E3779B97F4A7C15ull ^ (static_cast<std::uint64_t>(which) * 0xBF58476D1CE4E5B9ull + 1ull);
  for (double& v : x) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    v = static_cast<double>(s >> 11) * 0x1.0p-53 - 0.5;
  }
}

inline double resid_inf(std::span<const double> d, std::span<const double> e, double w,
                        const std::vector<double>& v) {
  const std::size_t n = d.size();
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double t = (d[i] - w) * v[i];
    if (i > 0) t += e[i - 1] * v[i - 1];
    if (i + 1 < n) t += e[i] * v[i + 1];
    r = std::max(r, std::fabs(t));
  }
  return r;
}

}  // namespace detail

// k algebraically smallest eigenpairs of the symmetric tridiagonal matrix with
// the given diagonal and off-diagonal. `weight` is the quadrature weight per
// component of the discrete L2 norm (pass the grid spacing h to get eigenvectors
// normalized as sampled functions; the default 1 gives plain unit 2-norm).
inline std::vector<EigenPair> solve_tridiag_eigen(std::span<const double> diag,
                                                  std::span<const double> offdiag, int k,
                                                  double weight = 1.0) {
  const std::size_t n = diag.size();
  if (n == 0) fail("k-out-of-range", "empty matrix");
  if (offdiag.size() + 1 != n) fail("grid-mismatch", "offdiag must have length n-1");
  if (k < 1 || static_cast<std::size_t>(k) > n) fail("k-out-of-range", "require 1 <= k <= n");
  if (!(weight > 0.0)) fail("invalid-bounds", "weight must be positive");

  std::vector<double> e2(offdiag.size());
  double emax2 = 0.0;
  for (std::size_t i = 0; i < offdiag.size(); ++i) {
    e2[i] = offdiag[i] * offdiag[i];
    emax2 = std::max(emax2, e2[i]);
  }
  const double pivmin = DBL_MIN * std::max(1.0, emax2);

  double norm_inf = 0.0;
  double lo = diag[0], hi = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::fabs(offdiag[i - 1]) : 0.0) +
                     (i + 1 < n ? std::fabs(offdiag[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
    norm_inf = std::max(norm_inf, std::fabs(diag[i]) + r);
  }
  const double span = std::max(hi - lo, 1.0);
  lo -= 1e-12 * span + pivmin;
  hi += 1e-12 * span + pivmin;

  // Bisection per target index. count() is monotone, so independent bisections
  // yield an ascending sequence automatically.
  std::vector<double> w(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    double a = lo, b = hi;
    for (int it = 0; it < 128; ++it) {
      const double mid = 0.5 * (a + b);
      const double width = b - a;
      if (!(width > 2.0 * DBL_EPSILON * std::max(std::fabs(a), std::fabs(b)) + 2.0 * pivmin))
        break;
      if (detail::sturm_count_below(diag, e2, mid, pivmin) > j)
        b = mid;
      else
        a = mid;
    }
    w[j] = 0.5 * (a + b);
  }

  // Inverse iteration, one eigenvector per eigenvalue.
  std::vector<EigenPair> out(static_cast<std::size_t>(k));
  const double cluster_gap = 1e-5 * std::max(1.0, norm_inf);
  int cluster_start = 0;
  for (int j = 0; j < k; ++j) {
    std::vector<double> x(n);
    detail::seeded_start(x, j);
    double last_resid = HUGE_VAL;
    std::vector<double> best = x;
    for (int it = 0; it < 8; ++it) {
      detail::shifted_solve(diag, offdiag, w[j], pivmin, x);
      double s = 0.0;
      for (double v : x) s += v * v;
      s = std::sqrt(s);
      if (!(s > 0.0) || !std::isfinite(s)) {
        detail::seeded_start(x, j + 97 * (it + 1));
        continue;
      }
      for (double& v : x) v /= s;
      const double r = detail::resid_inf(diag, offdiag, w[j], x);
      if (r < last_resid) {
        last_resid = r;
        best = x;
      }
      if (r <= 1e-11 * std::max(1.0, norm_inf)) break;
    }
    x = best;

    // Re-orthogonalize inside a cluster of near-equal eigenvalues; without this
    // inverse iteration returns slightly overlapping vectors.
    if (j > 0 && w[j] - w[j - 1] > cluster_gap) cluster_start = j;
    if (cluster_start < j) {
      for (int pass = 0; pass < 2; ++pass) {
        for (int p = cluster_start; p < j; ++p) {
          double dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += out[p].vector[i] * x[i];
          dot *= weight;  // previous vectors are weight-normalized
          for (std::size_t i = 0; i < n; ++i) x[i] -= dot * out[p].vector[i];
        }
      }
      double s = 0.0;
      for (double v : x) s += v * v;
      s = std::sqrt(s);
      if (s > 0.0) {
        for (double& v : x) v /= s;
      }
    }

    // Rayleigh-quotient polish: with a converged vector this sharpens the value
    // well below bisection accuracy. Keep the bisection value if the quotient
    // disagrees by more than plausible roundoff.
    double rq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double t = diag[i] * x[i];
      if (i > 0) t += offdiag[i - 1] * x[i - 1];
      if (i + 1 < n) t += offdiag[i] * x[i + 1];
      rq += x[i] * t;
    }
    if (std::fabs(rq - w[j]) <= 1e-8 * std::max(1.0, norm_inf)) w[j] = rq;

    // Fixed sign: positive at the largest-magnitude entry (first on ties).
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::fabs(x[i]) > std::fabs(x[imax])) imax = i;
    if (x[imax] < 0.0)
      for (double& v : x) v = -v;

    const double scale = 1.0 / std::sqrt(weight);
    for (double& v : x) v *= scale;
    out[j].value = w[j];
    out[j].vector = std::move(x);
  }

  // The polish can nudge near-equal values out of order by roundoff; restore
  // the ascending contract without disturbing vector pairing.
  for (int j = 1; j < k; ++j)
    if (out[j].value < out[j - 1].value) std::swap(out[j], out[j - 1]);

  return out;
}

}  // namespace mdwell
