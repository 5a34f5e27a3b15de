#include "rabi/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rabi {

namespace {

// Smallest admissible pivot; mirrors the LAPACK pivmin safeguard.
double pivot_floor(const SymTriMatrix& t) {
  double emax = 1.0;
  for (double e : t.off) emax = std::max(emax, e * e);
  return std::numeric_limits<double>::min() * emax;
}

std::size_t sturm_count_impl(const SymTriMatrix& t, double x, double pivmin) {
  std::size_t count = 0;
  double q = t.diag[0] - x;
  if (std::fabs(q) < pivmin) q = pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < t.dim(); ++i) {
    const double e = t.off[i - 1];
    q = (t.diag[i] - x) - e * e / q;
    if (std::fabs(q) < pivmin) q = pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

std::size_t sturm_count(const SymTriMatrix& t, double x) {
  if (t.dim() == 0) return 0;
  return sturm_count_impl(t, x, pivot_floor(t));
}

std::pair<double, double> gershgorin_bounds(const SymTriMatrix& t) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::fabs(t.off[i - 1]);
    if (i + 1 < t.dim()) radius += std::fabs(t.off[i]);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  // Widen slightly so that the strict count is exactly 0 and N at the ends.
  const double pad = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(lo), std::fabs(hi)) +
                     std::numeric_limits<double>::min();
  return {lo - pad, hi + pad};
}

Spectrum eigenvalues_bisection(const SymTriMatrix& t, double tol) {
  return eigenvalues_bisection(t, tol, t.dim());
}

Spectrum eigenvalues_bisection(const SymTriMatrix& t, double tol, std::size_t count) {
  if (!(tol > 0.0)) throw std::invalid_argument("eigenvalues_bisection: tol must be positive");
  count = std::min(count, t.dim());
  Spectrum out;
  out.tol = tol;
  out.truncation_dim = t.dim();
  out.values.reserve(count);
  if (count == 0) return out;

  const double pivmin = pivot_floor(t);
  const auto [glo, ghi] = gershgorin_bounds(t);
  double floor = glo;
  for (std::size_t k = 0; k < count; ++k) {
    // Invariant: count(lo) <= k < count(hi).
    double lo = floor;
    double hi = ghi;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sturm_count_impl(t, mid, pivmin) > k) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const double value = 0.5 * (lo + hi);
    out.values.push_back(value);
    floor = lo;
  }
  out.trusted_count = out.values.size();
  return out;
}

Spectrum eigenvalues_jacobi(const DenseMatrix& input, double tol) {
  const std::size_t n = input.dim();
  if (n > 512) throw std::invalid_argument("eigenvalues_jacobi: dimension exceeds oracle guard of 512");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::fabs(input(i, j) - input(j, i)) > 1e-12)
        throw std::invalid_argument("eigenvalues_jacobi: matrix is not symmetric");

  DenseMatrix a = input;
  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_mass() >= tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rutishauser's rotation: zero a(p, q) with t = tan(phi).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  Spectrum out;
  out.tol = tol;
  out.truncation_dim = n;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
  std::sort(out.values.begin(), out.values.end());
  out.trusted_count = n;
  return out;
}

Spectrum converged_levels(const ModelParams& params, ChainSelector chain, std::size_t level_count,
                          double tol, const ConvergenceOptions& options) {
  if (level_count == 0) throw std::invalid_argument("converged_levels: level_count must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("converged_levels: tol must be positive");
  const double inner_tol = 0.1 * tol;

  std::size_t dim = std::max(4 * level_count, options.min_dim);
  if (dim > options.max_dim) {
    throw ConvergenceError("converged_levels: initial dimension exceeds the truncation cap");
  }
  Spectrum previous = eigenvalues_bisection(build_chain(params, chain, dim), inner_tol, level_count);
  while (true) {
    const std::size_t next_dim = 2 * dim;
    if (next_dim > options.max_dim) {
      std::ostringstream msg;
      msg << "converged_levels: " << level_count << " levels not stable to " << tol
          << " below the truncation cap " << options.max_dim;
      throw ConvergenceError(msg.str());
    }
    Spectrum current = eigenvalues_bisection(build_chain(params, chain, next_dim), inner_tol, level_count);
    double drift = 0.0;
    for (std::size_t k = 0; k < level_count; ++k)
      drift = std::max(drift, std::fabs(current.values[k] - previous.values[k]));
    dim = next_dim;
    if (drift < tol) {
      current.tol = tol;
      current.trusted_count = level_count;
      current.truncation_dim = dim;
      return current;
    }
    previous = std::move(current);
  }
}

}  // namespace rabi
