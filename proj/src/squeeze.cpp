#include "rabi/squeeze.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "rabi/matrices.hpp"
#include "rabi/params.hpp"
#include "rabi/polys.hpp"

namespace rabi {

namespace {

void check_oracle_dim(std::size_t n_dim, const char* who) {
  if (n_dim < 4 || n_dim > 512) {
    std::ostringstream msg;
    msg << who << ": dimension " << n_dim << " outside the oracle range [4, 512]";
    throw std::invalid_argument(msg.str());
  }
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  long double sum = 0.0L;
  long double carry = 0.0L;
  void add(long double x) {
    const long double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  long double value() const { return sum + carry; }
  void scale(long double f) {
    sum *= f;
    carry *= f;
  }
};

constexpr long double kDirectSumCondition = 1e4L;

}  // namespace

double u_element(long m, long n, double lambda, long max_index) {
  if (m < 0 || n < 0) throw std::invalid_argument("u_element: negative index");
  if (m > max_index || n > max_index) {
    std::ostringstream msg;
    msg << "u_element: index beyond the log-space range " << max_index;
    throw std::out_of_range(msg.str());
  }
  if ((m - n) % 2 != 0) return 0.0;
  double sign = 1.0;
  if (m < n) {
    if (((n - m) / 2) % 2 != 0) sign = -1.0;
    std::swap(m, n);
  }
  if (lambda == 0.0) return m == n ? sign : 0.0;

  const long s = (m - n) / 2;
  const double gamma = squeeze_gamma(lambda);
  const double beta = squeeze_beta(lambda);
  // gamma e^{-beta} = sinh(2 lambda) / 2
  const double log_ratio = std::log(std::fabs(std::sinh(2.0 * lambda))) - std::log(2.0);

  // Terms relative to the k = 0 term 1/(n! s!) by their exact ratio, so the only
  // lgamma-derived error sits in the common prefactor and is not amplified by cancellation.
  const long double y2 = std::exp(2.0L * static_cast<long double>(log_ratio));
  long double term = 1.0L;
  long double magnitude = 1.0L;  // sum of |terms|, for the condition number
  double rescale_log = 0.0;
  CompensatedSum acc;
  acc.add(term);
  for (long k = 0; k < n / 2; ++k) {
    term *= -y2 * static_cast<long double>((n - 2 * k) * (n - 2 * k - 1)) /
            static_cast<long double>((k + 1) * (s + k + 1));
    acc.add(term);
    magnitude += std::fabs(term);
    if (magnitude > 1e1000L) {
      term *= 1e-1000L;
      magnitude *= 1e-1000L;
      acc.scale(1e-1000L);
      rescale_log += 1000.0 * std::log(10.0);
    }
  }
  const long double total = acc.value();
  if (total != 0.0L && magnitude / std::fabs(total) <= kDirectSumCondition) {
    const double shift = rescale_log - std::lgamma(static_cast<double>(n) + 1.0) -
                         std::lgamma(static_cast<double>(s) + 1.0);
    const double log_mag = beta * (static_cast<double>(n) + 0.5) + static_cast<double>(s) * std::log(std::fabs(gamma)) +
                           0.5 * (std::lgamma(static_cast<double>(n) + 1.0) + std::lgamma(static_cast<double>(m) + 1.0)) +
                           shift + static_cast<double>(std::log(std::fabs(total)));
    if (s % 2 != 0 && gamma > 0.0) sign = -sign;  // (-gamma)^s
    if (total < 0.0L) sign = -sign;
    return sign * std::exp(log_mag);
  }

  // Ill-conditioned alternating sum: the same element as a P-polynomial,
  // U_mn(lambda) = (-1)^s sqrt(w) G^{(m+n)/2} sqrt(m!/n!) P_n^{(s)}(w / 2G) with G = |gamma|, w = e^beta,
  // evaluated by the stable recurrence. Negative lambda gives U^T, i.e. an extra (-1)^s.
  const double big_g = std::fabs(gamma);
  const double w = std::exp(beta);
  const PolyValue p = p_recurrence(n, s, w / (2.0 * big_g));
  if (p.sign == 0) return 0.0;
  const double log_mag = 0.5 * beta + 0.5 * static_cast<double>(m + n) * std::log(big_g) +
                         0.5 * (std::lgamma(static_cast<double>(m) + 1.0) - std::lgamma(static_cast<double>(n) + 1.0)) +
                         p.log_abs;
  if (s % 2 != 0 && gamma > 0.0) sign = -sign;
  if (p.sign < 0) sign = -sign;
  return sign * std::exp(log_mag);
}

DenseMatrix squeeze_generator(std::size_t n_dim) {
  DenseMatrix a(n_dim);
  for (std::size_t n = 0; n + 2 < n_dim; ++n) {
    const double v = std::sqrt((n + 1.0) * (n + 2.0));
    a(n, n + 2) = v;
    a(n + 2, n) = -v;
  }
  return a;
}

DenseMatrix u_matrix_oracle(std::size_t n_dim, double lambda) {
  check_oracle_dim(n_dim, "u_matrix_oracle");
  if (lambda == 0.0) return DenseMatrix::identity(n_dim);

  DenseMatrix x = squeeze_generator(n_dim);
  x *= lambda;
  const double norm = x.norm_inf();
  int squarings = 0;
  if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  x *= std::ldexp(1.0, -squarings);

  // Taylor core; ||x|| <= 1/4 so 18 terms leave a remainder far below double precision.
  DenseMatrix result = DenseMatrix::identity(n_dim);
  DenseMatrix term = DenseMatrix::identity(n_dim);
  for (int k = 1; k <= 18; ++k) {
    term = term * x;
    term *= 1.0 / k;
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

double factorization_residual(std::size_t n_dim, double lambda) {
  check_oracle_dim(n_dim, "factorization_residual");
  const long double gamma = squeeze_gamma(lambda);
  const long double beta = squeeze_beta(lambda);

  // exp(-gamma a+^2) e_n = sum_k (-gamma)^k / k! sqrt((n+2k)!/n!) e_{n+2k}; the series
  // terminates on the truncation. exp(gamma a^2) is the transpose pattern with +gamma.
  // The product cancels heavily at large lambda, so factors and product are kept in long double.
  std::vector<std::vector<long double>> lower(n_dim, std::vector<long double>(n_dim, 0.0L));
  std::vector<std::vector<long double>> upper(n_dim, std::vector<long double>(n_dim, 0.0L));
  for (std::size_t n = 0; n < n_dim; ++n) {
    lower[n][n] = 1.0L;
    upper[n][n] = 1.0L;
    if (gamma == 0.0L) continue;
    for (std::size_t k = 1; n + 2 * k < n_dim; ++k) {
      const long double log_mag = static_cast<long double>(k) * std::log(std::fabs(gamma)) - std::lgamma(k + 1.0L) +
                                  0.5L * (std::lgamma(n + 2.0L * k + 1.0L) - std::lgamma(n + 1.0L));
      const long double mag = std::exp(log_mag);
      const bool odd = k % 2 != 0;
      lower[n + 2 * k][n] = (odd && gamma > 0.0L) ? -mag : mag;  // (-gamma)^k
      upper[n][n + 2 * k] = (odd && gamma < 0.0L) ? -mag : mag;  // gamma^k
    }
  }
  std::vector<long double> middle(n_dim);
  for (std::size_t n = 0; n < n_dim; ++n) middle[n] = std::exp(beta * (n + 0.5L));

  const DenseMatrix oracle = u_matrix_oracle(n_dim, lambda);
  const std::size_t block = certified_block(n_dim);
  double worst = 0.0;
  for (std::size_t i = 0; i < block; ++i) {
    for (std::size_t j = 0; j < block; ++j) {
      long double sum = 0.0L;
      for (std::size_t k = 0; k <= std::min(i, j); ++k) sum += lower[i][k] * middle[k] * upper[k][j];
      worst = std::max(worst, static_cast<double>(std::fabs(sum - static_cast<long double>(oracle(i, j)))));
    }
  }
  return worst;
}

double h0_transform_residual(std::size_t n_dim, double g) {
  check_oracle_dim(n_dim, "h0_transform_residual");
  const ModelParams params = derive_params(g, 0.0);
  const DenseMatrix u = u_matrix_oracle(n_dim, params.lambda);

  DenseMatrix h0(n_dim);
  for (std::size_t n = 0; n < n_dim; ++n) {
    h0(n, n) = static_cast<double>(n);
    if (n + 2 < n_dim) {
      const double v = g * std::sqrt((n + 1.0) * (n + 2.0));
      h0(n, n + 2) = v;
      h0(n + 2, n) = v;
    }
  }
  const DenseMatrix transformed = u.transposed() * h0 * u;
  DenseMatrix expected(n_dim);
  for (std::size_t n = 0; n < n_dim; ++n) expected(n, n) = oscillator_energy(params, static_cast<long>(n));
  return max_abs_diff(transformed, expected, certified_block(n_dim));
}

double uvu_residual(std::size_t n_dim, double lambda, double delta) {
  check_oracle_dim(n_dim, "uvu_residual");
  const DenseMatrix u = u_matrix_oracle(n_dim, lambda);
  DenseMatrix v(n_dim);
  for (std::size_t k = 0; k < n_dim; ++k) v(k, k) = spin_diagonal(delta, static_cast<long>(k));
  const DenseMatrix uvu = u * v * u;
  return max_abs_diff(uvu, v, certified_block(n_dim));
}

}  // namespace rabi
