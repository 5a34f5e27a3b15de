#include "rabi/polys.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

namespace rabi {

namespace {

mpz_class factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

double lfact(long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

PolyValue from_scaled(double mantissa, double log_scale) {
  PolyValue out;
  if (mantissa == 0.0) return out;
  out.sign = mantissa > 0.0 ? 1 : -1;
  out.log_abs = std::log(std::fabs(mantissa)) + log_scale;
  out.value = out.sign * std::exp(out.log_abs);
  return out;
}

struct DirectSum {
  PolyValue value;
  double condition = 1.0;
};

// Alternating sum built from exact term ratios in extended precision; the k = 0 term
// (2x)^n / s! is factored out in log space.
DirectSum direct_sum(long n, long s, double x) {
  DirectSum out;
  if (x == 0.0) {
    if (n % 2 != 0) return out;
    const long k = n / 2;
    out.value = from_scaled(k % 2 == 0 ? 1.0 : -1.0, lfact(n) - lfact(k) - lfact(s + k));
    return out;
  }
  const long double inv_2x2 = 1.0L / (4.0L * static_cast<long double>(x) * static_cast<long double>(x));
  long double term = 1.0L;
  long double sum = 1.0L, carry = 0.0L, abs_sum = 1.0L;
  double log_scale = static_cast<double>(n) * std::log(std::fabs(2.0 * x)) - lfact(s);
  for (long k = 0; k < n / 2; ++k) {
    term *= -inv_2x2 * static_cast<long double>((n - 2 * k) * (n - 2 * k - 1)) /
            static_cast<long double>((k + 1) * (s + k + 1));
    abs_sum += std::fabs(term);
    const long double t = sum + term;
    carry += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    if (abs_sum > 1e1000L) {
      term *= 1e-1000L;
      sum *= 1e-1000L;
      carry *= 1e-1000L;
      abs_sum *= 1e-1000L;
      log_scale += 1000.0 * std::log(10.0);
    }
  }
  sum += carry;
  const double sign = (x < 0.0 && n % 2 != 0) ? -1.0 : 1.0;
  if (sum != 0.0L) {
    const double log_mag = static_cast<double>(std::log(std::fabs(sum))) + log_scale;
    out.value = from_scaled(sum > 0.0L ? sign : -sign, log_mag);
  }
  out.condition = sum == 0.0L ? INFINITY : static_cast<double>(abs_sum / std::fabs(sum));
  return out;
}

// 20-point Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on P_20.
struct GaussLegendre {
  static constexpr int kOrder = 20;
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};

  GaussLegendre() {
    for (int i = 0; i < kOrder; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (kOrder + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 1; j <= kOrder; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
        }
        dp = kOrder * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / dp;
        z -= dz;
        if (std::fabs(dz) < 1e-16) break;
      }
      nodes[i] = z;
      weights[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }

  template <typename F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (int i = 0; i < kOrder; ++i) acc += weights[i] * f(mid + half * nodes[i]);
    return half * acc;
  }
};

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule;
  return rule;
}

template <typename F>
double adaptive(const F& f, double a, double b, double whole, double tol, int depth) {
  const auto& rule = gauss_legendre();
  const double mid = 0.5 * (a + b);
  const double left = rule.integrate(f, a, mid);
  const double right = rule.integrate(f, mid, b);
  // Depth exhaustion only happens next to a turning point; accept the fixed high-order rule there.
  if (std::fabs(left + right - whole) <= tol || depth >= 40) return left + right;
  return adaptive(f, a, mid, left, 0.5 * tol, depth + 1) + adaptive(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

mpq_class p_exact(long n, long s, const mpq_class& x) {
  if (n < 0 || s < 0) throw std::invalid_argument("p_exact: indices must be non-negative");
  if (n > kExactDegreeGuard) {
    std::ostringstream msg;
    msg << "p_exact: degree " << n << " exceeds the exact-arithmetic guard " << kExactDegreeGuard;
    throw std::out_of_range(msg.str());
  }
  const mpq_class two_x = 2 * x;
  const mpz_class n_fact = factorial(n);
  mpq_class sum = 0;
  for (long k = 0; k <= n / 2; ++k) {
    mpq_class power = 1;
    mpz_pow_ui(power.get_num_mpz_t(), two_x.get_num_mpz_t(), static_cast<unsigned long>(n - 2 * k));
    mpz_pow_ui(power.get_den_mpz_t(), two_x.get_den_mpz_t(), static_cast<unsigned long>(n - 2 * k));
    power.canonicalize();
    mpq_class coeff(n_fact, factorial(k) * factorial(n - 2 * k) * factorial(s + k));
    coeff.canonicalize();
    mpq_class term = power * coeff;
    if (k % 2 != 0) term = -term;
    sum += term;
  }
  return sum;
}

PolyValue p_recurrence(long n, long s, double x) {
  if (n < 0 || s < 0) throw std::invalid_argument("p_recurrence: indices must be non-negative");
  const double log_scale0 = -lfact(s);
  if (n == 0) return from_scaled(1.0, log_scale0);
  double prev = 1.0;
  double cur = 2.0 * x;
  double log_scale = log_scale0;
  const double four_r2 = 4.0 * (1.0 + x * x);
  const double sd = static_cast<double>(s);
  for (long k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double next = (2.0 * x * (2.0 * kd + 2.0 * sd + 1.0) * cur - four_r2 * kd * prev) / (kd + 2.0 * sd + 1.0);
    prev = cur;
    cur = next;
    const double big = std::max(std::fabs(prev), std::fabs(cur));
    if (big > 1e200 || (big < 1e-200 && big > 0.0)) {
      prev /= big;
      cur /= big;
      log_scale += std::log(big);
    }
  }
  PolyValue out = from_scaled(cur, log_scale);
  out.used_recurrence = true;
  return out;
}

PolyValue p_fast(long n, long s, double x) {
  if (n < 0 || s < 0) throw std::invalid_argument("p_fast: indices must be non-negative");
  constexpr double kDirectConditionLimit = 1e4;
  constexpr double kCancellationFlag = 1e12;
  const DirectSum direct = direct_sum(n, s, x);
  PolyValue out = direct.condition <= kDirectConditionLimit ? direct.value : p_recurrence(n, s, x);
  out.condition = direct.condition;
  out.cancellation = direct.condition > kCancellationFlag;
  return out;
}

bool hypergeometric_identity_holds(long n, long m, bool odd, const mpq_class& x) {
  if (m < n) throw std::invalid_argument("hypergeometric_identity_holds: requires m >= n");
  const mpq_class z = -x * x;
  if (!odd) {
    const mpq_class lhs = p_exact(2 * n, m - n, x);
    mpq_class prefactor(factorial(2 * n), factorial(n) * factorial(m));
    prefactor.canonicalize();
    mpq_class rhs = prefactor * hyper_f<mpq_class>(n, m, mpq_class(1, 2), z);
    if (n % 2 != 0) rhs = -rhs;
    return lhs == rhs;
  }
  const mpq_class lhs = p_exact(2 * n + 1, m - n, x);
  mpq_class prefactor(factorial(2 * n + 1), factorial(n) * factorial(m));
  prefactor.canonicalize();
  mpq_class rhs = prefactor * 2 * x * hyper_f<mpq_class>(n, m, mpq_class(3, 2), z);
  if (n % 2 != 0) rhs = -rhs;
  return lhs == rhs;
}

double phase_integral(const PhaseSpec& spec, double abs_tol) {
  if (spec.lambda_hat <= 0.0) {
    if (spec.s == 0) return 0.0;
    throw std::invalid_argument("phase_integral: lambda_hat must be positive");
  }
  if (!std::isfinite(spec.t_max)) throw std::invalid_argument("phase_integral: t_max must be finite");
  const double ratio = static_cast<double>(spec.s) / spec.lambda_hat;
  const double t = std::fabs(spec.t_max);
  if (ratio >= 1.0 / std::cosh(t)) {
    std::ostringstream msg;
    msg << "phase_integral: turning point inside [0, " << t << "] for s/lambda = " << ratio;
    throw TurningPointError(msg.str());
  }
  if (t == 0.0) return 0.0;
  const double r2 = ratio * ratio;
  auto integrand = [r2](double tau) {
    const double sech = 1.0 / std::cosh(tau);
    return std::sqrt(std::max(0.0, sech * sech - r2));
  };
  const double tol = abs_tol / spec.lambda_hat;
  const double whole = gauss_legendre().integrate(integrand, 0.0, t);
  const double integral = adaptive(integrand, 0.0, t, whole, tol, 0);
  return std::copysign(spec.lambda_hat * integral, spec.t_max);
}

double AsymValue::envelope() const { return envelope_sign * std::exp(log_envelope); }

PhaseSpec asym_phase_spec(long n_full, long m_full, double x) {
  if (n_full < 0 || m_full < 0) throw std::invalid_argument("p_asym: indices must be non-negative");
  if ((n_full - m_full) % 2 != 0) throw std::invalid_argument("p_asym: indices must share parity");
  if (m_full < n_full) throw std::invalid_argument("p_asym: requires m >= n");
  const bool odd = n_full % 2 != 0;
  const long n = n_full / 2;
  const long m = m_full / 2;
  const double sum = static_cast<double>(n + m + (odd ? 1 : 0));
  PhaseSpec spec;
  spec.s = m - n;
  spec.lambda_hat = std::sqrt(sum * sum + sum);
  spec.t_max = std::asinh(x);
  const double ratio = spec.s == 0 ? 0.0 : static_cast<double>(spec.s) / spec.lambda_hat;
  if (!(ratio < 1.0 / std::sqrt(1.0 + x * x))) {
    std::ostringstream msg;
    msg << "p_asym: s/lambda = " << ratio << " outside the validity domain at x = " << x;
    throw std::domain_error(msg.str());
  }
  return spec;
}

AsymValue p_asym(long n_full, long m_full, double x) {
  AsymValue out;
  out.spec = asym_phase_spec(n_full, m_full, x);
  const bool odd = n_full % 2 != 0;
  const long n = n_full / 2;
  const long m = m_full / 2;
  const double ratio2 =
      out.spec.s == 0 ? 0.0 : std::pow(static_cast<double>(out.spec.s) / out.spec.lambda_hat, 2);
  const double one_x2 = 1.0 + x * x;
  const double inner = -0.25 * std::log(1.0 / one_x2 - ratio2);
  out.envelope_sign = n % 2 == 0 ? 1 : -1;
  out.phase = phase_integral(out.spec);
  if (!odd) {
    out.log_envelope = lfact(2 * n) - lfact(n) - lfact(m) + 0.5 * static_cast<double>(n + m) * std::log(one_x2) +
                       inner + 0.25 * std::log1p(-ratio2);
    out.trig = std::cos(out.phase);
  } else {
    out.log_envelope = lfact(2 * n + 1) - lfact(n) - lfact(m) +
                       0.5 * static_cast<double>(n + m + 1) * std::log(one_x2) + inner -
                       0.25 * std::log1p(-ratio2) + std::log(2.0 / out.spec.lambda_hat);
    out.trig = std::sin(out.phase);
  }
  return out;
}

double asym_normalized_residual(long n_full, long m_full, double x) {
  const AsymValue asym = p_asym(n_full, m_full, x);
  const PolyValue exact = p_fast(n_full, (m_full - n_full) / 2, x);
  const double scaled = exact.sign == 0 ? 0.0 : exact.sign * std::exp(exact.log_abs - asym.log_envelope);
  return std::fabs(scaled - asym.envelope_sign * asym.trig);
}

}  // namespace rabi

namespace rabi {

SignLog sign_log(const mpq_class& q) {
  SignLog out;
  if (q == 0) return out;
  out.sign = q > 0 ? 1 : -1;
  const mpf_class f(abs(q), 256);
  long exp2 = 0;
  const double mantissa = mpf_get_d_2exp(&exp2, f.get_mpf_t());
  out.log_abs = std::log(mantissa) + static_cast<double>(exp2) * std::log(2.0);
  return out;
}

double relative_difference(int sign_a, double log_a, int sign_b, double log_b) {
  if (sign_a == 0 && sign_b == 0) return 0.0;
  if (sign_a != sign_b) return 2.0;
  return std::fabs(std::expm1(log_a - log_b));
}

}  // namespace rabi
