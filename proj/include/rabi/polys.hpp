#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>

namespace rabi {

/// Thrown when the phase integrand would turn imaginary inside the integration range.
class TurningPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Largest degree accepted by the exact rational evaluator.
inline constexpr long kExactDegreeGuard = 400;

/// P_n^{(s)}(x) = sum_k (-1)^k n! (2x)^{n-2k} / (k! (n-2k)! (s+k)!) in exact rational arithmetic.
mpq_class p_exact(long n, long s, const mpq_class& x);

/// Floating evaluation of P_n^{(s)}(x) with sign and log-magnitude kept separately so
/// that values far outside the double range remain usable.
struct PolyValue {
  double value = 0.0;     ///< sign * exp(log_abs); may be +-inf when out of range
  int sign = 0;           ///< -1, 0 or +1
  double log_abs = -INFINITY;
  double condition = 1.0;     ///< sum |terms| / |sum| of the explicit alternating sum
  bool cancellation = false;  ///< condition > 1e12: the explicit sum alone would be unreliable
  bool used_recurrence = false;
};

/// Explicit alternating sum when it is well conditioned, otherwise the three-term recurrence
/// (n + 2s + 1) P_{n+1} = 2x (2n + 2s + 1) P_n - 4 (1 + x^2) n P_{n-1}.
PolyValue p_fast(long n, long s, double x);

/// The recurrence path of p_fast alone (no conditioning estimate).
PolyValue p_recurrence(long n, long s, double x);

/// Terminating Gauss hypergeometric F(-n, -m; c; z) as a finite sum. n, m >= 0.
template <typename T>
T hyper_f(long n, long m, const T& c, const T& z) {
  if (n < 0 || m < 0) throw std::invalid_argument("hyper_f: only the terminating case F(-n, -m; c; z) is supported");
  T term = 1;
  T sum = 1;
  const long kmax = n < m ? n : m;
  for (long k = 0; k < kmax; ++k) {
    term *= T(k - n) * T(k - m);
    term /= (c + T(k)) * T(k + 1);
    term *= z;
    sum += term;
  }
  return sum;
}

/// Checks P_{2n}^{(m-n)}(x) = (-1)^n (2n)!/(n! m!) F(-n,-m;1/2;-x^2) (even) or
/// P_{2n+1}^{(m-n)}(x) = (-1)^n (2n+1)!/(n! m!) 2x F(-n,-m;3/2;-x^2) (odd), exactly. Requires m >= n.
bool hypergeometric_identity_holds(long n, long m, bool odd, const mpq_class& x);

/// Parameters of the Liouville phase y = lambda_hat * int_0^t_max sqrt(1/ch^2 tau - s^2/lambda_hat^2) dtau.
struct PhaseSpec {
  long s = 0;
  double lambda_hat = 0.0;
  double t_max = 0.0;
};

/// Adaptive Gauss-Legendre evaluation of the phase to absolute accuracy `abs_tol`.
double phase_integral(const PhaseSpec& spec, double abs_tol = 1e-12);

/// Leading-order asymptotic form of P_{n_full}^{((m_full-n_full)/2)}(x) for large indices of equal
/// parity: envelope (sign and log-magnitude) times cos y (even) or sin y (odd).
struct AsymValue {
  int envelope_sign = 1;
  double log_envelope = 0.0;
  double trig = 0.0;   ///< cos y or sin y
  double phase = 0.0;  ///< y
  PhaseSpec spec;

  double envelope() const;
  double value() const { return envelope() * trig; }
};

/// Phase specification and validity check for the asymptotic forms.
PhaseSpec asym_phase_spec(long n_full, long m_full, double x);

AsymValue p_asym(long n_full, long m_full, double x);

/// |P / envelope - sign * trig|: the asymptotic remainder normalized by the envelope.
double asym_normalized_residual(long n_full, long m_full, double x);

}  // namespace rabi

namespace rabi {

/// Sign and natural log of |q| for an exact rational, valid far outside the double range.
struct SignLog {
  int sign = 0;
  double log_abs = -INFINITY;
};
SignLog sign_log(const mpq_class& q);

/// Relative difference |a/b - 1| of two sign/log-magnitude values (2 when signs differ).
double relative_difference(int sign_a, double log_a, int sign_b, double log_b);

}  // namespace rabi
