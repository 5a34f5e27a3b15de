#include "rabi/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rabi/eigensolve.hpp"
#include "rabi/polys.hpp"

namespace rabi {

double v_tilde(long m, long n, const ModelParams& params, long max_index) {
  if (m < 0 || n < 0) throw std::invalid_argument("v_tilde: negative index");
  if (m > max_index || n > max_index) {
    std::ostringstream msg;
    msg << "v_tilde: index beyond the log-space range " << max_index;
    throw std::out_of_range(msg.str());
  }
  if ((m - n) % 2 != 0 || params.delta == 0.0) return 0.0;
  if (m < n) std::swap(m, n);
  const long s = (m - n) / 2;
  const PolyValue p = p_recurrence(n, s, params.omega / (2.0 * params.g));
  if (p.sign == 0) return 0.0;
  const double log_mag = std::log(0.5 * std::fabs(params.delta)) + 0.5 * std::log(params.omega) +
                         0.5 * static_cast<double>(m + n) * std::log(params.g) +
                         0.5 * (std::lgamma(m + 1.0) - std::lgamma(n + 1.0)) + p.log_abs;
  double sign = p.sign;
  if ((n / 2) % 2 != 0) sign = -sign;
  if (params.delta < 0.0) sign = -sign;
  return sign * std::exp(log_mag);
}

double v_tilde_from_squeeze(long m, long n, const ModelParams& params) {
  return spin_diagonal(params.delta, m) * u_element(m, n, 2.0 * params.lambda);
}

double v_tilde_diag_asym(long n, const ModelParams& params) {
  if (n < 1) throw std::invalid_argument("v_tilde_diag_asym: requires n >= 1");
  const double theta = params.a_phase * (static_cast<double>(n) + 0.5);
  // cos(theta - pi n / 2) with the quarter-turn reduced exactly.
  double c = 0.0;
  switch (n % 4) {
    case 0: c = std::cos(theta); break;
    case 1: c = std::sin(theta); break;
    case 2: c = -std::cos(theta); break;
    default: c = -std::sin(theta); break;
  }
  const double amplitude = 0.5 * params.delta * std::sqrt(params.omega / (M_PI * params.g * static_cast<double>(n)));
  const double sign = (n / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * amplitude * c;
}

namespace {

template <typename Weight>
SeriesEstimate row_series(long n, const ModelParams& params, long cutoff, Weight weight, const char* who) {
  if (n < 0) throw std::invalid_argument(std::string(who) + ": negative index");
  if (cutoff <= 2 * n) {
    std::ostringstream msg;
    msg << who << ": cutoff " << cutoff << " must exceed 2n = " << 2 * n;
    throw std::invalid_argument(msg.str());
  }
  SeriesEstimate out;
  out.cutoff = cutoff;
  for (long k = n % 2; k <= cutoff; k += 2) {
    const double v = v_tilde(k, n, params);
    out.row_mass += v * v;
    if (k != n) out.value += v * v * weight(n - k);
  }
  const double remaining = std::max(0.0, 0.25 * params.delta * params.delta - out.row_mass);
  // Every neglected k has |k - n| >= cutoff + 1 - n.
  out.tail_bound = remaining * std::fabs(weight(n - (cutoff + 1)));
  return out;
}

}  // namespace

SeriesEstimate second_order(long n, const ModelParams& params, long cutoff) {
  const double omega = params.omega;
  return row_series(n, params, cutoff, [omega](long d) { return 1.0 / (static_cast<double>(d) * omega); },
                    "second_order");
}

SeriesEstimate k_norm_sq(long n, const ModelParams& params, long cutoff) {
  const double omega2 = params.omega * params.omega;
  return row_series(
      n, params, cutoff, [omega2](long d) { return 1.0 / (static_cast<double>(d) * static_cast<double>(d) * omega2); },
      "k_norm_sq");
}

double delta_n(const SpectrumModel& model, long n, long m_cutoff) {
  const long first = model.first_index;
  if (n < first) throw std::invalid_argument("delta_n: level below the first index");
  if (m_cutoff <= n) throw std::invalid_argument("delta_n: cutoff must exceed n");
  const double mu_n = model.mu(n);
  const double upper_gap = model.mu(n + 1) - mu_n;
  double gap = upper_gap;
  if (n > first) gap = std::min(gap, mu_n - model.mu(n - 1));
  if (!(gap > 0.0)) {
    std::ostringstream msg;
    msg << "delta_n: degenerate gap at level " << n;
    throw DegenerateGapError(msg.str());
  }
  const double r_n = 0.5 * gap;
  long double sum = 0.0L;
  for (long m = first; m <= m_cutoff; ++m) {
    const double norm = model.row_norm(m);
    const double denom = m <= n ? model.mu(m) - mu_n + r_n : model.mu(m) - mu_n - r_n;
    sum += static_cast<long double>(norm) * norm / (static_cast<long double>(denom) * denom);
  }
  return static_cast<double>(std::sqrt(sum));
}

AsymptoticBreakdown three_term(long n, const ModelParams& params, Branch branch) {
  AsymptoticBreakdown out;
  out.n = n;
  out.linear = static_cast<double>(n) * params.omega;
  out.shift = 0.5 * (params.omega - 1.0);
  out.oscillatory = branch_sign(branch) * v_tilde_diag_asym(n, params);
  out.three_term = out.linear + out.shift + out.oscillatory;
  return out;
}

ResidualStudy residual_study(const ModelParams& params, Branch branch, long n_min, long n_max, double tol) {
  if (n_min < 10) throw std::invalid_argument("residual_study: n_min must be at least 10");
  if (n_max < n_min) throw std::invalid_argument("residual_study: n_max < n_min");

  ResidualStudy study;
  std::vector<double> levels[2];
  for (int parity = 0; parity < 2; ++parity) {
    const long top = (n_max % 2 == parity) ? n_max : n_max - 1;
    if (top < n_min) continue;
    const ChainSelector chain{branch, parity == 0 ? Parity::Even : Parity::Odd};
    const Spectrum spectrum = converged_levels(params, chain, static_cast<std::size_t>(top / 2 + 1), tol);
    levels[parity] = spectrum.values;
    (parity == 0 ? study.even_truncation_dim : study.odd_truncation_dim) = spectrum.truncation_dim;
  }

  for (long n = n_min; n <= n_max; ++n) {
    AsymptoticBreakdown row = three_term(n, params, branch);
    row.numeric = levels[n % 2][static_cast<std::size_t>(n / 2)];
    row.residual = row.numeric - row.three_term;
    const double nd = static_cast<double>(n);
    study.res_n_over_logn.push_back(row.residual * nd / std::log(nd));
    study.res_n.push_back(row.residual * nd);
    study.rows.push_back(row);
  }
  return study;
}

}  // namespace rabi
