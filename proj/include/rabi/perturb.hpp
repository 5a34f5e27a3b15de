#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rabi/matrices.hpp"
#include "rabi/params.hpp"
#include "rabi/squeeze.hpp"

namespace rabi {

/// Element (m, n) of the squeezed perturbation U^T V U in the eigenbasis of the
/// squeezed oscillator, from the polynomial closed form. Symmetric; zero across parities.
double v_tilde(long m, long n, const ModelParams& params, long max_index = kMaxLogSpaceIndex);

/// Same element through the squeeze-operator route V_mm U_mn(2 lambda), from u_element.
double v_tilde_from_squeeze(long m, long n, const ModelParams& params);

/// Leading large-n term of the diagonal element v_tilde(n, n).
double v_tilde_diag_asym(long n, const ModelParams& params);

/// Truncated infinite series with a bound on the neglected tail derived from the
/// row-norm identity sum_k v_tilde(k, n)^2 = delta^2 / 4.
struct SeriesEstimate {
  double value = 0.0;
  double tail_bound = 0.0;
  double row_mass = 0.0;  ///< sum_{k <= cutoff} v_tilde(k, n)^2
  long cutoff = 0;
};

/// Second-order correction sum_{k != n} v_tilde(n,k)^2 / ((n - k) omega), in energy units.
SeriesEstimate second_order(long n, const ModelParams& params, long cutoff);

/// ||K e_n||^2 = sum_{k != n} v_tilde(k,n)^2 / (omega^2 (k - n)^2), in the unit-spacing scaling.
SeriesEstimate k_norm_sq(long n, const ModelParams& params, long cutoff);

class DegenerateGapError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Unperturbed spectrum mu_m (strictly increasing) and perturbation row norms ||R e_m||,
/// both indexed from `first_index`.
struct SpectrumModel {
  std::function<double(long)> mu;
  std::function<double(long)> row_norm;
  long first_index = 1;
};

/// Delta_n = sqrt(sum_m ||R e_m||^2 / ||(D - mu_n - r_n E_n) e_m||^2), summed up to m_cutoff.
double delta_n(const SpectrumModel& model, long n, long m_cutoff);

/// Per-level decomposition of the three-term asymptotic formula.
struct AsymptoticBreakdown {
  long n = 0;
  double linear = 0.0;       ///< n omega
  double shift = 0.0;        ///< (omega - 1) / 2
  double oscillatory = 0.0;  ///< branch sign times v_tilde_diag_asym(n)
  double three_term = 0.0;   ///< linear + shift + oscillatory
  double numeric = 0.0;      ///< certified eigenvalue (residual studies only)
  double residual = 0.0;     ///< numeric - three_term
};

AsymptoticBreakdown three_term(long n, const ModelParams& params, Branch branch);

struct ResidualStudy {
  std::vector<AsymptoticBreakdown> rows;
  std::vector<double> res_n_over_logn;  ///< residual * n / ln n
  std::vector<double> res_n;            ///< residual * n
  std::size_t even_truncation_dim = 0;
  std::size_t odd_truncation_dim = 0;
};

/// Certified eigenvalues of both parity chains of a branch compared with the three-term
/// formula for Fock indices n_min..n_max. Level n is the floor(n/2)-th eigenvalue of its chain.
ResidualStudy residual_study(const ModelParams& params, Branch branch, long n_min, long n_max, double tol);

}  // namespace rabi
