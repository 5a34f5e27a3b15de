#pragma once

#include <stdexcept>
#include <string>

namespace rabi {

/// Raised when a coupling falls outside the discrete-spectrum regime 0 < g < 1/2.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Couplings of the two-photon Rabi Hamiltonian together with every derived
/// constant of the squeeze transformation that diagonalizes its oscillator part.
struct ModelParams {
  double g = 0.0;        ///< two-photon coupling, 0 < g < 1/2
  double delta = 0.0;    ///< transition frequency of the two-level system
  double omega = 1.0;    ///< sqrt(1 - 4 g^2), level spacing of the squeezed oscillator
  double lambda = 0.0;   ///< squeeze parameter, tanh(4 lambda) = 2 g
  double gamma = 0.0;    ///< tanh(2 lambda) / 2
  double beta = 0.0;     ///< -ln cosh(2 lambda)
  double a_phase = 0.0;  ///< arctan(omega / (2 g)), frequency of the level oscillation
};

/// Normal-ordering coefficient gamma(lambda) = tanh(2 lambda) / 2.
double squeeze_gamma(double lambda);
/// Normal-ordering exponent beta(lambda) = -ln cosh(2 lambda).
double squeeze_beta(double lambda);

/// Builds ModelParams for a coupling g in (0, 1/2); throws DomainError otherwise.
ModelParams derive_params(double g, double delta);

/// Unperturbed energy omega (n + 1/2) - 1/2 of the squeezed oscillator.
double oscillator_energy(const ModelParams& params, long n);

}  // namespace rabi
