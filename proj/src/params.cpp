#include "rabi/params.hpp"

#include <cmath>
#include <sstream>

namespace rabi {

double squeeze_gamma(double lambda) { return 0.5 * std::tanh(2.0 * lambda); }

double squeeze_beta(double lambda) {
  // -ln cosh(u) = u - ln2 - log1p(exp(-2u)) for u >= 0, exact symmetric in u.
  const double u = std::fabs(2.0 * lambda);
  return -(u - std::log(2.0) + std::log1p(std::exp(-2.0 * u)));
}

ModelParams derive_params(double g, double delta) {
  if (!(g > 0.0 && g < 0.5)) {
    std::ostringstream msg;
    msg << "coupling g = " << g << " outside the discrete-spectrum domain (0, 1/2)";
    throw DomainError(msg.str());
  }
  ModelParams p;
  p.g = g;
  p.delta = delta;
  p.omega = std::sqrt((1.0 - 2.0 * g) * (1.0 + 2.0 * g));
  // artanh(2g) = log1p(4g / (1 - 2g)) / 2
  p.lambda = 0.125 * std::log1p(4.0 * g / (1.0 - 2.0 * g));
  p.gamma = squeeze_gamma(p.lambda);
  p.beta = squeeze_beta(p.lambda);
  p.a_phase = std::atan2(p.omega, 2.0 * g);
  return p;
}

double oscillator_energy(const ModelParams& params, long n) {
  return params.omega * (static_cast<double>(n) + 0.5) - 0.5;
}

}  // namespace rabi
