#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "rabi/matrices.hpp"
#include "rabi/params.hpp"

using namespace rabi;

namespace {

// Solves tanh(4 lambda) = 2g by bisection in long double.
long double lambda_by_root_finding(long double g) {
  long double lo = 0.0L;
  long double hi = 10.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (std::tanh(4.0L * mid) < 2.0L * g ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

TEST_CASE("derived parameters satisfy their defining relations") {
  for (double g : {1e-6, 0.01, 0.1, 0.2, 0.3, 0.4, 0.45, 0.49, 0.4999}) {
    CAPTURE(g);
    const ModelParams p = derive_params(g, 1.3);
    CHECK(std::fabs(p.omega * p.omega + 4.0 * g * g - 1.0) <= 4.0 * kEps);
    CHECK(std::fabs(std::tanh(4.0 * p.lambda) - 2.0 * g) <= 8.0 * kEps);
    CHECK(std::fabs(squeeze_gamma(2.0 * p.lambda) - g) <= 8.0 * kEps);
    CHECK(std::fabs(std::exp(squeeze_beta(2.0 * p.lambda)) - p.omega) <= 8.0 * kEps * std::max(1.0, 1.0 / p.omega));
    CHECK(p.gamma == doctest::Approx(0.5 * std::tanh(2.0 * p.lambda)).epsilon(1e-15));
    CHECK(p.beta == doctest::Approx(-std::log(std::cosh(2.0 * p.lambda))).epsilon(1e-13));
    CHECK(p.a_phase == doctest::Approx(std::atan(p.omega / (2.0 * g))).epsilon(1e-15));
    CHECK(p.delta == 1.3);
  }
}

TEST_CASE("lambda agrees with a root-finding oracle") {
  for (double g : {1e-8, 1e-3, 0.05, 0.2, 0.35, 0.45, 0.499}) {
    CAPTURE(g);
    const long double ref = lambda_by_root_finding(g);
    CHECK(std::fabs(derive_params(g, 0.0).lambda - static_cast<double>(ref)) <= 4.0 * kEps * static_cast<double>(ref) + 1e-300);
  }
}

TEST_CASE("couplings outside (0, 1/2) are rejected") {
  for (double g : {0.0, -0.1, 0.5, 0.7, std::nan("")}) {
    CAPTURE(g);
    CHECK_THROWS_AS(derive_params(g, 1.0), DomainError);
  }
  try {
    derive_params(0.5, 1.0);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("(0, 1/2)") != std::string::npos);
  }
}

TEST_CASE("oscillator energies") {
  const ModelParams p = derive_params(0.2, 0.0);
  CHECK(oscillator_energy(p, 0) == doctest::Approx(0.5 * p.omega - 0.5));
  CHECK(oscillator_energy(p, 10) - oscillator_energy(p, 9) == doctest::Approx(p.omega));
}

TEST_CASE("chain matrices") {
  const ModelParams p = derive_params(0.3, 0.8);
  SUBCASE("spin diagonal takes four distinct values across branches") {
    std::set<double> values;
    for (long n = 0; n < 16; ++n)
      for (double sign : {1.0, -1.0}) values.insert(sign * spin_diagonal(p.delta, n));
    CHECK(values.size() == 2);  // +-delta/2; with the oscillator part the diagonal pattern has period four
    CHECK(spin_diagonal(p.delta, 0) == 0.4);
    CHECK(spin_diagonal(p.delta, 1) == 0.4);
    CHECK(spin_diagonal(p.delta, 2) == -0.4);
    CHECK(spin_diagonal(p.delta, 3) == -0.4);
  }
  SUBCASE("branch negation and shared off-diagonals") {
    for (Parity parity : {Parity::Even, Parity::Odd}) {
      const SymTriMatrix plus = build_chain(p, {Branch::Plus, parity}, 40);
      const SymTriMatrix minus = build_chain(p, {Branch::Minus, parity}, 40);
      const SymTriMatrix bare = build_chain(derive_params(0.3, 0.0), {Branch::Plus, parity}, 40);
      for (std::size_t k = 0; k < 40; ++k) CHECK(plus.diag[k] + minus.diag[k] == 2.0 * bare.diag[k]);
      CHECK(plus.off == minus.off);
      CHECK(plus.off == bare.off);
      for (std::size_t k = 0; k + 1 < 40; ++k) {
        const double n = 2.0 * k + parity_offset(parity);
        CHECK(plus.off[k] == doctest::Approx(0.3 * std::sqrt((n + 1) * (n + 2))));
      }
    }
  }
  SUBCASE("dimension guards") {
    CHECK_THROWS_AS(build_chain(p, {}, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_full_branch(p, Branch::Plus, 3), std::invalid_argument);
  }
  SUBCASE("fock index mapping") {
    CHECK(ChainSelector{Branch::Plus, Parity::Even}.fock_index(3) == 6);
    CHECK(ChainSelector{Branch::Minus, Parity::Odd}.fock_index(3) == 7);
    CHECK(to_string(Branch::Minus) == "minus");
    CHECK(to_string(Parity::Odd) == "odd");
  }
}
