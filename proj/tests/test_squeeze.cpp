#include <doctest.h>

#include <cmath>
#include <vector>

#include "rabi/params.hpp"
#include "rabi/squeeze.hpp"

using namespace rabi;

namespace {

// Column n of exp(lambda A) by RK4 on d psi / d lambda = A psi in long double.
std::vector<long double> propagate_column(std::size_t dim, long n, double lambda, int steps) {
  std::vector<long double> psi(dim, 0.0L);
  psi[n] = 1.0L;
  auto apply = [dim](const std::vector<long double>& v) {
    std::vector<long double> out(dim, 0.0L);
    for (std::size_t k = 0; k + 2 < dim; ++k) {
      const long double c = std::sqrt((k + 1.0L) * (k + 2.0L));
      out[k] += c * v[k + 2];
      out[k + 2] -= c * v[k];
    }
    return out;
  };
  const long double h = static_cast<long double>(lambda) / steps;
  for (int s = 0; s < steps; ++s) {
    auto axpy = [&](const std::vector<long double>& k, long double a) {
      std::vector<long double> r(psi);
      for (std::size_t i = 0; i < dim; ++i) r[i] += a * k[i];
      return r;
    };
    const auto k1 = apply(psi);
    const auto k2 = apply(axpy(k1, h / 2));
    const auto k3 = apply(axpy(k2, h / 2));
    const auto k4 = apply(axpy(k3, h));
    for (std::size_t i = 0; i < dim; ++i) psi[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return psi;
}

}  // namespace

TEST_CASE("closed-form elements match an RK4 propagation oracle") {
  const double lambda = derive_params(0.3, 1.0).lambda;
  for (long n : {0L, 1L, 6L, 17L, 30L}) {
    const auto column = propagate_column(200, n, lambda, 4000);
    for (long m = 0; m < 40; ++m) {
      CAPTURE(m);
      CAPTURE(n);
      CHECK(std::fabs(u_element(m, n, lambda) - static_cast<double>(column[m])) < 1e-10);
    }
  }
}

TEST_CASE("small elements in closed form") {
  const double lambda = 0.21;
  const double c = std::cosh(2.0 * lambda);
  // <0|U|0> = 1/sqrt(cosh 2lambda), <2|U|0> = -tanh(2lambda)/sqrt(2 cosh 2lambda)
  CHECK(u_element(0, 0, lambda) == doctest::Approx(1.0 / std::sqrt(c)).epsilon(1e-14));
  CHECK(u_element(2, 0, lambda) == doctest::Approx(-std::tanh(2.0 * lambda) / std::sqrt(2.0 * c)).epsilon(1e-14));
  CHECK(u_element(1, 1, lambda) == doctest::Approx(std::pow(c, -1.5)).epsilon(1e-14));
  const DenseMatrix oracle = u_matrix_oracle(256, lambda);
  CHECK(std::fabs(u_element(2, 0, lambda) - oracle(2, 0)) < 1e-12);
}

TEST_CASE("parity sparsity, antisymmetry and identity at lambda = 0") {
  const double lambda = derive_params(0.35, 1.0).lambda;
  for (long m = 0; m < 120; ++m)
    for (long n = 0; n < 120; ++n) {
      if ((m - n) % 2 != 0) {
        CHECK(u_element(m, n, lambda) == 0.0);
        continue;
      }
      const double a = u_element(m, n, lambda);
      const double b = u_element(n, m, lambda);
      const double sign = ((n - m) / 2) % 2 == 0 ? 1.0 : -1.0;
      CHECK(std::fabs(a - sign * b) <= 1e-13 * std::max(std::fabs(a), 1e-300));
      CHECK(u_element(m, n, 0.0) == (m == n ? 1.0 : 0.0));
    }
}

TEST_CASE("large indices stay finite") {
  const double lambda = derive_params(0.2, 1.0).lambda;
  for (long n : {1000L, 5000L, 20000L}) {
    CHECK(std::isfinite(u_element(n, n, lambda)));
    CHECK(std::isfinite(u_element(n + 40, n, lambda)));
  }
  CHECK_THROWS_AS(u_element(kMaxLogSpaceIndex + 2, 0, lambda), std::out_of_range);
}

TEST_CASE("oracle orthogonality and group property on the certified block") {
  const double l1 = 0.07;
  const double l2 = 0.11;
  const DenseMatrix a = u_matrix_oracle(256, l1);
  const DenseMatrix b = u_matrix_oracle(256, l2);
  const DenseMatrix ab = u_matrix_oracle(256, l1 + l2);
  CHECK(max_abs_diff(a.transposed() * a, DenseMatrix::identity(256), 64) < 1e-9);
  CHECK(max_abs_diff(a * b, ab, 64) < 1e-9);
  CHECK(max_abs_diff(u_matrix_oracle(64, 0.0), DenseMatrix::identity(64), 64) == 0.0);
  const DenseMatrix gen = squeeze_generator(32);
  DenseMatrix sum = gen;
  sum += gen.transposed();
  CHECK(sum.max_abs(32) == 0.0);
}

TEST_CASE("residual operations") {
  for (double g : {0.1, 0.2, 0.3}) {
    const ModelParams p = derive_params(g, 1.0);
    CHECK(factorization_residual(256, p.lambda) < 1e-9);
    CHECK(h0_transform_residual(256, g) < 1e-8);
    CHECK(uvu_residual(256, p.lambda, 1.0) < 1e-9);
  }
  CHECK(h0_transform_residual(256, 0.4) < 1e-6);
  CHECK(h0_transform_residual(64, 1e-9) < 1e-12);
  CHECK(factorization_residual(128, 0.0) == 0.0);
  CHECK(uvu_residual(128, 0.0, 1.0) == 0.0);
  CHECK(uvu_residual(128, 0.2, 0.0) == 0.0);
  CHECK_THROWS(u_matrix_oracle(513, 0.1));
  CHECK_THROWS(factorization_residual(1024, 0.1));
  CHECK(certified_block(256) == 64);
}
