#pragma once

#include <cstddef>

#include "rabi/dense.hpp"

namespace rabi {

/// Default largest Fock index accepted by the log-space element evaluators.
inline constexpr long kMaxLogSpaceIndex = 100000;

/// Matrix element (U e_n, e_m) of the squeeze operator U(lambda) = exp(lambda (a^2 - a+^2)),
/// evaluated from the normal-ordered closed form in log-magnitude/sign arithmetic.
/// Zero unless m and n share parity.
double u_element(long m, long n, double lambda, long max_index = kMaxLogSpaceIndex);

/// Truncated generator a^2 - a+^2: +sqrt((n+1)(n+2)) at (n, n+2), the negative at (n+2, n).
DenseMatrix squeeze_generator(std::size_t n_dim);

/// exp(lambda (a^2 - a+^2)) on the n_dim-dimensional truncation by scaling and squaring.
/// Only the leading n_dim/4 block is free of truncation pollution.
DenseMatrix u_matrix_oracle(std::size_t n_dim, double lambda);

/// Leading block on which truncated operator products are asserted.
inline constexpr std::size_t certified_block(std::size_t n_dim) { return n_dim / 4; }

/// Max |e^{-gamma a+^2} e^{beta(a+a + 1/2)} e^{gamma a^2} - exp(lambda(a^2 - a+^2))| over the
/// certified block.
double factorization_residual(std::size_t n_dim, double lambda);

/// Max |(U^T H0 U)_{mn} - delta_mn E_n| over the certified block, with H0 = a+a + g(a^2 + a+^2),
/// U the exponential oracle at tanh(4 lambda) = 2 g and E_n = omega (n + 1/2) - 1/2.
double h0_transform_residual(std::size_t n_dim, double g);

/// Max |U V U - V| over the certified block, with V = (delta/2) diag((-1)^floor(k/2)).
double uvu_residual(std::size_t n_dim, double lambda, double delta);

}  // namespace rabi
