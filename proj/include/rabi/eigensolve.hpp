#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rabi/dense.hpp"
#include "rabi/matrices.hpp"
#include "rabi/params.hpp"

namespace rabi {

/// Thrown when the truncation-doubling protocol exceeds its dimension cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ascending eigenvalues. The lowest `trusted_count` are certified stable under
/// doubling of the truncation dimension `truncation_dim`.
struct Spectrum {
  std::vector<double> values;
  std::size_t trusted_count = 0;
  std::size_t truncation_dim = 0;
  double tol = 0.0;
};

/// Number of eigenvalues strictly below x (Sturm sequence / LDL^T inertia).
std::size_t sturm_count(const SymTriMatrix& t, double x);

/// Gershgorin interval [lo, hi] containing the whole spectrum.
std::pair<double, double> gershgorin_bounds(const SymTriMatrix& t);

/// All eigenvalues by bisection, each bracketed to width <= tol.
Spectrum eigenvalues_bisection(const SymTriMatrix& t, double tol);
/// The lowest `count` eigenvalues by bisection.
Spectrum eigenvalues_bisection(const SymTriMatrix& t, double tol, std::size_t count);

/// Cyclic Jacobi rotations on a dense symmetric matrix (dimension <= 512).
/// Iterates until the off-diagonal Frobenius mass drops below tol.
Spectrum eigenvalues_jacobi(const DenseMatrix& a, double tol);

struct ConvergenceOptions {
  std::size_t max_dim = std::size_t{1} << 20;
  std::size_t min_dim = 64;
};

/// Lowest `level_count` eigenvalues of a parity chain, doubling the chain dimension
/// until successive truncations agree to `tol`.
Spectrum converged_levels(const ModelParams& params, ChainSelector chain, std::size_t level_count,
                          double tol, const ConvergenceOptions& options = {});

}  // namespace rabi
