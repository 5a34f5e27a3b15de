#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "rabi/dense.hpp"
#include "rabi/params.hpp"

namespace rabi {

/// Branch of the spin-parity decomposition: Plus carries +V on the diagonal, Minus carries -V.
enum class Branch { Plus, Minus };
/// Parity of the Fock indices spanned by a chain.
enum class Parity { Even, Odd };

inline constexpr double branch_sign(Branch b) { return b == Branch::Plus ? 1.0 : -1.0; }
inline constexpr int parity_offset(Parity p) { return p == Parity::Even ? 0 : 1; }

/// One of the four decoupled invariant chains of the Hamiltonian.
struct ChainSelector {
  Branch branch = Branch::Plus;
  Parity parity = Parity::Even;

  /// Fock index of chain position k.
  long fock_index(std::size_t k) const { return 2 * static_cast<long>(k) + parity_offset(parity); }

  friend bool operator==(const ChainSelector&, const ChainSelector&) = default;
};

std::string_view to_string(Branch b);
std::string_view to_string(Parity p);

/// Symmetric tridiagonal matrix: `diag` of length N, `off` of length N - 1.
struct SymTriMatrix {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t dim() const { return diag.size(); }
  DenseMatrix to_dense() const;
};

/// Symmetric matrix with nonzero entries only on the main and the second off-diagonals.
struct BandedMatrix {
  std::vector<double> diag;   ///< length N
  std::vector<double> band2;  ///< entry (n, n + 2), length N - 2

  std::size_t dim() const { return diag.size(); }
  DenseMatrix to_dense() const;
};

/// Spin-dependent diagonal (delta/2)(-1)^floor(n/2) of the Plus branch at Fock index n.
double spin_diagonal(double delta, long n);

/// Tridiagonal restriction of H0 + V to one parity chain, truncated to n_dim chain states
/// (Fock indices up to 2 n_dim - 2 for Even, 2 n_dim - 1 for Odd).
SymTriMatrix build_chain(const ModelParams& params, ChainSelector chain, std::size_t n_dim);

/// Full branch Hamiltonian on Fock states 0..n_dim-1; kept as the parity-split oracle.
BandedMatrix build_full_branch(const ModelParams& params, Branch branch, std::size_t n_dim);

}  // namespace rabi
