#include "rabi/matrices.hpp"

#include <cmath>
#include <stdexcept>

namespace rabi {

std::string_view to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }
std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

double spin_diagonal(double delta, long n) {
  return ((n / 2) % 2 == 0 ? 0.5 : -0.5) * delta;
}

DenseMatrix SymTriMatrix::to_dense() const {
  DenseMatrix m(dim());
  for (std::size_t i = 0; i < dim(); ++i) m(i, i) = diag[i];
  for (std::size_t i = 0; i < off.size(); ++i) {
    m(i, i + 1) = off[i];
    m(i + 1, i) = off[i];
  }
  return m;
}

DenseMatrix BandedMatrix::to_dense() const {
  DenseMatrix m(dim());
  for (std::size_t i = 0; i < dim(); ++i) m(i, i) = diag[i];
  for (std::size_t i = 0; i < band2.size(); ++i) {
    m(i, i + 2) = band2[i];
    m(i + 2, i) = band2[i];
  }
  return m;
}

SymTriMatrix build_chain(const ModelParams& params, ChainSelector chain, std::size_t n_dim) {
  if (n_dim < 2) throw std::invalid_argument("build_chain: dimension must be at least 2");
  const double sigma = branch_sign(chain.branch);
  SymTriMatrix t;
  t.diag.resize(n_dim);
  t.off.resize(n_dim - 1);
  for (std::size_t k = 0; k < n_dim; ++k) {
    const long n = chain.fock_index(k);
    t.diag[k] = static_cast<double>(n) + sigma * spin_diagonal(params.delta, n);
    if (k + 1 < n_dim) {
      const double nd = static_cast<double>(n);
      t.off[k] = params.g * std::sqrt((nd + 1.0) * (nd + 2.0));
    }
  }
  return t;
}

BandedMatrix build_full_branch(const ModelParams& params, Branch branch, std::size_t n_dim) {
  if (n_dim < 4) throw std::invalid_argument("build_full_branch: dimension must be at least 4");
  const double sigma = branch_sign(branch);
  BandedMatrix m;
  m.diag.resize(n_dim);
  m.band2.resize(n_dim - 2);
  for (std::size_t n = 0; n < n_dim; ++n) {
    const long fock = static_cast<long>(n);
    m.diag[n] = static_cast<double>(n) + sigma * spin_diagonal(params.delta, fock);
    if (n + 2 < n_dim) {
      const double nd = static_cast<double>(n);
      m.band2[n] = params.g * std::sqrt((nd + 1.0) * (nd + 2.0));
    }
  }
  return m;
}

}  // namespace rabi
