#include "rabi/dense.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace rabi {

DenseMatrix DenseMatrix::identity(std::size_t dim) {
  DenseMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  assert(other.dim_ == dim_);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double factor) {
  for (double& v : data_) v *= factor;
  return *this;
}

double DenseMatrix::max_abs(std::size_t block) const {
  block = std::min(block, dim_);
  double m = 0.0;
  for (std::size_t i = 0; i < block; ++i)
    for (std::size_t j = 0; j < block; ++j) m = std::max(m, std::fabs((*this)(i, j)));
  return m;
}

double DenseMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) row += std::fabs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  assert(a.dim() == b.dim());
  const std::size_t n = a.dim();
  DenseMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c = a;
  DenseMatrix neg = b;
  neg *= -1.0;
  c += neg;
  return c;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b, std::size_t block) {
  block = std::min({block, a.dim(), b.dim()});
  double m = 0.0;
  for (std::size_t i = 0; i < block; ++i)
    for (std::size_t j = 0; j < block; ++j) m = std::max(m, std::fabs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace rabi
