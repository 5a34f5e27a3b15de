#pragma once

#include <cstddef>
#include <vector>

namespace rabi {

/// Square row-major matrix used by the oracle-scale computations (dimension <= 512).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

  static DenseMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  DenseMatrix transposed() const;
  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator*=(double factor);

  /// Largest absolute entry over rows and columns [0, block).
  double max_abs(std::size_t block) const;
  /// Maximum-row-sum norm.
  double norm_inf() const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);

/// Largest |a_ij - b_ij| over the leading block x block corner.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b, std::size_t block);

}  // namespace rabi
