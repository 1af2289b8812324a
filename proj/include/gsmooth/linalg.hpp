#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace gsmooth {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  double trace() const;
  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
double determinant(const Matrix& a);

/// Outcome of orthonormalizing a list of vectors.
struct OrthonormalBasis {
  Matrix basis;                        // one orthonormal row per kept input
  std::vector<std::size_t> dependent;  // input indices dropped as dependent
};

/// Modified Gram-Schmidt with one re-orthogonalization pass. Rows whose
/// projection residual falls below `tolerance` times their norm are reported
/// in `dependent` and left out of the basis.
OrthonormalBasis gram_schmidt(std::span<const std::vector<double>> vectors, double tolerance = 1e-12);

}  // namespace gsmooth
