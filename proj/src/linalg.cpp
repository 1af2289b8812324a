#include "gsmooth/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "gsmooth/kernels.hpp"

namespace gsmooth {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double Matrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      kernels::axpy(a(i, k), b.row(k), out.row(i));
    }
  }
  return out;
}

double determinant(const Matrix& a) {
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      a.data().data(), static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  return m.determinant();
}

OrthonormalBasis gram_schmidt(std::span<const std::vector<double>> vectors, double tolerance) {
  const std::size_t d = vectors.empty() ? 0 : vectors.front().size();
  std::vector<std::vector<double>> kept;
  OrthonormalBasis result;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    std::vector<double> v = vectors[i];
    const double norm = std::sqrt(kernels::sum_squares(v));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : kept) kernels::axpy(-kernels::dot(q, v), q, v);
    }
    const double residual = std::sqrt(kernels::sum_squares(v));
    if (norm == 0.0 || !(residual >= tolerance * norm)) {
      result.dependent.push_back(i);
      continue;
    }
    kernels::scale(1.0 / residual, v);
    kept.push_back(std::move(v));
  }
  result.basis = Matrix(kept.size(), d);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    std::copy(kept[i].begin(), kept[i].end(), result.basis.row(i).begin());
  }
  return result;
}

}  // namespace gsmooth
