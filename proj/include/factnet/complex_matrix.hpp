#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace factnet {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<cplx>& data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  ComplexMatrix scaled(cplx factor) const;

  /// Largest entry magnitude; zero for empty matrices.
  double max_abs() const;

  /// Entry-wise max |a-b|; matrices must have equal shape.
  double max_abs_diff(const ComplexMatrix& rhs) const;

  bool same_shape(const ComplexMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Result of a hermitian eigendecomposition: A = V diag(values) V†,
/// eigenvalues ascending, eigenvectors as the columns of `vectors`.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// Cyclic Jacobi diagonalisation for hermitian matrices. Eigenvectors carry a
/// deterministic phase: the entry of largest modulus (lowest index on ties)
/// is real positive.
HermitianEigen hermitian_eigen(const ComplexMatrix& a);

/// Singular values of a general matrix, descending.
std::vector<double> singular_values(const ComplexMatrix& a);

/// Number of singular values above `tol` times the largest one.
std::size_t rank(const ComplexMatrix& a, double tol);

}  // namespace factnet
