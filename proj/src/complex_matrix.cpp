#include "factnet/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "factnet/errors.hpp"

namespace factnet {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_)
    raise(errc::shape_mismatch, "matrix product: " + std::to_string(rows_) + "x" +
                                    std::to_string(cols_) + " times " +
                                    std::to_string(rhs.rows_) + "x" +
                                    std::to_string(rhs.cols_));
  ComplexMatrix m(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const cplx aik = (*this)(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) m(i, j) += aik * rhs(k, j);
    }
  }
  return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
  if (!same_shape(rhs)) raise(errc::shape_mismatch, "matrix sum shape mismatch");
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + rhs.data_[i];
  return m;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  if (!same_shape(rhs)) raise(errc::shape_mismatch, "matrix difference shape mismatch");
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - rhs.data_[i];
  return m;
}

ComplexMatrix ComplexMatrix::scaled(cplx factor) const {
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * factor;
  return m;
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const cplx& z : data_) best = std::max(best, std::abs(z));
  return best;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& rhs) const {
  if (!same_shape(rhs)) raise(errc::shape_mismatch, "matrix comparison shape mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i)
    best = std::max(best, std::abs(data_[i] - rhs.data_[i]));
  return best;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// Fix the phase so the largest-modulus entry (lowest index on ties) is real
// positive. Makes eigenvector output reproducible despite gauge freedom.
void normalize_column_phase(ComplexMatrix& v, std::size_t col) {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < v.rows(); ++i) {
    double mag = std::abs(v(i, col));
    if (mag > best_mag + 1e-14) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag <= 0.0) return;
  cplx phase = std::conj(v(best, col)) / best_mag;
  for (std::size_t i = 0; i < v.rows(); ++i) v(i, col) *= phase;
}

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& input) {
  if (input.rows() != input.cols())
    raise(errc::shape_mismatch, "hermitian_eigen: matrix is not square");
  const std::size_t n = input.rows();
  ComplexMatrix a = input;
  ComplexMatrix v = ComplexMatrix::identity(n);
  if (n == 0) return {{}, v};

  double scale = std::max(a.max_abs(), 1e-300);
  const double stop = 1e-14 * scale * static_cast<double>(n);
  const int max_sweeps = 80;

  int sweep = 0;
  while (off_diagonal_norm(a) > stop && sweep < max_sweeps) {
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-300) continue;
        const cplx phase = apq / r;  // apq = r * phase
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Unitary G acts on columns p,q:
        //   col_p' = c*col_p - s*conj(phase)*col_q
        //   col_q' = s*phase*col_p + c*col_q
        const cplx gp = s * std::conj(phase);
        const cplx gq = s * phase;

        for (std::size_t i = 0; i < n; ++i) {
          const cplx aip = a(i, p);
          const cplx aiq = a(i, q);
          a(i, p) = c * aip - gp * aiq;
          a(i, q) = gq * aip + c * aiq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const cplx apj = a(p, j);
          const cplx aqj = a(q, j);
          a(p, j) = c * apj - std::conj(gp) * aqj;
          a(q, j) = std::conj(gq) * apj + c * aqj;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const cplx vip = v(i, p);
          const cplx viq = v(i, q);
          v(i, p) = c * vip - gp * viq;
          v(i, q) = gq * vip + c * viq;
        }
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  if (sweep >= max_sweeps && off_diagonal_norm(a) > stop)
    raise(errc::numeric_failure, "hermitian_eigen: Jacobi sweep did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  HermitianEigen out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    normalize_column_phase(out.vectors, k);
  }
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  // Spectra of A†A suffice at the sizes this library handles.
  const ComplexMatrix gram = a.adjoint() * a;
  HermitianEigen eig = hermitian_eigen(gram);
  std::vector<double> sv;
  sv.reserve(eig.values.size());
  for (auto it = eig.values.rbegin(); it != eig.values.rend(); ++it)
    sv.push_back(std::sqrt(std::max(0.0, *it)));
  return sv;
}

std::size_t rank(const ComplexMatrix& a, double tol) {
  std::vector<double> sv = singular_values(a);
  if (sv.empty() || sv.front() == 0.0) return 0;
  const double cut = tol * sv.front();
  std::size_t r = 0;
  for (double s : sv)
    if (s > cut) ++r;
  return r;
}

}  // namespace factnet
