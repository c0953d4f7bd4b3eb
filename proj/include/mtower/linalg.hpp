#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

namespace mtower {

using cplx = std::complex<double>;

/// Dense complex matrix, row major.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(cplx s);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(cplx s, Matrix a);

// Matrix product kernels. matmul() dispatches to the OpenMP kernel for
// large operands and falls back to the serial reference otherwise; both
// kernels must agree to rounding error (see tests and tools/bench_kernels).
void matmul_serial(const Matrix& a, const Matrix& b, Matrix& out);
void matmul_openmp(const Matrix& a, const Matrix& b, Matrix& out);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);

Matrix adjoint(const Matrix& a);
cplx mat_trace(const Matrix& a);
double norm_inf(const Matrix& a);   // max |entry|
double norm_fro(const Matrix& a);

/// Fill with standard complex Gaussian entries (reproducible).
void fill_random(Matrix& m, std::mt19937_64& rng);

// Householder QR with column pivoting on a copy of `a`.
// rank: number of diagonal entries of R above tol * max diag.
std::size_t numerical_rank(const Matrix& a, double tol = 1e-8);

// Orthonormal basis of the null space of `a` (columns of the result).
Matrix nullspace(const Matrix& a, double tol = 1e-8);

// Minimum-norm least squares solution of a x = b (b may have many columns).
Matrix solve_lstsq(const Matrix& a, const Matrix& b, double tol = 1e-12);

// Cyclic Jacobi eigensolver for Hermitian matrices.
// Ascending eigenvalues; columns of `vecs` are the eigenvectors.
void hermitian_eig(const Matrix& a, std::vector<double>& vals, Matrix& vecs);

// f(a) for Hermitian psd a with f(x) = x^{-1/2} on eigenvalues above tol
// and 0 below; used to normalize Pimsner-Popa basis candidates.
Matrix psd_invsqrt(const Matrix& a, double tol = 1e-10);

// Gram-matrix rank of a family of equally-shaped matrices under <x,y> = tr(y* x).
std::size_t family_rank(const std::vector<Matrix>& fam, double tol = 1e-8);

}  // namespace mtower
