#include "mtower/linalg.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mtower {

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(cplx s, Matrix a) { return a *= s; }

void matmul_serial(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  out = Matrix(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    cplx* oi = out.data() + i * m;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = a(i, p);
      if (aip == cplx(0.0, 0.0)) continue;
      const cplx* bp = b.data() + p * m;
      for (std::size_t j = 0; j < m; ++j) oi[j] += aip * bp[j];
    }
  }
}

void matmul_openmp(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  out = Matrix(n, m);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    cplx* oi = out.data() + static_cast<std::size_t>(i) * m;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = a(static_cast<std::size_t>(i), p);
      if (aip == cplx(0.0, 0.0)) continue;
      const cplx* bp = b.data() + p * m;
      for (std::size_t j = 0; j < m; ++j) oi[j] += aip * bp[j];
    }
  }
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix out;
  // Row-sliced OpenMP kernel pays off once the work item is big enough.
  const double flops = double(a.rows()) * double(a.cols()) * double(b.cols());
#ifdef _OPENMP
  const bool in_parallel = omp_in_parallel() != 0;
#else
  const bool in_parallel = true;
#endif
  if (!in_parallel && flops > 64.0 * 64.0 * 64.0)
    matmul_openmp(a, b, out);
  else
    matmul_serial(a, b, out);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

Matrix adjoint(const Matrix& a) {
  Matrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
  return r;
}

cplx mat_trace(const Matrix& a) {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

double norm_inf(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

double norm_fro(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

void fill_random(Matrix& m, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = cplx(g(rng), g(rng));
}

namespace {

// Householder QR with column pivoting, in place. Returns the pivoted
// column order and the rank-revealing diagonal magnitudes.
struct PivotedQR {
  Matrix r;                     // upper part holds R, lower part holds the reflectors
  std::vector<std::size_t> perm;
};

PivotedQR pivoted_qr(Matrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t steps = std::min(m, n);
  PivotedQR qr;
  qr.perm.resize(n);
  for (std::size_t j = 0; j < n; ++j) qr.perm[j] = j;
  std::vector<double> colnorm(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) colnorm[j] += std::norm(a(i, j));

  for (std::size_t k = 0; k < steps; ++k) {
    // pivot: bring the largest remaining column forward
    std::size_t piv = k;
    for (std::size_t j = k + 1; j < n; ++j)
      if (colnorm[j] > colnorm[piv]) piv = j;
    if (piv != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(a(i, k), a(i, piv));
      std::swap(colnorm[k], colnorm[piv]);
      std::swap(qr.perm[k], qr.perm[piv]);
    }
    // Householder reflector for column k below row k
    double xnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) xnorm2 += std::norm(a(i, k));
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) continue;
    cplx alpha = a(k, k);
    const double aabs = std::abs(alpha);
    const cplx phase = (aabs == 0.0) ? cplx(1.0) : alpha / aabs;
    const cplx beta = -phase * xnorm;
    const cplx v0 = alpha - beta;
    // v = (v0, a(k+1..m-1, k)); the tail stays in the strictly-lower part
    double vnorm2 = std::norm(v0);
    for (std::size_t i = k + 1; i < m; ++i) vnorm2 += std::norm(a(i, k));
    if (vnorm2 == 0.0) continue;
    // Apply H = I - 2 v v^* / |v|^2 to the trailing columns
    for (std::size_t j = k + 1; j < n; ++j) {
      cplx dot = std::conj(v0) * a(k, j);
      for (std::size_t i = k + 1; i < m; ++i) dot += std::conj(a(i, k)) * a(i, j);
      const cplx f = 2.0 * dot / vnorm2;
      a(k, j) -= f * v0;
      for (std::size_t i = k + 1; i < m; ++i) a(i, j) -= f * a(i, k);
    }
    a(k, k) = beta;
    for (std::size_t j = k + 1; j < n; ++j) colnorm[j] -= std::norm(a(k, j));
  }
  qr.r = std::move(a);
  return qr;
}

}  // namespace

std::size_t numerical_rank(const Matrix& a, double tol) {
  if (a.empty()) return 0;
  PivotedQR qr = pivoted_qr(a);
  const std::size_t steps = std::min(a.rows(), a.cols());
  double dmax = 0.0;
  for (std::size_t k = 0; k < steps; ++k) dmax = std::max(dmax, std::abs(qr.r(k, k)));
  if (dmax == 0.0) return 0;
  std::size_t rank = 0;
  for (std::size_t k = 0; k < steps; ++k)
    if (std::abs(qr.r(k, k)) > tol * dmax) ++rank;
  return rank;
}

namespace {

// Modified Gram-Schmidt orthonormalization of the columns of `a` against
// an existing orthonormal set; returns kept columns.
Matrix orthonormal_columns(const Matrix& a, double tol) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::vector<cplx>> basis;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<cplx> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = a(i, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        cplx dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += std::conj(b[i]) * v[i];
        for (std::size_t i = 0; i < m; ++i) v[i] -= dot * b[i];
      }
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < m; ++i) nrm += std::norm(v[i]);
    nrm = std::sqrt(nrm);
    if (nrm > tol) {
      for (std::size_t i = 0; i < m; ++i) v[i] /= nrm;
      basis.push_back(std::move(v));
    }
  }
  Matrix out(m, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < m; ++i) out(i, j) = basis[j][i];
  return out;
}

}  // namespace

Matrix nullspace(const Matrix& a, double tol) {
  // Null space via the Hermitian Gram matrix a^* a (sizes here are modest).
  const std::size_t n = a.cols();
  Matrix g = adjoint(a) * a;
  std::vector<double> vals;
  Matrix vecs;
  hermitian_eig(g, vals, vecs);
  double vmax = vals.empty() ? 0.0 : std::max(std::abs(vals.front()), std::abs(vals.back()));
  // the eigensolver resolves the null eigenvalues of the Gram matrix only to
  // about machine precision times vmax, so the cut must not fall below that
  const double cut = std::max(vmax, 1.0) * std::max(tol * tol, 1e-13);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (vals[i] <= cut) keep.push_back(i);
  Matrix out(n, keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) out(i, j) = vecs(i, keep[j]);
  return orthonormal_columns(out, 0.5);
}

Matrix solve_lstsq(const Matrix& a, const Matrix& b, double tol) {
  // Normal equations with eigen-based pseudo-inverse; adequate at our scales.
  Matrix at = adjoint(a);
  Matrix g = at * a;
  Matrix rhs = at * b;
  std::vector<double> vals;
  Matrix vecs;
  hermitian_eig(g, vals, vecs);
  double vmax = 0.0;
  for (double v : vals) vmax = std::max(vmax, std::abs(v));
  Matrix vh = adjoint(vecs);
  Matrix y = vh * rhs;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double inv = (vals[i] > tol * std::max(vmax, 1.0)) ? 1.0 / vals[i] : 0.0;
    for (std::size_t j = 0; j < y.cols(); ++j) y(i, j) *= inv;
  }
  return vecs * y;
}

void hermitian_eig(const Matrix& a, std::vector<double>& vals, Matrix& vecs) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("hermitian_eig: square matrix required");
  Matrix h = a;
  vecs = Matrix::identity(n);
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += std::norm(h(i, j));
    if (off < 1e-28 * std::max(1.0, norm_fro(h))) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx hpq = h(p, q);
        if (std::abs(hpq) < 1e-300) continue;
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        // Unitary 2x2 diagonalization: first strip the phase of h(pq), then rotate.
        const double absp = std::abs(hpq);
        const cplx phase = hpq / absp;
        const double theta = 0.5 * std::atan2(2.0 * absp, aqq - app);
        const double c = std::cos(theta), s = std::sin(theta);
        // Columns p,q update: [p q] <- [p q] * [[c, s],[-s e^{i phi}, c e^{i phi}]]-style
        for (std::size_t i = 0; i < n; ++i) {
          const cplx hip = h(i, p), hiq = h(i, q);
          h(i, p) = c * hip - s * std::conj(phase) * hiq;
          h(i, q) = s * phase * hip + c * hiq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const cplx hpj = h(p, j), hqj = h(q, j);
          h(p, j) = c * hpj - s * phase * hqj;
          h(q, j) = s * std::conj(phase) * hpj + c * hqj;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const cplx vip = vecs(i, p), viq = vecs(i, q);
          vecs(i, p) = c * vip - s * std::conj(phase) * viq;
          vecs(i, q) = s * phase * vip + c * viq;
        }
      }
    }
  }
  vals.resize(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    vals[i] = h(i, i).real();
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return vals[x] < vals[y]; });
  std::vector<double> sorted(n);
  Matrix sortedv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    sorted[j] = vals[order[j]];
    for (std::size_t i = 0; i < n; ++i) sortedv(i, j) = vecs(i, order[j]);
  }
  vals = std::move(sorted);
  vecs = std::move(sortedv);
}

Matrix psd_invsqrt(const Matrix& a, double tol) {
  std::vector<double> vals;
  Matrix vecs;
  hermitian_eig(a, vals, vecs);
  double vmax = 0.0;
  for (double v : vals) vmax = std::max(vmax, v);
  Matrix d(a.rows(), a.rows());
  for (std::size_t i = 0; i < vals.size(); ++i)
    d(i, i) = (vals[i] > tol * std::max(vmax, 1.0)) ? 1.0 / std::sqrt(vals[i]) : 0.0;
  return vecs * d * adjoint(vecs);
}

std::size_t family_rank(const std::vector<Matrix>& fam, double tol) {
  if (fam.empty()) return 0;
  const std::size_t n = fam.size();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx dot = 0.0;
      for (std::size_t r = 0; r < fam[i].rows(); ++r)
        for (std::size_t c = 0; c < fam[i].cols(); ++c) dot += std::conj(fam[i](r, c)) * fam[j](r, c);
      g(i, j) = dot;
    }
  std::vector<double> vals;
  Matrix vecs;
  hermitian_eig(g, vals, vecs);
  double vmax = 0.0;
  for (double v : vals) vmax = std::max(vmax, std::abs(v));
  if (vmax == 0.0) return 0;
  std::size_t rank = 0;
  for (double v : vals)
    if (v > tol * tol * vmax) ++rank;
  return rank;
}

}  // namespace mtower
