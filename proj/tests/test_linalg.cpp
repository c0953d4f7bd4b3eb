#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mtower/linalg.hpp"

using namespace mtower;

TEST_CASE("serial and OpenMP matmul kernels agree") {
  std::mt19937_64 rng(7);
  for (auto [n, k, m] : {std::tuple{3, 4, 5}, {17, 9, 23}, {64, 64, 64}, {90, 130, 70}}) {
    Matrix a(n, k), b(k, m);
    fill_random(a, rng);
    fill_random(b, rng);
    Matrix s, p;
    matmul_serial(a, b, s);
    matmul_openmp(a, b, p);
    CHECK(norm_inf(s - p) < 1e-12);
    CHECK(norm_inf(matmul(a, b) - s) < 1e-12);
  }
}

TEST_CASE("adjoint and trace basics") {
  std::mt19937_64 rng(3);
  Matrix a(6, 6), b(6, 6);
  fill_random(a, rng);
  fill_random(b, rng);
  CHECK(norm_inf(adjoint(a * b) - adjoint(b) * adjoint(a)) < 1e-12);
  CHECK(std::abs(mat_trace(a * b) - mat_trace(b * a)) < 1e-12);
}

TEST_CASE("numerical rank and nullspace") {
  std::mt19937_64 rng(11);
  Matrix a(8, 5);
  fill_random(a, rng);
  // make column 4 = column 0 + column 1
  for (std::size_t i = 0; i < 8; ++i) a(i, 4) = a(i, 0) + a(i, 1);
  CHECK(numerical_rank(a) == 4);
  Matrix ns = nullspace(a);
  CHECK(ns.cols() == 1);
  CHECK(norm_inf(a * ns) < 1e-9);
}

TEST_CASE("least squares solves consistent systems") {
  std::mt19937_64 rng(13);
  Matrix a(10, 4), x(4, 2);
  fill_random(a, rng);
  fill_random(x, rng);
  Matrix b = a * x;
  Matrix sol = solve_lstsq(a, b);
  CHECK(norm_inf(a * sol - b) < 1e-9);
}

TEST_CASE("hermitian eigensolver") {
  std::mt19937_64 rng(17);
  Matrix h(7, 7);
  fill_random(h, rng);
  h = 0.5 * (h + adjoint(h));
  std::vector<double> vals;
  Matrix vecs;
  hermitian_eig(h, vals, vecs);
  // residual H v = lambda v
  for (std::size_t j = 0; j < 7; ++j) {
    Matrix v(7, 1);
    for (std::size_t i = 0; i < 7; ++i) v(i, 0) = vecs(i, j);
    Matrix hv = h * v;
    for (std::size_t i = 0; i < 7; ++i) hv(i, 0) -= vals[j] * v(i, 0);
    CHECK(norm_inf(hv) < 1e-9);
  }
  // orthonormality
  Matrix g = adjoint(vecs) * vecs;
  CHECK(norm_inf(g - Matrix::identity(7)) < 1e-9);
}

TEST_CASE("psd inverse square root") {
  std::mt19937_64 rng(19);
  Matrix a(5, 5);
  fill_random(a, rng);
  Matrix p = adjoint(a) * a;  // psd, almost surely full rank
  Matrix r = psd_invsqrt(p);
  CHECK(norm_inf(r * p * r - Matrix::identity(5)) < 1e-8);
}

TEST_CASE("family rank via Gram matrix") {
  Matrix a(2, 2), b(2, 2), c(2, 2);
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  c(0, 0) = 2.0;
  c(1, 1) = -3.0;  // dependent on a, b
  CHECK(family_rank({a, b, c}) == 2);
}
