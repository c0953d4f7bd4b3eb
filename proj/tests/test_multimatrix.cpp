#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mtower/multimatrix.hpp"

using namespace mtower;

namespace {

AlgebraPtr two_block_algebra() {
  // blocks a (1x1) and b (2x2), normalized trace
  return std::make_shared<MultiMatrixAlgebra>(
      std::vector<MultiMatrixAlgebra::Block>{{"a", 1}, {"b", 2}}, std::vector<double>{1.0 / 3, 1.0 / 3},
      true);
}

UnitalInclusion simple_inclusion() {
  // a + b included into one 3x3 block c
  auto lower = two_block_algebra();
  auto upper = std::make_shared<MultiMatrixAlgebra>(
      std::vector<MultiMatrixAlgebra::Block>{{"c", 3}}, std::vector<double>{1.0 / 3}, true);
  UnitalInclusion::Copy ca{0, {0}, {}};
  UnitalInclusion::Copy cb{1, {1, 2}, {}};
  std::vector<std::vector<UnitalInclusion::Copy>> copies{ {ca, cb} };
  return UnitalInclusion(lower, upper, std::move(copies));
}

}  // namespace

TEST_CASE("unit law and adjoint anti-homomorphism") {
  auto alg = two_block_algebra();
  std::mt19937_64 rng(1);
  AlgebraElement x = AlgebraElement::random(alg, rng);
  AlgebraElement y = AlgebraElement::random(alg, rng);
  CHECK(norm_inf(AlgebraElement::identity(alg) * x - x) < 1e-12);
  CHECK(norm_inf(adjoint(x * y) - adjoint(y) * adjoint(x)) < 1e-12);
}

TEST_CASE("trace is normalized, tracial, and faithful") {
  auto alg = two_block_algebra();
  std::mt19937_64 rng(2);
  CHECK(std::abs(trace(AlgebraElement::identity(alg)) - cplx(1.0)) < 1e-12);
  AlgebraElement x = AlgebraElement::random(alg, rng);
  AlgebraElement y = AlgebraElement::random(alg, rng);
  CHECK(std::abs(trace(x * y) - trace(y * x)) < 1e-12);
  CHECK(trace(adjoint(x) * x).real() > 1e-12);
}

TEST_CASE("trace of the projection onto a weight-1/2 block is 1/2") {
  // level-2 block structure of the sqrt(2) tower: two 1x1 blocks, weights 1/2
  auto alg = std::make_shared<MultiMatrixAlgebra>(
      std::vector<MultiMatrixAlgebra::Block>{{"v0", 1}, {"v2", 1}}, std::vector<double>{0.5, 0.5},
      true);
  AlgebraElement p = AlgebraElement::matrix_unit(alg, 1, 0, 0);
  CHECK(std::abs(trace(p) - cplx(0.5)) < 1e-12);
}

TEST_CASE("parent mismatch is rejected") {
  auto a1 = two_block_algebra();
  auto a2 = two_block_algebra();  // distinct instance
  std::mt19937_64 rng(3);
  AlgebraElement x = AlgebraElement::random(a1, rng);
  AlgebraElement y = AlgebraElement::random(a2, rng);
  CHECK_THROWS(multiply(x, y));
}

TEST_CASE("inclusion is unital, trace compatible, multiplicative") {
  auto incl = simple_inclusion();
  std::mt19937_64 rng(4);
  CHECK(incl.verify(rng) < 1e-12);
  auto lam = incl.inclusion_matrix();
  CHECK(lam[0][0] == 1);
  CHECK(lam[1][0] == 1);
}

TEST_CASE("conditional expectation: restriction to the subalgebra is the identity") {
  auto incl = simple_inclusion();
  std::mt19937_64 rng(5);
  AlgebraElement y = AlgebraElement::random(incl.lower(), rng);
  CHECK(norm_inf(incl.expect(incl.embed(y)) - y) < 1e-12);
}

TEST_CASE("conditional expectation agrees with the dense least-squares oracle") {
  // Oracle: E(x) minimizes || embed(y) - x || in the trace norm; solve the
  // normal equations for y from the vectorized embedding, independently.
  auto incl = simple_inclusion();
  std::mt19937_64 rng(6);
  AlgebraElement x = AlgebraElement::random(incl.upper(), rng);
  AlgebraElement e = incl.expect(x);

  const auto low = incl.lower();
  std::vector<AlgebraElement> basis;
  for (std::size_t b = 0; b < low->n_blocks(); ++b)
    for (std::size_t r = 0; r < low->block_size(b); ++r)
      for (std::size_t c = 0; c < low->block_size(b); ++c)
        basis.push_back(AlgebraElement::matrix_unit(low, b, r, c));
  // weighted Gram system: sum_j <embed(bj), embed(bi)> y_j = <x, embed(bi)>
  const std::size_t n = basis.size();
  Matrix gram(n, n), rhs(n, 1);
  std::vector<AlgebraElement> embedded;
  for (const auto& bi : basis) embedded.push_back(incl.embed(bi));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) gram(i, j) = inner(embedded[j], embedded[i]);
    rhs(i, 0) = inner(x, embedded[i]);
  }
  Matrix y = solve_lstsq(gram, rhs);
  AlgebraElement oracle = AlgebraElement::zero(low);
  for (std::size_t i = 0; i < n; ++i) {
    AlgebraElement term = basis[i];
    term *= y(i, 0);
    oracle += term;
  }
  CHECK(norm_inf(e - oracle) < 1e-10);
}

TEST_CASE("conditional expectation is lower-bimodular") {
  auto incl = simple_inclusion();
  std::mt19937_64 rng(7);
  for (int s = 0; s < 4; ++s) {
    AlgebraElement a = AlgebraElement::random(incl.lower(), rng);
    AlgebraElement b = AlgebraElement::random(incl.lower(), rng);
    AlgebraElement x = AlgebraElement::random(incl.upper(), rng);
    AlgebraElement lhs = incl.expect(incl.embed(a) * x * incl.embed(b));
    AlgebraElement rhs = a * incl.expect(x) * b;
    CHECK(norm_inf(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("commutant of the empty generator list is the whole algebra") {
  auto alg = two_block_algebra();
  auto basis = relative_commutant(alg, {});
  CHECK(basis.size() == alg->dim());
}

TEST_CASE("commutant of all matrix units is the center") {
  auto alg = two_block_algebra();
  std::vector<AlgebraElement> gens;
  for (std::size_t b = 0; b < alg->n_blocks(); ++b)
    for (std::size_t r = 0; r < alg->block_size(b); ++r)
      for (std::size_t c = 0; c < alg->block_size(b); ++c)
        gens.push_back(AlgebraElement::matrix_unit(alg, b, r, c));
  auto basis = relative_commutant(alg, gens);
  CHECK(basis.size() == alg->n_blocks());
  // commutes with everything and is *-closed
  std::mt19937_64 rng(8);
  AlgebraElement x = AlgebraElement::random(alg, rng);
  for (const auto& z : basis) CHECK(norm_inf(z * x - x * z) < 1e-10);
  for (const auto& z : basis) {
    AlgebraElement zs = adjoint(z);
    for (const auto& b : basis) zs -= inner(zs, b) * b;
    CHECK(norm_inf(zs) < 1e-9);  // adjoint stays inside the span
  }
}

TEST_CASE("commutant of a diagonal with distinct entries is the diagonal") {
  auto alg = std::make_shared<MultiMatrixAlgebra>(
      std::vector<MultiMatrixAlgebra::Block>{{"m", 2}}, std::vector<double>{0.5}, true);
  AlgebraElement g(alg);
  g.block(0)(0, 0) = 1.0;
  g.block(0)(1, 1) = -1.0;
  auto basis = relative_commutant(alg, {g});
  CHECK(basis.size() == 2);  // frozen from the nullspace-rank oracle
}

TEST_CASE("central support of minimal and full projections") {
  auto alg = two_block_algebra();
  AlgebraElement one = AlgebraElement::identity(alg);
  CHECK(norm_inf(central_support(one) - one) < 1e-12);
  AlgebraElement p = AlgebraElement::matrix_unit(alg, 1, 0, 0);
  AlgebraElement z = central_support(p);
  CHECK(norm_inf(z.block(0)) == 0.0);
  CHECK(norm_inf(z.block(1) - Matrix::identity(2)) < 1e-12);
}

TEST_CASE("two sided ideal span is the union of supported blocks") {
  auto alg = two_block_algebra();
  AlgebraElement p = AlgebraElement::matrix_unit(alg, 1, 0, 1);
  auto span = two_sided_ideal_span({p});
  CHECK(span.supported_blocks == std::vector<std::size_t>{1});
  CHECK(span.dimension == 4);
}
