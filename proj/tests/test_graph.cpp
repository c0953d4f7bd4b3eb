#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "mtower/graph.hpp"

using namespace mtower;

namespace {

// Test-only oracle: cyclic Jacobi eigensolver for real symmetric matrices,
// independent of the library's power iteration. Returns the spectral radius
// and the entrywise-positive eigenvector.
std::pair<double, std::vector<double>> jacobi_perron(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
        const double c = std::cos(theta), s = std::sin(theta);
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (a[i][i] > a[best][best]) best = i;
  std::vector<double> vec(n);
  for (std::size_t i = 0; i < n; ++i) vec[i] = v[i][best];
  if (vec[0] < 0)
    for (auto& x : vec) x = -x;
  return {a[best][best], vec};
}

std::vector<std::vector<double>> full_adjacency(const WeightedBipartiteGraph& g) {
  const std::size_t n = g.n_even() + g.n_odd();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (std::size_t e = 0; e < g.n_even(); ++e)
    for (std::size_t o = 0; o < g.n_odd(); ++o) {
      a[e][g.n_even() + o] = g.mult[e][o];
      a[g.n_even() + o][e] = g.mult[e][o];
    }
  return a;
}

}  // namespace

TEST_CASE("A2 has modulus 1 and unit weights") {
  auto g = builtin_graph("A2");
  CHECK(g.modulus == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.dim_even[0] == doctest::Approx(1.0));
  CHECK(g.dim_odd[0] == doctest::Approx(1.0));
}

TEST_CASE("A3 Frobenius-Perron data matches the eigensolver oracle") {
  auto g = builtin_graph("A3");
  auto [lam, vec] = jacobi_perron(full_adjacency(g));
  CHECK(std::abs(g.modulus - lam) < 1e-10);
  CHECK(std::abs(g.modulus - 1.414213562) < 1e-8);
  // oracle vector normalized at the basepoint
  const double base = vec[g.basepoint];
  for (std::size_t e = 0; e < g.n_even(); ++e)
    CHECK(std::abs(g.dim_even[e] - vec[e] / base) < 1e-9);
  for (std::size_t o = 0; o < g.n_odd(); ++o)
    CHECK(std::abs(g.dim_odd[o] - vec[g.n_even() + o] / base) < 1e-9);
  CHECK(std::abs(g.dim_odd[0] - std::sqrt(2.0)) < 1e-10);
}

TEST_CASE("builtin moduli: A4 golden ratio, D4 sqrt3, E6 2cos(pi/12)") {
  CHECK(std::abs(builtin_graph("A4").modulus - 1.618033989) < 1e-8);
  CHECK(std::abs(builtin_graph("D4").modulus - 1.732050808) < 1e-8);
  auto e6 = builtin_graph("E6");
  auto [lam, vec] = jacobi_perron(full_adjacency(e6));
  (void)vec;
  CHECK(std::abs(e6.modulus - lam) < 1e-10);
  CHECK(std::abs(e6.modulus - 1.931851653) < 1e-8);
  CHECK(std::abs(e6.modulus - 2.0 * std::cos(M_PI / 12.0)) < 1e-10);
}

TEST_CASE("A_n modulus equals 2cos(pi/(n+1))") {
  for (int n = 2; n <= 8; ++n) {
    auto g = builtin_graph("A", n);
    CHECK(std::abs(g.modulus - 2.0 * std::cos(M_PI / (n + 1))) < 1e-10);
  }
}

TEST_CASE("builtin families pass the dimension-function check at 1e-10") {
  for (const char* name : {"A2", "A3", "A4", "A5", "D4", "D5", "D6", "E6", "E7", "E8"}) {
    auto g = builtin_graph(name);
    auto rep = verify_dimension_function(g, 1e-10);
    INFO(name);
    CHECK(rep.pass);
  }
}

TEST_CASE("perturbed weights fail the dimension check at the right vertices") {
  auto g = builtin_graph("A3");
  g.dim_odd[0] = 1.5;  // was sqrt(2)
  auto rep = verify_dimension_function(g, 1e-9);
  CHECK(!rep.pass);
  int bad = 0;
  for (const auto& r : rep.residuals)
    if (r.residual > 1e-3) ++bad;
  CHECK(bad >= 2);  // both even endpoints see the perturbation
}

TEST_CASE("dimension weights are label-equivariant under relabeling") {
  auto g = builtin_graph("A5");
  // reverse the path: relabel v_i -> v_{4-i}; basepoint moves to the far end
  WeightedBipartiteGraph h;
  std::vector<std::pair<int, int>> edges;
  h = g;
  std::reverse(h.even.begin(), h.even.end());
  std::reverse(h.odd.begin(), h.odd.end());
  std::vector<std::vector<int>> m(h.n_even(), std::vector<int>(h.n_odd(), 0));
  for (std::size_t e = 0; e < g.n_even(); ++e)
    for (std::size_t o = 0; o < g.n_odd(); ++o)
      m[g.n_even() - 1 - e][g.n_odd() - 1 - o] = g.mult[e][o];
  h.mult = m;
  h.basepoint = g.n_even() - 1 - g.basepoint;
  frobenius_perron(h);
  CHECK(std::abs(h.modulus - g.modulus) < 1e-10);
  for (std::size_t e = 0; e < g.n_even(); ++e)
    CHECK(std::abs(h.dim_even[g.n_even() - 1 - e] - g.dim_even[e]) < 1e-9);
}

TEST_CASE("JSON round trip is the identity modulo key order") {
  auto g = builtin_graph("D5");
  const std::string s1 = save_graph(g);
  auto g2 = load_graph(s1);
  const std::string s2 = save_graph(g2);
  CHECK(nlohmann::json::parse(s1) == nlohmann::json::parse(s2));
}

TEST_CASE("JSON without dim gets Frobenius-Perron weights") {
  const char* text = R"({
    "even": ["v0", "v2"], "odd": ["v1"],
    "edges": [["v0", "v1", 1], ["v2", "v1", 1]],
    "basepoint": "v0"
  })";
  auto g = load_graph(text);
  CHECK(std::abs(g.modulus - std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(g.dim_odd[0] - std::sqrt(2.0)) < 1e-10);
}

TEST_CASE("JSON with an even-even edge is rejected") {
  const char* text = R"({
    "even": ["v0", "v2"], "odd": ["v1"],
    "edges": [["v0", "v2", 1]],
    "basepoint": "v0"
  })";
  CHECK_THROWS(load_graph(text));
}

TEST_CASE("disconnected graphs are rejected with the offending component") {
  const char* text = R"({
    "even": ["v0", "w0"], "odd": ["v1", "w1"],
    "edges": [["v0", "v1", 1], ["w0", "w1", 1]],
    "basepoint": "v0"
  })";
  CHECK_THROWS_WITH_AS(load_graph(text), doctest::Contains("w"), std::invalid_argument);
}

TEST_CASE("pointed graph isomorphism distinguishes basepoints") {
  auto a = builtin_graph("A4");
  auto b = builtin_graph("A4");
  CHECK(pointed_graph_isomorphic(a, b));
  CHECK(!pointed_graph_isomorphic(a, builtin_graph("D4")));
}

TEST_CASE("DOT export mentions every vertex") {
  auto g = builtin_graph("E6");
  const std::string dot = graph_dot(g);
  for (const auto& v : g.even) CHECK(dot.find(v) != std::string::npos);
  for (const auto& v : g.odd) CHECK(dot.find(v) != std::string::npos);
}
