#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mtower/represent.hpp"
#include "mtower/tower.hpp"

using namespace mtower;

namespace {

// Test-only oracle: counts of basepoint paths per level via integer
// adjacency powers, independent of the trie construction.
std::vector<std::vector<long>> path_counts(const WeightedBipartiteGraph& g, std::size_t depth) {
  std::vector<std::vector<long>> counts;
  std::vector<long> ev(g.n_even(), 0), od(g.n_odd(), 0);
  ev[g.basepoint] = 1;
  counts.push_back(ev);
  for (std::size_t k = 1; k <= depth; ++k) {
    if (k % 2 == 1) {
      std::vector<long> nx(g.n_odd(), 0);
      for (std::size_t o = 0; o < g.n_odd(); ++o)
        for (std::size_t e = 0; e < g.n_even(); ++e) nx[o] += g.mult[e][o] * ev[e];
      od = nx;
      counts.push_back(od);
    } else {
      std::vector<long> nx(g.n_even(), 0);
      for (std::size_t e = 0; e < g.n_even(); ++e)
        for (std::size_t o = 0; o < g.n_odd(); ++o) nx[e] += g.mult[e][o] * od[o];
      ev = nx;
      counts.push_back(ev);
    }
  }
  return counts;
}

long level_total(const MarkovTower& t, std::size_t k) {
  long s = 0;
  for (std::size_t b = 0; b < t.levels[k]->n_blocks(); ++b)
    s += static_cast<long>(t.levels[k]->block_size(b));
  return s;
}

}  // namespace

TEST_CASE("A3 tower block sizes match the path counting oracle") {
  auto g = builtin_graph("A3");
  auto t = build_tower(g, 4);
  auto oracle = path_counts(g, 4);
  // path counts per level 1,1,2,2,4; algebra dimensions (sum of squares) 1,1,2,4,8
  const long expected_total[] = {1, 1, 2, 2, 4};
  const std::size_t expected_dim[] = {1, 1, 2, 4, 8};
  for (std::size_t k = 0; k <= 4; ++k) {
    long total = 0;
    std::size_t dim = 0;
    for (long c : oracle[k]) {
      total += c;
      dim += static_cast<std::size_t>(c * c);
    }
    CHECK(total == expected_total[k]);
    CHECK(dim == expected_dim[k]);
    CHECK(t.levels[k]->dim() == dim);
    CHECK(level_total(t, k) == total);
    for (std::size_t b = 0; b < t.levels[k]->n_blocks(); ++b) {
      const auto& lvl = t.path->levels[k];
      const std::size_t v = lvl.vertex_of_block[b];
      CHECK(static_cast<long>(t.levels[k]->block_size(b)) == oracle[k][v]);
    }
  }
}

TEST_CASE("A2 tower is scalar at every level with e_n = 1") {
  auto t = build_tower(builtin_graph("A2"), 4);
  for (std::size_t k = 0; k <= 4; ++k) CHECK(t.levels[k]->dim() == 1);
  for (std::size_t n = 1; n + 1 <= 4; ++n)
    CHECK(norm_inf(t.jones[n] - AlgebraElement::identity(t.levels[n + 1])) < 1e-12);
}

TEST_CASE("A3 tower: tr_3(e_2) = 1/2") {
  auto t = build_tower(builtin_graph("A3"), 4);
  CHECK(std::abs(trace(t.jones[2]) - cplx(0.5)) < 1e-10);
}

TEST_CASE("Markov axioms hold for the A3 tower at depth 6") {
  auto t = build_tower(builtin_graph("A3"), 6);
  auto rep = verify_markov_axioms(t, 1e-9);
  for (const auto& c : rep.checks) {
    INFO(c.name);
    CHECK(c.pass);
  }
}

TEST_CASE("Markov axioms hold for the E6 tower at depth 6") {
  auto t = build_tower(builtin_graph("E6"), 6);
  auto rep = verify_markov_axioms(t, 1e-9);
  CHECK(rep.pass());
}

TEST_CASE("a perturbed block trace weight is flagged by the axiom checks") {
  auto t = build_tower(builtin_graph("A3"), 4);
  // move 1e-3 of trace mass between the two blocks of M_2, keep the state normalized
  const auto old = t.levels[2];
  std::vector<double> w{old->trace_weight(0) + 1e-3, old->trace_weight(1) - 1e-3};
  auto tampered = std::make_shared<MultiMatrixAlgebra>(old->blocks(), w, true);
  MarkovTower bad = t;
  bad.levels[2] = tampered;
  bad.inclusions[1] = UnitalInclusion(t.levels[1], tampered, t.inclusions[1].copies());
  bad.inclusions[2] = UnitalInclusion(tampered, t.levels[3], t.inclusions[2].copies());
  AlgebraElement e1(tampered);
  for (std::size_t b = 0; b < tampered->n_blocks(); ++b) e1.block(b) = t.jones[1].block(b);
  bad.jones[1] = e1;
  auto rep = verify_markov_axioms(bad, 1e-9);
  CHECK(!rep.pass());
  CHECK(rep.max_residual() > 1e-5);
  CHECK(rep.max_residual() < 1e-1);
  bool m3_or_restriction_flagged = false;
  for (const auto& c : rep.checks)
    if ((c.name == "M3-markov-index" || c.name == "trace-restriction") && !c.pass)
      m3_or_restriction_flagged = true;
  CHECK(m3_or_restriction_flagged);
}

TEST_CASE("elementary properties hold for A3, A2, D4 towers") {
  for (const char* name : {"A3", "A2", "D4"}) {
    auto t = build_tower(builtin_graph(name), 6);
    auto rep = verify_elementary_properties(t, 1e-9);
    INFO(name);
    for (const auto& c : rep.checks) {
      INFO(c.name);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("new stuff appears exactly at the expected levels") {
  auto a2 = build_tower(builtin_graph("A2"), 5);
  auto nd = new_stuff_dimensions(a2);
  for (std::size_t n = 2; n <= 5; ++n) {
    CHECK(nd.y_dim[n] == 0);
    CHECK(nd.x_dim[n] == a2.levels[n]->dim());
  }
  auto d4 = build_tower(builtin_graph("D4"), 6);
  auto nd4 = new_stuff_dimensions(d4);
  CHECK(nd4.y_dim[2] > 0);  // the two new leaves enter at level 2
  CHECK(nd4.y_dim[3] == 0);
}

TEST_CASE("finite depth: A2 -> 2, A3 -> 3, E6 -> 5") {
  CHECK(finite_depth(build_tower(builtin_graph("A2"), 5)) == 2);
  CHECK(finite_depth(build_tower(builtin_graph("A3"), 6)) == 3);
  CHECK(finite_depth(build_tower(builtin_graph("E6"), 7)) == 5);
}

TEST_CASE("principal graph round trip recovers the input graph") {
  for (const char* name : {"A2", "A3", "A4", "D4", "E6"}) {
    auto g = builtin_graph(name);
    // depth 2*diameter + 2 is always enough
    std::size_t depth = 2 * (g.n_even() + g.n_odd());
    auto t = build_tower(g, depth);
    auto pg = principal_graph(t);
    INFO(name);
    CHECK(!pg.truncated);
    CHECK(pointed_graph_isomorphic(pg.graph, g, 1e-9));
  }
}

TEST_CASE("recovered dimensions match the input dimension function") {
  auto g = builtin_graph("E6");
  auto t = build_tower(g, 12);
  auto pg = principal_graph(t).graph;
  for (std::size_t e = 0; e < g.n_even(); ++e) {
    bool found = false;
    for (std::size_t f = 0; f < pg.n_even(); ++f)
      if (pg.even[f] == g.even[e]) {
        CHECK(std::abs(pg.dim_even[f] - g.dim_even[e]) < 1e-9);
        found = true;
      }
    CHECK(found);
  }
}

TEST_CASE("shifted towers pass the axiom suite") {
  auto t = build_tower(builtin_graph("A3"), 8);
  auto s = shift(t, 2);
  CHECK(s.depth() == 6);
  auto rep = verify_markov_axioms(s, 1e-9);
  CHECK(rep.pass());
  // shifting truncates the Bratteli data
  for (std::size_t k = 0; k < s.depth(); ++k)
    CHECK(s.inclusions[k].inclusion_matrix() == t.inclusions[k + 2].inclusion_matrix());
  auto s0 = shift(t, 0);
  CHECK(s0.levels[0] == t.levels[0]);
}

TEST_CASE("compression by the unit is the identity operation") {
  auto t = build_tower(builtin_graph("A3"), 5);
  auto c = compress(t, AlgebraElement::identity(t.levels[0]));
  for (std::size_t k = 0; k <= 5; ++k) {
    CHECK(c.levels[k]->n_blocks() == t.levels[k]->n_blocks());
    for (std::size_t b = 0; b < c.levels[k]->n_blocks(); ++b)
      CHECK(c.levels[k]->block_size(b) == t.levels[k]->block_size(b));
  }
  for (std::size_t n = 1; n + 1 <= 5; ++n)
    for (std::size_t b = 0; b < c.jones[n].n_blocks(); ++b)
      CHECK(norm_inf(c.jones[n].block(b) - t.jones[n].block(b)) < 1e-10);
  CHECK(std::abs(trace(AlgebraElement::identity(c.levels[0])) - cplx(1.0)) < 1e-12);
}

TEST_CASE("compressing the twice-shifted A3 tower at v2 moves the basepoint") {
  auto g = builtin_graph("A3");
  auto t = build_tower(g, 8);
  auto s = shift(t, 2);
  // minimal projection in the block labelled v2 of M_2
  const int blk = s.levels[0]->block_by_label("v2");
  REQUIRE(blk >= 0);
  auto p = AlgebraElement::matrix_unit(s.levels[0], static_cast<std::size_t>(blk), 0, 0);
  auto c = compress(s, p);
  CHECK(c.connected());
  CHECK(std::abs(trace(AlgebraElement::identity(c.levels[0])) - cplx(1.0)) < 1e-12);
  auto rep = verify_markov_axioms(c, 1e-9);
  CHECK(rep.pass());
  auto pg = principal_graph(c);
  WeightedBipartiteGraph expected = g;
  expected.basepoint = 1;  // v2 is the second even vertex of the A3 builtin
  REQUIRE(expected.even[expected.basepoint] == "v2");
  CHECK(pointed_graph_isomorphic(pg.graph, expected, 1e-9));
}

TEST_CASE("multistep with k=1 reproduces the shifted tower") {
  auto t = build_tower(builtin_graph("A3"), 6);
  auto m = multistep(t, 2, 1);
  auto s = shift(t, 2);
  CHECK(m.depth() == s.depth());
  for (std::size_t n = 1; n + 1 <= m.depth(); ++n)
    CHECK(norm_inf(m.jones[n] - s.jones[n]) < 1e-11);
}

TEST_CASE("multistep towers pass the axiom suite with modulus d^k") {
  auto t = build_tower(builtin_graph("A3"), 8);
  auto m = multistep(t, 0, 2);
  CHECK(std::abs(m.modulus - 2.0) < 1e-10);
  auto rep = verify_markov_axioms(m, 1e-9);
  for (const auto& c : rep.checks) {
    INFO(c.name);
    CHECK(c.pass);
  }
}

TEST_CASE("multistep Bratteli edge counts are path counts in the original") {
  auto t = build_tower(builtin_graph("D4"), 6);
  auto m = multistep(t, 0, 2);
  for (std::size_t n = 0; n < m.depth(); ++n) {
    auto lam = m.inclusions[n].inclusion_matrix();
    auto l1 = t.inclusions[2 * n].inclusion_matrix();
    auto l2 = t.inclusions[2 * n + 1].inclusion_matrix();
    // product of the two one-step inclusion matrices
    for (std::size_t a = 0; a < lam.size(); ++a)
      for (std::size_t b = 0; b < lam[a].size(); ++b) {
        int s = 0;
        for (std::size_t c = 0; c < l1[a].size(); ++c) s += l1[a][c] * l2[c][b];
        CHECK(lam[a][b] == s);
      }
  }
}

TEST_CASE("multistep relation holds in towers") {
  auto a3 = build_tower(builtin_graph("A3"), 6);
  CHECK(multistep_relation_check(a3, 0, 1) < 1e-12);
  CHECK(multistep_relation_check(a3, 0, 2) < 1e-9);
  auto e6 = build_tower(builtin_graph("E6"), 6);
  CHECK(multistep_relation_check(e6, 1, 2) < 1e-9);
}

TEST_CASE("represent: identity, relations, and the cabled word") {
  auto t = build_tower(builtin_graph("A3"), 6);
  const double d = t.modulus;
  CHECK(norm_inf(represent(t, TLElement::identity(3, d)) -
                 AlgebraElement::identity(t.levels[3])) < 1e-12);
  auto e1 = TLElement::jones_projection(1, 3, d);
  auto e2 = TLElement::jones_projection(2, 3, d);
  TLElement rel = e1 * e2 * e1 - cplx(1.0 / (d * d)) * e1;
  CHECK(norm_inf(represent(t, rel)) < 1e-10);
  // diagram generators land on the tower Jones projections
  CHECK(norm_inf(represent(t, e2) - t.jones_at(2, 3)) < 1e-11);
  // the cabled word represented matches the tower-evaluated word
  auto f = cabled_projection(0, 2, d);
  CHECK(norm_inf(represent(t, f) - cabled_projection_in_tower(t, 0, 2)) < 1e-10);
}

TEST_CASE("represent is a *-homomorphism on random TL elements") {
  auto t = build_tower(builtin_graph("D4"), 6);
  const double d = t.modulus;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto basis = tl_basis(3);
  for (int s = 0; s < 4; ++s) {
    TLElement x(3, 3, +1, d), y(3, 3, +1, d);
    for (const auto& dg : basis) {
      x.add_term(dg, cplx(u(rng), u(rng)));
      y.add_term(dg, cplx(u(rng), u(rng)));
    }
    CHECK(norm_inf(represent(t, x * y) - represent(t, x) * represent(t, y)) < 1e-10);
    CHECK(norm_inf(represent(t, x.adjoint()) - adjoint(represent(t, x))) < 1e-10);
  }
}

TEST_CASE("image dimension exhausts the A-type tower and is bounded by Catalan") {
  auto t = build_tower(builtin_graph("A3"), 6);
  const std::size_t expected_dims[] = {1, 1, 2, 4, 8};
  for (std::size_t n = 0; n <= 4; ++n) {
    const std::size_t img = image_dimension(t, n);
    CHECK(img == expected_dims[n]);
    CHECK(img <= generic_dimension(n));
  }
  auto d4 = build_tower(builtin_graph("D4"), 6);
  for (std::size_t n = 0; n <= 4; ++n) CHECK(image_dimension(d4, n) <= generic_dimension(n));
}

TEST_CASE("build rejects too-shallow towers and bad inputs") {
  CHECK_THROWS(build_tower(builtin_graph("A3"), 1));
  auto t = build_tower(builtin_graph("A3"), 4);
  CHECK_THROWS(shift(t, 4));
  std::mt19937_64 rng(2);
  auto x = AlgebraElement::random(t.levels[0], rng);
  CHECK_THROWS(compress(t, x));  // generically not a projection
}

TEST_CASE("inclusions verify structurally at every level") {
  auto t = build_tower(builtin_graph("E6"), 6);
  std::mt19937_64 rng(4);
  for (const auto& incl : t.inclusions) CHECK(incl.verify(rng) < 1e-9);
}

TEST_CASE("ideal span of the Jones projection matches the reflection by rank") {
  // rank oracle: span{ u e_n v } over matrix units u, v has the dimension of
  // the reflected part of the Bratteli diagram
  auto t = build_tower(builtin_graph("D4"), 5);
  for (std::size_t n = 1; n + 1 <= 4; ++n) {
    const auto alg = t.levels[n + 1];
    const AlgebraElement& e = t.jones[n];
    std::vector<AlgebraElement> products;
    for (std::size_t b = 0; b < alg->n_blocks(); ++b) {
      // pick a nonzero entry (x,y) of e in this block, if any
      std::size_t x = 0, y = 0;
      bool found = false;
      for (std::size_t r = 0; r < alg->block_size(b) && !found; ++r)
        for (std::size_t c = 0; c < alg->block_size(b) && !found; ++c)
          if (std::abs(e.block(b)(r, c)) > 1e-12) {
            x = r;
            y = c;
            found = true;
          }
      if (!found) continue;
      for (std::size_t r = 0; r < alg->block_size(b); ++r)
        for (std::size_t c = 0; c < alg->block_size(b); ++c) {
          auto u = AlgebraElement::matrix_unit(alg, b, r, x);
          auto v = AlgebraElement::matrix_unit(alg, b, y, c);
          products.push_back(u * e * v);
        }
    }
    const std::size_t rank = family_rank(products);
    CHECK(rank == new_stuff_dimensions(t).x_dim[n + 1]);
    CHECK(rank == two_sided_ideal_span({t.jones[n]}).dimension);
  }
}

TEST_CASE("recovered dimension is independent of the level of the representative") {
  auto t = build_tower(builtin_graph("E6"), 9);
  const double d = t.modulus;
  for (std::size_t k = 0; k + 2 <= 9; ++k)
    for (std::size_t b = 0; b < t.levels[k]->n_blocks(); ++b) {
      const std::string& label = t.levels[k]->block_label(b);
      const int b2 = t.levels[k + 2]->block_by_label(label);
      if (b2 < 0) continue;
      const double d1 = std::pow(d, static_cast<double>(k)) * t.levels[k]->trace_weight(b);
      const double d2 = std::pow(d, static_cast<double>(k + 2)) *
                        t.levels[k + 2]->trace_weight(static_cast<std::size_t>(b2));
      CHECK(std::abs(d1 - d2) < 1e-9);
    }
}

TEST_CASE("image dimension never exceeds the generic dimension up to n = 6") {
  for (const char* name : {"A3", "D4"}) {
    auto t = build_tower(builtin_graph(name), 6);
    for (std::size_t n = 0; n <= 6; ++n) {
      INFO(name, " n=", n);
      CHECK(image_dimension(t, n) <= generic_dimension(n));
    }
  }
}
