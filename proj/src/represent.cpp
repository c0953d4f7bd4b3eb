#include "mtower/represent.hpp"

#include <cmath>
#include <map>

#include "mtower/walks.hpp"
#include <stdexcept>

namespace mtower {

namespace {

// Weight of a diagram on a pair of suffix paths (alpha = top, beta = bottom);
// 0 if the edge-instance constraints fail.
double diagram_weight(const WeightedBipartiteGraph& g, const TLDiagram& d, const Walk& alpha,
                      const Walk& beta, int base_parity) {
  const std::size_t n = d.n_bottom;
  double w = 1.0;
  for (std::size_t pt = 0; pt < d.points(); ++pt) {
    const std::size_t q = d.pairing[pt];
    if (q < pt) continue;  // handle each strand once
    if (pt < n && q < n) {
      // bottom cup (pt, q) on beta
      const std::size_t a = pt, b = q;
      if (beta.verts[a] != beta.verts[b + 1] || beta.verts[a + 1] != beta.verts[b] ||
          beta.steps[a].instance != beta.steps[b].instance)
        return 0.0;
      const int pa = (base_parity + static_cast<int>(a)) % 2;
      const Vertex pocket{1 - pa, beta.verts[a + 1]};
      const Vertex outer{pa, beta.verts[a]};
      w *= std::sqrt(g.dim(pocket) / g.dim(outer));
    } else if (pt >= n && q >= n) {
      // top cap on alpha
      const std::size_t i = pt - n, j = q - n;
      if (alpha.verts[i] != alpha.verts[j + 1] || alpha.verts[i + 1] != alpha.verts[j] ||
          alpha.steps[i].instance != alpha.steps[j].instance)
        return 0.0;
      const int pa = (base_parity + static_cast<int>(i)) % 2;
      const Vertex pocket{1 - pa, alpha.verts[i + 1]};
      const Vertex outer{pa, alpha.verts[i]};
      w *= std::sqrt(g.dim(pocket) / g.dim(outer));
    } else {
      // through strand bottom pt <-> top q-n
      const std::size_t a = pt, j = q - n;
      if (beta.verts[a] != alpha.verts[j] || beta.verts[a + 1] != alpha.verts[j + 1] ||
          beta.steps[a].instance != alpha.steps[j].instance)
        return 0.0;
    }
  }
  return w;
}

}  // namespace

AlgebraElement represent(const MarkovTower& t, const TLElement& x) {
  if (!t.path) throw std::invalid_argument("represent: tower carries no path model");
  if (x.n_bottom() != x.n_top()) throw std::invalid_argument("represent: element is not square");
  if (std::abs(x.modulus() - t.modulus) > 1e-12 * std::max(1.0, t.modulus))
    throw std::invalid_argument("represent: modulus mismatch");
  const std::size_t n = x.n_bottom();
  if (n > t.depth()) throw std::invalid_argument("represent: tower depth too small");
  const PathModel& pm = *t.path;
  const WeightedBipartiteGraph& g = pm.graph;
  const std::size_t off = pm.offset;
  const std::size_t L = off + n;
  const PathLevel& base = pm.levels[off];
  const PathLevel& toplvl = pm.levels[L];
  const int base_parity = static_cast<int>(off % 2);

  // child lookup per level: (parent, other, instance) -> path id
  std::vector<std::map<std::tuple<std::size_t, std::size_t, int>, std::size_t>> child(L + 1);
  for (std::size_t lev = off + 1; lev <= L; ++lev) {
    const PathLevel& pl = pm.levels[lev];
    for (std::size_t q = 0; q < pl.parent.size(); ++q)
      child[lev][{pl.parent[q], pl.step[q].other, pl.step[q].instance}] = q;
  }
  auto extend = [&](std::size_t prefix_id, const Walk& s) {
    std::size_t id = prefix_id;
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
      auto it = child[off + i + 1].find({id, s.steps[i].other, s.steps[i].instance});
      if (it == child[off + i + 1].end()) throw std::logic_error("path extension not found");
      id = it->second;
    }
    return id;
  };

  AlgebraElement out(t.levels[n]);
  for (std::size_t v = 0; v < base.paths_by_vertex.size(); ++v) {
    if (base.paths_by_vertex[v].empty()) continue;
    const Vertex from{base_parity, v};
    auto sfx = walks_from(g, from, n);
    if (sfx.empty()) continue;
    // local weight matrix over suffix pairs with equal endpoints
    std::vector<std::vector<cplx>> w(sfx.size(), std::vector<cplx>(sfx.size(), cplx(0.0)));
    for (const auto& [dgr, coeff] : x.terms()) {
      for (std::size_t a = 0; a < sfx.size(); ++a)
        for (std::size_t b = 0; b < sfx.size(); ++b) {
          if (sfx[a].verts.back() != sfx[b].verts.back()) continue;
          const double val = diagram_weight(g, dgr, sfx[a], sfx[b], base_parity);
          if (val != 0.0) w[a][b] += coeff * val;
        }
    }
    for (std::size_t prefix : base.paths_by_vertex[v]) {
      std::vector<std::size_t> glob(sfx.size());
      for (std::size_t a = 0; a < sfx.size(); ++a) glob[a] = extend(prefix, sfx[a]);
      for (std::size_t a = 0; a < sfx.size(); ++a)
        for (std::size_t b = 0; b < sfx.size(); ++b) {
          if (w[a][b] == cplx(0.0)) continue;
          const std::size_t blk = static_cast<std::size_t>(toplvl.block_of_vertex[toplvl.end_vertex[glob[a]]]);
          out.block(blk)(toplvl.local_index[glob[a]], toplvl.local_index[glob[b]]) += w[a][b];
        }
    }
  }
  return out;
}

std::vector<TLDiagram> tl_basis(std::size_t n, int shading) {
  std::vector<TLDiagram> out;
  for (const auto& circ : noncrossing_pairings(2 * n)) {
    // circle position c: c < n -> bottom c; c >= n -> top 2n-1-c
    auto to_point = [&](std::size_t c) -> std::uint16_t {
      return c < n ? static_cast<std::uint16_t>(c) : static_cast<std::uint16_t>(n + (2 * n - 1 - c));
    };
    TLDiagram d;
    d.n_bottom = d.n_top = static_cast<std::uint16_t>(n);
    d.shading = shading;
    d.pairing.assign(2 * n, 0);
    for (std::size_t c = 0; c < 2 * n; ++c) d.pairing[to_point(c)] = to_point(circ[c]);
    d.validate();
    out.push_back(std::move(d));
  }
  return out;
}

std::size_t family_rank(const std::vector<AlgebraElement>& fam, double tol) {
  if (fam.empty()) return 0;
  const std::size_t n = fam.size();
  Matrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram(i, j) = inner(fam[j], fam[i]);
  std::vector<double> vals;
  Matrix vecs;
  hermitian_eig(gram, vals, vecs);
  double vmax = 0.0;
  for (double v : vals) vmax = std::max(vmax, std::abs(v));
  if (vmax == 0.0) return 0;
  std::size_t rank = 0;
  for (double v : vals)
    if (v > tol * tol * vmax) ++rank;
  return rank;
}

std::size_t image_dimension(const MarkovTower& t, std::size_t n, double tol) {
  std::vector<AlgebraElement> reps;
  for (const auto& d : tl_basis(n))
    reps.push_back(represent(t, TLElement::from_diagram(d, t.modulus)));
  return family_rank(reps, tol);
}

namespace {

TLDiagram multistep_residual_tangle(std::size_t j, std::size_t k) {
  const std::size_t n = j + 2 * k;
  TLDiagram d;
  d.n_bottom = d.n_top = static_cast<std::uint16_t>(n);
  d.pairing.assign(2 * n, 0);
  auto pair = [&](std::size_t a, std::size_t b) {
    d.pairing[a] = static_cast<std::uint16_t>(b);
    d.pairing[b] = static_cast<std::uint16_t>(a);
  };
  for (std::size_t i = 0; i < j; ++i) pair(i, n + i);
  pair(j, n + j + 2 * k - 2);
  for (std::size_t s = 0; s + 1 < k; ++s) pair(j + 1 + s, j + 2 * k - 2 - s);
  for (std::size_t s = 0; s + 1 < k; ++s) pair(n + j + s, n + j + 2 * k - 3 - s);
  pair(j + 2 * k - 1, n + j + 2 * k - 1);
  d.validate();
  return d;
}

}  // namespace

// Both sides of the cabled-word identity
//   f^{j+k}_j = (e_{j+k} e_{j+k+1} ... e_{j+2k-1}) . T
// with T the single tangle that threads one strand over k-1 nested arcs.
// The scalar normalization is carried entirely by the e_i factors; adding
// any extra power of d breaks the identity already at (j,k) = (0,2).

double multistep_relation_check(const MarkovTower& t, std::size_t j, std::size_t k) {
  if (j + 2 * k > t.depth()) throw std::invalid_argument("multistep relation: insufficient depth");
  const double d = t.modulus;
  AlgebraElement lhs = cabled_projection_in_tower(t, j, k);
  const std::size_t lvl = j + 2 * k;
  AlgebraElement word = AlgebraElement::identity(t.levels[lvl]);
  for (std::size_t i = j + k; i <= j + 2 * k - 1; ++i) word = word * t.jones_at(i, lvl);
  AlgebraElement tangle =
      represent(t, TLElement::from_diagram(multistep_residual_tangle(j, k), d));
  return norm_inf(lhs - word * tangle);
}

double multistep_relation_check_diagrams(std::size_t j, std::size_t k, double modulus) {
  TLElement lhs = cabled_projection(j, k, modulus);
  TLElement word = TLElement::identity(j + 2 * k, modulus);
  for (std::size_t i = j + k; i <= j + 2 * k - 1; ++i)
    word = word * TLElement::jones_projection(i, j + 2 * k, modulus);
  TLElement rhs = word * TLElement::from_diagram(multistep_residual_tangle(j, k), modulus);
  return (lhs - rhs).norm_inf();
}

}  // namespace mtower
