#include "mtower/tower.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mtower {

std::size_t MarkovTower::level_of(const AlgebraElement& x) const {
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (levels[i] == x.algebra()) return i;
  throw std::invalid_argument("element does not belong to any tower level");
}

AlgebraElement MarkovTower::include(AlgebraElement x, std::size_t to_level) const {
  std::size_t at = level_of(x);
  if (to_level > depth()) throw std::invalid_argument("include: level beyond depth");
  while (at < to_level) {
    x = inclusions[at].embed(x);
    ++at;
  }
  if (at != to_level) throw std::invalid_argument("include: element above target level");
  return x;
}

AlgebraElement MarkovTower::expect_down(AlgebraElement x, std::size_t to_level) const {
  std::size_t at = level_of(x);
  if (to_level > at) throw std::invalid_argument("expect_down: target above element");
  while (at > to_level) {
    x = inclusions[at - 1].expect(x);
    --at;
  }
  return x;
}

AlgebraElement MarkovTower::jones_at(std::size_t n, std::size_t level) const {
  if (n < 1 || n >= jones.size()) throw std::invalid_argument("jones_at: index out of range");
  return include(jones[n], level);
}

namespace {

PathLevel extend_path_level(const WeightedBipartiteGraph& g, const PathLevel& prev, int parity) {
  // parity: vertex class of the new level's endpoints
  PathLevel out;
  const std::size_t class_size = parity == 0 ? g.n_even() : g.n_odd();
  out.paths_by_vertex.assign(class_size, {});
  for (std::size_t p = 0; p < prev.end_vertex.size(); ++p) {
    const Vertex from{1 - parity, prev.end_vertex[p]};
    for (auto s : g.steps_from(from)) {
      const std::size_t id = out.parent.size();
      out.parent.push_back(p);
      out.step.push_back(s);
      out.end_vertex.push_back(s.other);
      out.paths_by_vertex[s.other].push_back(id);
    }
  }
  out.block_of_vertex.assign(class_size, -1);
  out.local_index.assign(out.parent.size(), 0);
  for (std::size_t v = 0; v < class_size; ++v) {
    if (out.paths_by_vertex[v].empty()) continue;
    out.block_of_vertex[v] = static_cast<int>(out.vertex_of_block.size());
    out.vertex_of_block.push_back(v);
    for (std::size_t i = 0; i < out.paths_by_vertex[v].size(); ++i)
      out.local_index[out.paths_by_vertex[v][i]] = i;
  }
  return out;
}

AlgebraPtr algebra_for_level(const WeightedBipartiteGraph& g, const PathLevel& lvl, std::size_t k,
                             int parity, double d) {
  std::vector<MultiMatrixAlgebra::Block> blocks;
  std::vector<double> weights;
  for (std::size_t b = 0; b < lvl.vertex_of_block.size(); ++b) {
    const std::size_t v = lvl.vertex_of_block[b];
    blocks.push_back({g.label({parity, v}), lvl.paths_by_vertex[v].size()});
    weights.push_back(std::pow(d, -static_cast<double>(k)) * g.dim({parity, v}));
  }
  return std::make_shared<MultiMatrixAlgebra>(std::move(blocks), std::move(weights), true);
}

UnitalInclusion inclusion_for_step(AlgebraPtr lower, AlgebraPtr upper, const PathLevel& low,
                                   const PathLevel& up) {
  // copies of lower block (vertex v) inside upper block (vertex w): one per
  // edge instance between v and w; index map sends a path to its extension.
  std::vector<std::vector<UnitalInclusion::Copy>> copies(upper->n_blocks());
  // copy key: (upper vertex w, lower vertex v, instance c)
  std::map<std::tuple<std::size_t, std::size_t, int>, std::vector<std::uint32_t>> maps;
  for (std::size_t q = 0; q < up.parent.size(); ++q) {
    const std::size_t p = up.parent[q];
    const std::size_t w = up.end_vertex[q];
    const std::size_t v = low.end_vertex[p];
    auto& m = maps[{w, v, up.step[q].instance}];
    const std::size_t lsize = low.paths_by_vertex[v].size();
    if (m.empty()) m.assign(lsize, 0);
    m[low.local_index[p]] = static_cast<std::uint32_t>(up.local_index[q]);
  }
  for (auto& [key, map] : maps) {
    const auto [w, v, c] = key;
    (void)c;
    UnitalInclusion::Copy cp;
    cp.lower_block = static_cast<std::size_t>(low.block_of_vertex[v]);
    cp.index_map = std::move(map);
    copies[static_cast<std::size_t>(up.block_of_vertex[w])].push_back(std::move(cp));
  }
  return UnitalInclusion(std::move(lower), std::move(upper), std::move(copies));
}

AlgebraElement jones_for_level(const WeightedBipartiteGraph& g, AlgebraPtr at,
                               const std::vector<PathLevel>& lv, std::size_t n, double d) {
  // e_n in M_{n+1}: supported on backtracking paths xi' a abar; the entry
  // between xi' a abar and xi' b bbar is d^{-1} sqrt(dim x_a dim x_b)/dim u.
  const PathLevel& top = lv[n + 1];
  const PathLevel& mid = lv[n];
  const PathLevel& low = lv[n - 1];
  const int parity_mid = static_cast<int>(n % 2);  // level k endpoints have parity k mod 2
  AlgebraElement e(at);
  // group backtracking top paths by their level n-1 prefix
  std::map<std::size_t, std::vector<std::size_t>> by_prefix;
  for (std::size_t q = 0; q < top.parent.size(); ++q) {
    const std::size_t p1 = top.parent[q];
    const std::size_t p0 = mid.parent[p1];
    const bool backtrack =
        top.step[q].other == low.end_vertex[p0] && top.step[q].instance == mid.step[p1].instance;
    if (backtrack) by_prefix[p0].push_back(q);
  }
  for (const auto& [p0, qs] : by_prefix) {
    const Vertex u{static_cast<int>((n - 1) % 2), low.end_vertex[p0]};
    for (std::size_t qa : qs)
      for (std::size_t qb : qs) {
        const Vertex xa{parity_mid, mid.end_vertex[top.parent[qa]]};
        const Vertex xb{parity_mid, mid.end_vertex[top.parent[qb]]};
        const std::size_t blk = static_cast<std::size_t>(top.block_of_vertex[top.end_vertex[qa]]);
        e.block(blk)(top.local_index[qa], top.local_index[qb]) =
            std::sqrt(g.dim(xa) * g.dim(xb)) / (d * g.dim(u));
      }
  }
  return e;
}

}  // namespace

MarkovTower build_tower(const WeightedBipartiteGraph& g, std::size_t depth) {
  if (depth < 2) throw std::invalid_argument("build_tower: depth must be at least 2");
  g.validate();
  MarkovTower t;
  t.modulus = g.modulus;
  PathModel pm;
  pm.graph = g;
  pm.offset = 0;
  // level 0: the empty path at the basepoint
  PathLevel l0;
  l0.parent = {0};
  l0.step = {{g.basepoint, 0}};
  l0.end_vertex = {g.basepoint};
  l0.paths_by_vertex.assign(g.n_even(), {});
  l0.paths_by_vertex[g.basepoint] = {0};
  l0.block_of_vertex.assign(g.n_even(), -1);
  l0.block_of_vertex[g.basepoint] = 0;
  l0.vertex_of_block = {g.basepoint};
  l0.local_index = {0};
  pm.levels.push_back(std::move(l0));
  for (std::size_t k = 1; k <= depth; ++k)
    pm.levels.push_back(extend_path_level(g, pm.levels[k - 1], static_cast<int>(k % 2)));

  for (std::size_t k = 0; k <= depth; ++k)
    t.levels.push_back(algebra_for_level(g, pm.levels[k], k, static_cast<int>(k % 2), g.modulus));
  for (std::size_t k = 0; k < depth; ++k)
    t.inclusions.push_back(inclusion_for_step(t.levels[k], t.levels[k + 1], pm.levels[k], pm.levels[k + 1]));
  t.jones.resize(depth);  // jones[n] for 1 <= n <= depth-1
  for (std::size_t n = 1; n + 1 <= depth; ++n)
    t.jones[n] = jones_for_level(g, t.levels[n + 1], pm.levels, n, g.modulus);
  t.path = std::move(pm);
  return t;
}

Report verify_markov_axioms(const MarkovTower& t, double tolerance, int samples, std::uint64_t seed) {
  Report rep;
  rep.title = "markov-axioms";
  const std::size_t N = t.depth();
  const double d = t.modulus;
  std::mt19937_64 rng(seed);

  double r_norm = 0.0, r_restrict = 0.0;
  for (std::size_t k = 0; k <= N; ++k)
    r_norm = std::max(r_norm, std::abs(trace(AlgebraElement::identity(t.levels[k])) - cplx(1.0)));
  rep.add("trace-normalized", r_norm, tolerance);
  for (std::size_t k = 0; k < N; ++k) {
    auto lam = t.inclusions[k].inclusion_matrix();
    for (std::size_t l = 0; l < t.levels[k]->n_blocks(); ++l) {
      double s = 0.0;
      for (std::size_t u = 0; u < t.levels[k + 1]->n_blocks(); ++u)
        s += lam[l][u] * t.levels[k + 1]->trace_weight(u);
      r_restrict = std::max(r_restrict, std::abs(s - t.levels[k]->trace_weight(l)));
    }
  }
  rep.add("trace-restriction", r_restrict, tolerance);

  // M1: TLJ relations among the Jones projections
  double r_proj = 0.0, r_far = 0.0, r_adj = 0.0;
  for (std::size_t n = 1; n + 1 <= N; ++n) {
    const AlgebraElement& e = t.jones[n];
    r_proj = std::max(r_proj, norm_inf(e * e - e));
    r_proj = std::max(r_proj, norm_inf(adjoint(e) - e));
  }
  std::vector<std::pair<std::size_t, std::size_t>> far_pairs;
  for (std::size_t i = 1; i + 1 <= N; ++i)
    for (std::size_t j = i + 2; j + 1 <= N; ++j) far_pairs.push_back({i, j});
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(max : r_far)
#endif
  for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(far_pairs.size()); ++idx) {
    const auto [i, j] = far_pairs[static_cast<std::size_t>(idx)];
    const std::size_t lvl = j + 1;
    AlgebraElement ei = t.jones_at(i, lvl), ej = t.jones_at(j, lvl);
    r_far = std::max(r_far, norm_inf(ei * ej - ej * ei));
  }
  for (std::size_t i = 1; i + 2 <= N; ++i) {
    const std::size_t lvl = i + 2;
    AlgebraElement ei = t.jones_at(i, lvl), ej = t.jones_at(i + 1, lvl);
    r_adj = std::max(r_adj, norm_inf(ei * ej * ei - cplx(1.0 / (d * d)) * ei));
    r_adj = std::max(r_adj, norm_inf(ej * ei * ej - cplx(1.0 / (d * d)) * ej));
  }
  rep.add("M1-projections", r_proj, tolerance);
  rep.add("M1-commute-far", r_far, tolerance);
  rep.add("M1-adjacent", r_adj, tolerance);

  // M2: e_n x e_n = E_n(x) e_n on a spanning sample of M_n
  double r_m2 = 0.0;
  for (std::size_t n = 1; n + 1 <= N; ++n) {
    const AlgebraElement& e = t.jones[n];
    auto check = [&](const AlgebraElement& x) {
      AlgebraElement xl = t.include(x, n + 1);
      AlgebraElement ex = t.include(t.inclusions[n - 1].expect(x), n + 1);
      r_m2 = std::max(r_m2, norm_inf(e * xl * e - ex * e));
    };
    if (t.levels[n]->dim() <= 64) {
      for (std::size_t b = 0; b < t.levels[n]->n_blocks(); ++b)
        for (std::size_t r = 0; r < t.levels[n]->block_size(b); ++r)
          for (std::size_t c = 0; c < t.levels[n]->block_size(b); ++c)
            check(AlgebraElement::matrix_unit(t.levels[n], b, r, c));
    } else {
      for (int s = 0; s < samples; ++s) {
        AlgebraElement x = AlgebraElement::random(t.levels[n], rng);
        x *= cplx(1.0 / std::max(norm_inf(x), 1e-30));
        check(x);
      }
    }
  }
  rep.add("M2-implement-expectation", r_m2, tolerance);

  // M3: E_{n+1}(e_n) = d^{-2}
  double r_m3 = 0.0;
  for (std::size_t n = 1; n + 1 <= N; ++n) {
    AlgebraElement ex = t.inclusions[n].expect(t.jones[n]);
    r_m3 = std::max(r_m3, norm_inf(ex - cplx(1.0 / (d * d)) * AlgebraElement::identity(t.levels[n])));
  }
  rep.add("M3-markov-index", r_m3, tolerance);

  // M4 (pull down): x e_n = (d^2 E_{n+1}(x e_n)) e_n for x in M_{n+1}
  double r_m4 = 0.0;
  for (std::size_t n = 1; n + 1 <= N; ++n) {
    const AlgebraElement& e = t.jones[n];
    auto check = [&](AlgebraElement x) {
      x *= cplx(1.0 / std::max(norm_inf(x), 1e-30));
      AlgebraElement xe = x * e;
      AlgebraElement y = t.inclusions[n].expect(xe);
      y *= cplx(d * d);
      r_m4 = std::max(r_m4, norm_inf(xe - t.include(y, n + 1) * e));
    };
    if (t.levels[n + 1]->dim() <= 64) {
      for (std::size_t b = 0; b < t.levels[n + 1]->n_blocks(); ++b)
        for (std::size_t r = 0; r < t.levels[n + 1]->block_size(b); ++r)
          for (std::size_t c = 0; c < t.levels[n + 1]->block_size(b); ++c)
            check(AlgebraElement::matrix_unit(t.levels[n + 1], b, r, c));
    } else {
      for (int s = 0; s < samples; ++s) check(AlgebraElement::random(t.levels[n + 1], rng));
    }
  }
  rep.add("M4-pull-down", r_m4, tolerance);
  return rep;
}

NewStuffDims new_stuff_dimensions(const MarkovTower& t) {
  NewStuffDims out;
  const std::size_t N = t.depth();
  out.x_dim.assign(N + 1, 0);
  out.y_dim.assign(N + 1, 0);
  out.y_dim[0] = t.levels[0]->dim();
  if (N >= 1) out.y_dim[1] = t.levels[1]->dim();
  for (std::size_t n = 1; n + 1 <= N; ++n) {
    AlgebraElement z = central_support(t.jones[n]);
    std::size_t xd = 0;
    for (std::size_t b = 0; b < z.n_blocks(); ++b)
      if (norm_inf(z.block(b)) > 0.5) xd += t.levels[n + 1]->block_size(b) * t.levels[n + 1]->block_size(b);
    out.x_dim[n + 1] = xd;
    out.y_dim[n + 1] = t.levels[n + 1]->dim() - xd;
  }
  return out;
}

Report verify_elementary_properties(const MarkovTower& t, double tolerance, int samples,
                                    std::uint64_t seed) {
  Report rep;
  rep.title = "elementary-properties";
  const std::size_t N = t.depth();
  const double d = t.modulus;
  std::mt19937_64 rng(seed);
  auto dims = new_stuff_dimensions(t);

  double r_ep1 = 0.0, r_ep2 = 0.0, r_ep3 = 0.0, r_ep4 = 0.0, r_ep7 = 0.0;
  for (std::size_t n = 1; n + 1 <= N; ++n) {
    const AlgebraElement& e = t.jones[n];
    for (int s = 0; s < samples; ++s) {
      // EP1: y = d^2 E_{n+1}(y e_n) for y in M_n, so y -> y e_n is injective
      AlgebraElement y = AlgebraElement::random(t.levels[n], rng);
      y *= cplx(1.0 / std::max(norm_inf(y), 1e-30));
      AlgebraElement rec = t.inclusions[n].expect(t.include(y, n + 1) * e);
      rec *= cplx(d * d);
      r_ep1 = std::max(r_ep1, norm_inf(rec - y));

      // EP2: the pull-down witness reproduces x e_n
      AlgebraElement x = AlgebraElement::random(t.levels[n + 1], rng);
      x *= cplx(1.0 / std::max(norm_inf(x), 1e-30));
      AlgebraElement xe = x * e;
      AlgebraElement w = t.inclusions[n].expect(xe);
      w *= cplx(d * d);
      r_ep2 = std::max(r_ep2, norm_inf(xe - t.include(w, n + 1) * e));

      // EP3: Markov property tr_{n+1}(x e_n) = d^{-2} tr_n(x) for x in M_n
      r_ep3 = std::max(r_ep3, std::abs(trace(t.include(y, n + 1) * e) - trace(y) / (d * d)));

      // EP4: e_n M_{n+1} e_n = M_{n-1} e_n via the explicit witness
      AlgebraElement z = t.inclusions[n - 1].expect(w);  // in M_{n-1}
      r_ep4 = std::max(r_ep4, norm_inf(e * x * e - t.include(z, n + 1) * e));

      // EP7: tr_n(ab) = d^2 tr_{n+1}(a e_n b) on X_{n+1}
      AlgebraElement a = AlgebraElement::random(t.levels[n], rng);
      AlgebraElement b = AlgebraElement::random(t.levels[n], rng);
      a *= cplx(1.0 / std::max(norm_inf(a), 1e-30));
      b *= cplx(1.0 / std::max(norm_inf(b), 1e-30));
      const cplx lhs = trace(a * b);
      const cplx rhs = d * d * trace(t.include(a, n + 1) * e * t.include(b, n + 1));
      r_ep7 = std::max(r_ep7, std::abs(lhs - rhs));
    }
  }
  rep.add("EP1-injective", r_ep1, tolerance);
  rep.add("EP2-unique-pull-down", r_ep2, tolerance);
  rep.add("EP3-markov-property", r_ep3, tolerance);
  rep.add("EP4-compression", r_ep4, tolerance);

  // EP5/EP6: the ideal X_{n+1} is supported exactly on the blocks carrying
  // the labels of M_{n-1} (Bratteli reflection), and its dimension matches.
  bool ep5_ok = true;
  std::string ep5_note;
  for (std::size_t n = 1; n + 1 <= N; ++n) {
    AlgebraElement z = central_support(t.jones[n]);
    std::set<std::string> supported, predicted;
    for (std::size_t b = 0; b < z.n_blocks(); ++b)
      if (norm_inf(z.block(b)) > 0.5) supported.insert(t.levels[n + 1]->block_label(b));
    for (std::size_t b = 0; b < t.levels[n - 1]->n_blocks(); ++b)
      predicted.insert(t.levels[n - 1]->block_label(b));
    if (supported != predicted) {
      ep5_ok = false;
      ep5_note = "level " + std::to_string(n + 1);
    }
  }
  rep.add_flag("EP5-ideal-splitting", ep5_ok, ep5_note);
  bool ep6_ok = true;
  for (std::size_t n = 1; n + 1 <= N; ++n) {
    std::size_t predicted = 0;
    for (std::size_t b = 0; b < t.levels[n - 1]->n_blocks(); ++b) {
      const int ub = t.levels[n + 1]->block_by_label(t.levels[n - 1]->block_label(b));
      if (ub >= 0) {
        const std::size_t s = t.levels[n + 1]->block_size(static_cast<std::size_t>(ub));
        predicted += s * s;
      }
    }
    if (predicted != dims.x_dim[n + 1]) ep6_ok = false;
  }
  rep.add_flag("EP6-basic-construction-dimension", ep6_ok);
  rep.add("EP7-nonnormalized-trace", r_ep7, tolerance);

  // EP8: Y_{n+1} X_n = 0 and E_{n+1}(Y_{n+1}) inside Y_n
  double r_ep8 = 0.0;
  for (std::size_t n = 2; n + 1 <= N; ++n) {
    AlgebraElement zn1 = central_support(t.jones[n]);      // support of X_{n+1}
    AlgebraElement zn = central_support(t.jones[n - 1]);   // support of X_n in M_n
    AlgebraElement ycut = AlgebraElement::identity(t.levels[n + 1]) - zn1;
    r_ep8 = std::max(r_ep8, norm_inf(ycut * t.include(zn, n + 1)));
    for (int s = 0; s < samples; ++s) {
      AlgebraElement y = AlgebraElement::random(t.levels[n + 1], rng);
      y *= cplx(1.0 / std::max(norm_inf(y), 1e-30));
      y = ycut * y * ycut;
      r_ep8 = std::max(r_ep8, norm_inf(zn * t.inclusions[n].expect(y)));
    }
  }
  rep.add("EP8-new-from-old-new", r_ep8, tolerance);

  bool ep9_ok = true;
  bool seen_zero = false;
  for (std::size_t n = 2; n <= N; ++n) {
    if (dims.y_dim[n] == 0) seen_zero = true;
    else if (seen_zero) ep9_ok = false;
  }
  rep.add_flag("EP9-depth-stabilizes", ep9_ok);
  return rep;
}

std::optional<std::size_t> finite_depth(const MarkovTower& t) {
  auto dims = new_stuff_dimensions(t);
  for (std::size_t n = 2; n + 1 <= t.depth(); ++n)
    if (dims.y_dim[n] == 0) return n;
  return std::nullopt;
}

PrincipalGraphResult principal_graph(const MarkovTower& t) {
  if (!t.connected()) throw std::invalid_argument("principal graph requires a connected tower");
  PrincipalGraphResult out;
  auto fd = finite_depth(t);
  std::size_t k;
  if (fd) {
    k = *fd;
    out.truncated = false;
  } else {
    if (t.depth() < 2) throw std::invalid_argument("tower too shallow for a principal graph");
    k = t.depth() - 1;
    out.truncated = true;
  }
  out.read_level = k;
  const auto& lower = t.levels[k];
  const auto& upper = t.levels[k + 1];
  auto lam = t.inclusions[k].inclusion_matrix();
  WeightedBipartiteGraph g;
  const bool lower_even = (k % 2 == 0);
  const auto& ev = lower_even ? lower : upper;
  const auto& od = lower_even ? upper : lower;
  for (std::size_t b = 0; b < ev->n_blocks(); ++b) g.even.push_back(ev->block_label(b));
  for (std::size_t b = 0; b < od->n_blocks(); ++b) g.odd.push_back(od->block_label(b));
  g.mult.assign(g.n_even(), std::vector<int>(g.n_odd(), 0));
  for (std::size_t l = 0; l < lower->n_blocks(); ++l)
    for (std::size_t u = 0; u < upper->n_blocks(); ++u) {
      if (lower_even)
        g.mult[l][u] = lam[l][u];
      else
        g.mult[u][l] = lam[l][u];
    }
  const std::string base_label = t.levels[0]->block_label(0);
  int bp = -1;
  for (std::size_t b = 0; b < g.n_even(); ++b)
    if (g.even[b] == base_label) bp = static_cast<int>(b);
  if (bp < 0) throw std::runtime_error("basepoint label not present in the stabilized Bratteli step");
  g.basepoint = static_cast<std::size_t>(bp);
  // quantum dimensions recovered from the trace: dim(v) = d^k tr_k(p_min)
  const double d = t.modulus;
  g.dim_even.assign(g.n_even(), 0.0);
  g.dim_odd.assign(g.n_odd(), 0.0);
  const double dk_low = std::pow(d, static_cast<double>(k));
  const double dk_up = std::pow(d, static_cast<double>(k + 1));
  for (std::size_t b = 0; b < lower->n_blocks(); ++b) {
    const double dim = dk_low * lower->trace_weight(b);
    if (lower_even)
      g.dim_even[b] = dim;
    else
      g.dim_odd[b] = dim;
  }
  for (std::size_t b = 0; b < upper->n_blocks(); ++b) {
    const double dim = dk_up * upper->trace_weight(b);
    if (lower_even)
      g.dim_odd[b] = dim;
    else
      g.dim_even[b] = dim;
  }
  g.modulus = d;
  out.graph = std::move(g);
  return out;
}

MarkovTower shift(const MarkovTower& t, std::size_t k) {
  if (k == 0) return t;
  if (t.depth() < k + 2) throw std::invalid_argument("shift: k too large for built depth");
  MarkovTower s;
  s.modulus = t.modulus;
  s.levels.assign(t.levels.begin() + static_cast<std::ptrdiff_t>(k), t.levels.end());
  s.inclusions.assign(t.inclusions.begin() + static_cast<std::ptrdiff_t>(k), t.inclusions.end());
  s.jones.resize(s.depth());
  for (std::size_t n = 1; n + 1 <= s.depth(); ++n) s.jones[n] = t.jones[n + k];
  if (t.path) {
    PathModel pm = *t.path;
    pm.offset += k;
    s.path = std::move(pm);
  }
  return s;
}

AlgebraElement Compression::apply(const AlgebraElement& x, std::size_t level) const {
  AlgebraElement y(tower.levels[level]);
  for (std::size_t b = 0; b < x.n_blocks(); ++b) {
    if (keep[level][b] < 0) continue;
    const Matrix& v = isometries[level][b];
    y.block(static_cast<std::size_t>(keep[level][b])) = adjoint(v) * x.block(b) * v;
  }
  return y;
}

Compression compress_full(const MarkovTower& t, const AlgebraElement& p) {
  if (p.algebra() != t.levels[0]) throw std::invalid_argument("compress: projection must lie in the base level");
  if (!is_projection(p)) throw std::invalid_argument("compress: input is not a projection");
  if (norm_inf(p) < 1e-12) throw std::invalid_argument("compress: zero projection");
  const double trp = trace(p).real();

  MarkovTower c;
  c.modulus = t.modulus;
  const std::size_t N = t.depth();
  // isometries per level and block: columns span the range of the embedded p
  std::vector<std::vector<Matrix>> isom(N + 1);   // [level][block] (cols = rank)
  std::vector<std::vector<int>> keep(N + 1);      // compressed block index or -1
  AlgebraElement pl = p;
  for (std::size_t i = 0; i <= N; ++i) {
    if (i > 0) pl = t.inclusions[i - 1].embed(pl);
    const auto alg = t.levels[i];
    std::vector<MultiMatrixAlgebra::Block> blocks;
    std::vector<double> weights;
    isom[i].resize(alg->n_blocks());
    keep[i].assign(alg->n_blocks(), -1);
    for (std::size_t b = 0; b < alg->n_blocks(); ++b) {
      std::vector<double> vals;
      Matrix vecs;
      hermitian_eig(pl.block(b), vals, vecs);
      std::vector<std::size_t> cols;
      for (std::size_t j = 0; j < vals.size(); ++j)
        if (vals[j] > 0.5) cols.push_back(j);
      if (cols.empty()) continue;
      Matrix v(alg->block_size(b), cols.size());
      for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t r = 0; r < alg->block_size(b); ++r) v(r, j) = vecs(r, cols[j]);
      keep[i][b] = static_cast<int>(blocks.size());
      isom[i][b] = std::move(v);
      blocks.push_back({alg->block_label(b), cols.size()});
      weights.push_back(alg->trace_weight(b) / trp);
    }
    c.levels.push_back(std::make_shared<MultiMatrixAlgebra>(std::move(blocks), std::move(weights), true));
  }
  auto compress_elt = [&](const AlgebraElement& x, std::size_t level) {
    AlgebraElement y(c.levels[level]);
    const auto alg = t.levels[level];
    for (std::size_t b = 0; b < alg->n_blocks(); ++b) {
      if (keep[level][b] < 0) continue;
      const Matrix& v = isom[level][b];
      y.block(static_cast<std::size_t>(keep[level][b])) = adjoint(v) * x.block(b) * v;
    }
    return y;
  };
  for (std::size_t i = 0; i < N; ++i) {
    std::vector<std::vector<UnitalInclusion::Copy>> copies(c.levels[i + 1]->n_blocks());
    const auto& par = t.inclusions[i];
    for (std::size_t u = 0; u < t.levels[i + 1]->n_blocks(); ++u) {
      if (keep[i + 1][u] < 0) continue;
      for (const auto& pc : par.copies()[u]) {
        const std::size_t l = pc.lower_block;
        if (keep[i][l] < 0) continue;
        // V_new = Viso_{i+1,u}^* . V_parent . Viso_{i,l}
        const Matrix& vu = isom[i + 1][u];
        const Matrix& vl = isom[i][l];
        Matrix pv;
        if (pc.is_index()) {
          pv = Matrix(t.levels[i + 1]->block_size(u), t.levels[i]->block_size(l));
          for (std::size_t r = 0; r < pc.index_map.size(); ++r) pv(pc.index_map[r], r) = 1.0;
        } else {
          pv = pc.v;
        }
        UnitalInclusion::Copy nc;
        nc.lower_block = static_cast<std::size_t>(keep[i][l]);
        nc.v = adjoint(vu) * pv * vl;
        copies[static_cast<std::size_t>(keep[i + 1][u])].push_back(std::move(nc));
      }
    }
    c.inclusions.emplace_back(c.levels[i], c.levels[i + 1], std::move(copies));
  }
  c.jones.resize(N);
  for (std::size_t n = 1; n + 1 <= N; ++n) c.jones[n] = compress_elt(t.jones[n], n + 1);
  Compression out;
  out.tower = std::move(c);
  out.isometries = std::move(isom);
  out.keep = std::move(keep);
  return out;
}

MarkovTower compress(const MarkovTower& t, const AlgebraElement& p) {
  return compress_full(t, p).tower;
}

AlgebraElement cabled_projection_in_tower(const MarkovTower& t, std::size_t j, std::size_t k) {
  if (j + 2 * k > t.depth()) throw std::invalid_argument("cabled projection: insufficient depth");
  const std::size_t lvl = j + 2 * k;
  AlgebraElement w = AlgebraElement::identity(t.levels[lvl]);
  for (std::size_t tgrp = 0; tgrp < k; ++tgrp)
    for (std::size_t i = j + k + tgrp; i >= j + 1 + tgrp; --i) w = w * t.jones_at(i, lvl);
  w *= cplx(std::pow(t.modulus, static_cast<double>(k * (k - 1))));
  return w;
}

MarkovTower multistep(const MarkovTower& t, std::size_t j, std::size_t k) {
  if (k < 1) throw std::invalid_argument("multistep: k must be positive");
  const std::size_t K = (t.depth() - j) / k;
  if (j > t.depth() || K < 2) throw std::invalid_argument("multistep: insufficient depth");
  MarkovTower m;
  m.modulus = std::pow(t.modulus, static_cast<double>(k));
  for (std::size_t n = 0; n <= K; ++n) m.levels.push_back(t.levels[j + n * k]);
  for (std::size_t n = 0; n < K; ++n) {
    // compose k single-step inclusions
    std::size_t base = j + n * k;
    UnitalInclusion comp = t.inclusions[base];
    for (std::size_t s = 1; s < k; ++s) {
      const UnitalInclusion& next = t.inclusions[base + s];
      std::vector<std::vector<UnitalInclusion::Copy>> copies(next.upper()->n_blocks());
      for (std::size_t u = 0; u < next.upper()->n_blocks(); ++u) {
        for (const auto& c2 : next.copies()[u]) {
          for (const auto& c1 : comp.copies()[c2.lower_block]) {
            UnitalInclusion::Copy nc;
            nc.lower_block = c1.lower_block;
            if (c1.is_index() && c2.is_index()) {
              nc.index_map.resize(c1.index_map.size());
              for (std::size_t r = 0; r < c1.index_map.size(); ++r)
                nc.index_map[r] = c2.index_map[c1.index_map[r]];
            } else {
              auto to_dense = [](const UnitalInclusion::Copy& c, std::size_t up, std::size_t low) {
                if (!c.is_index()) return c.v;
                Matrix v(up, low);
                for (std::size_t r = 0; r < c.index_map.size(); ++r) v(c.index_map[r], r) = 1.0;
                return v;
              };
              const Matrix v1 = to_dense(c1, comp.upper()->block_size(c2.lower_block),
                                          comp.lower()->block_size(c1.lower_block));
              const Matrix v2 = to_dense(c2, next.upper()->block_size(u),
                                          next.lower()->block_size(c2.lower_block));
              nc.v = v2 * v1;
            }
            copies[u].push_back(std::move(nc));
          }
        }
      }
      comp = UnitalInclusion(comp.lower(), next.upper(), std::move(copies));
    }
    m.inclusions.push_back(std::move(comp));
  }
  m.jones.resize(K);
  for (std::size_t n = 1; n + 1 <= K; ++n)
    m.jones[n] = cabled_projection_in_tower(t, j + (n - 1) * k, k);
  return m;
}

std::string bratteli_dot(const MarkovTower& t) {
  std::ostringstream os;
  os << "graph Bratteli {\n  rankdir=BT;\n";
  for (std::size_t k = 0; k <= t.depth(); ++k) {
    os << "  { rank=same;";
    for (std::size_t b = 0; b < t.levels[k]->n_blocks(); ++b)
      os << " \"L" << k << ":" << t.levels[k]->block_label(b) << "\"";
    os << " }\n";
    for (std::size_t b = 0; b < t.levels[k]->n_blocks(); ++b)
      os << "  \"L" << k << ":" << t.levels[k]->block_label(b) << "\" [label=\""
         << t.levels[k]->block_label(b) << "\\n" << t.levels[k]->block_size(b) << "\"];\n";
  }
  for (std::size_t k = 0; k < t.depth(); ++k) {
    auto lam = t.inclusions[k].inclusion_matrix();
    for (std::size_t l = 0; l < t.levels[k]->n_blocks(); ++l)
      for (std::size_t u = 0; u < t.levels[k + 1]->n_blocks(); ++u)
        if (lam[l][u] > 0) {
          os << "  \"L" << k << ":" << t.levels[k]->block_label(l) << "\" -- \"L" << k + 1 << ":"
             << t.levels[k + 1]->block_label(u) << "\"";
          if (lam[l][u] > 1) os << " [label=\"" << lam[l][u] << "\"]";
          os << ";\n";
        }
  }
  os << "}\n";
  return os.str();
}

}  // namespace mtower
