#include "mtower/gpa.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mtower {

namespace {

double class_mass(const WeightedBipartiteGraph& g) {
  // sum of dim^2 over one class; equal for both classes of a bipartite
  // Perron vector, so the vertex weights dim(v)^2 / mass are consistent
  // across shadings.
  double s = 0.0;
  for (double v : g.dim_even) s += v * v;
  return s;
}

}  // namespace

LoopSpace::LoopSpace(WeightedBipartiteGraph graph, std::size_t n, int shading)
    : graph_(std::move(graph)), n_(n), shading_(shading) {
  graph_.validate();
  const int base_parity = shading_ > 0 ? 0 : 1;
  const std::size_t n_base = base_parity == 0 ? graph_.n_even() : graph_.n_odd();
  const int mid_parity = (base_parity + static_cast<int>(n_)) % 2;
  const std::size_t n_mid = mid_parity == 0 ? graph_.n_even() : graph_.n_odd();
  std::vector<MultiMatrixAlgebra::Block> blocks;
  std::vector<double> weights;
  const double d = graph_.modulus;
  const double mass = class_mass(graph_);
  for (std::size_t v = 0; v < n_base; ++v) {
    auto walks = walks_from(graph_, {base_parity, v}, n_);
    std::vector<std::vector<Walk>> by_mid(n_mid);
    for (auto& w : walks) by_mid[w.verts.back()].push_back(std::move(w));
    for (std::size_t m = 0; m < n_mid; ++m) {
      if (by_mid[m].empty()) continue;
      BlockInfo bi;
      bi.base = v;
      bi.mid = m;
      bi.walks = std::move(by_mid[m]);
      const std::string label =
          graph_.label({base_parity, v}) + "|" + graph_.label({mid_parity, m});
      blocks.push_back({label, bi.walks.size()});
      const double t = std::pow(d, -static_cast<double>(n_)) * graph_.dim({base_parity, v}) *
                       graph_.dim({mid_parity, m}) / mass;
      weights.push_back(t);
      info_.push_back(std::move(bi));
    }
  }
  view_ = std::make_shared<MultiMatrixAlgebra>(std::move(blocks), std::move(weights), true);
}

std::size_t box_dimension(const WeightedBipartiteGraph& g, std::size_t n, int shading) {
  LoopSpace s(g, n, shading);
  return s.n_loops();
}

GPAElement gpa_zero(LoopSpacePtr space) {
  AlgebraElement e = AlgebraElement::zero(space->view());
  return {std::move(space), std::move(e)};
}

GPAElement gpa_identity(LoopSpacePtr space) {
  AlgebraElement e = AlgebraElement::identity(space->view());
  return {std::move(space), std::move(e)};
}

GPAElement gpa_loop_indicator(LoopSpacePtr space, std::size_t block, std::size_t p, std::size_t q) {
  AlgebraElement e = AlgebraElement::matrix_unit(space->view(), block, p, q);
  return {std::move(space), std::move(e)};
}

GPAElement gpa_multiply(const GPAElement& x, const GPAElement& y) {
  if (x.space != y.space) throw std::invalid_argument("gpa: parent loop space mismatch");
  return {x.space, x.elt * y.elt};
}

GPAElement gpa_adjoint(const GPAElement& x) { return {x.space, adjoint(x.elt)}; }

cplx gpa_trace(const GPAElement& x) { return trace(x.elt); }

double gpa_norm_inf(const GPAElement& x) { return norm_inf(x.elt); }

GPAElement operator-(const GPAElement& x, const GPAElement& y) {
  if (x.space != y.space) throw std::invalid_argument("gpa: parent loop space mismatch");
  return {x.space, x.elt - y.elt};
}

GPAElement gpa_jones_projection(LoopSpacePtr space, std::size_t k) {
  const auto& g = space->graph();
  const std::size_t n = space->half_length();
  if (n != k + 1) throw std::invalid_argument("gpa_jones_projection: box must have half-length k+1");
  if (k < 1) throw std::invalid_argument("gpa_jones_projection: k >= 1 required");
  const double d = g.modulus;
  const int base_parity = space->shading() > 0 ? 0 : 1;
  AlgebraElement e = AlgebraElement::zero(space->view());
  for (std::size_t b = 0; b < space->block_info().size(); ++b) {
    const auto& bi = space->block_info()[b];
    const auto& walks = bi.walks;
    for (std::size_t p = 0; p < walks.size(); ++p)
      for (std::size_t q = 0; q < walks.size(); ++q) {
        const Walk& a = walks[p];
        const Walk& c = walks[q];
        // both walks must backtrack at position k and share the first k-1 steps
        bool ok = a.verts[k + 1] == a.verts[k - 1] && a.steps[k].instance == a.steps[k - 1].instance;
        ok = ok && c.verts[k + 1] == c.verts[k - 1] && c.steps[k].instance == c.steps[k - 1].instance;
        for (std::size_t i = 0; ok && i + 1 < k; ++i)
          ok = a.steps[i].other == c.steps[i].other && a.steps[i].instance == c.steps[i].instance;
        if (!ok) continue;
        const int up = (base_parity + static_cast<int>(k - 1)) % 2;
        const Vertex u{up, a.verts[k - 1]};
        const Vertex xa{1 - up, a.verts[k]};
        const Vertex xc{1 - up, c.verts[k]};
        e.block(b)(p, q) = std::sqrt(g.dim(xa) * g.dim(xc)) / (d * g.dim(u));
      }
  }
  return {std::move(space), std::move(e)};
}

GPAElement gpa_jones_projection(const WeightedBipartiteGraph& g, std::size_t k, int shading) {
  auto space = std::make_shared<LoopSpace>(g, k + 1, shading);
  return gpa_jones_projection(space, k);
}

namespace {

bool same_step(const WeightedBipartiteGraph::Step& a, const WeightedBipartiteGraph::Step& b) {
  return a.other == b.other && a.instance == b.instance;
}

// walk lookup inside a loop space: block and position of a given walk
struct WalkIndex {
  std::map<std::vector<int>, std::pair<std::size_t, std::size_t>> pos;
  static std::vector<int> key(std::size_t base, const Walk& w) {
    std::vector<int> k{static_cast<int>(base)};
    for (const auto& s : w.steps) {
      k.push_back(static_cast<int>(s.other));
      k.push_back(s.instance);
    }
    return k;
  }
  explicit WalkIndex(const LoopSpace& s) {
    for (std::size_t b = 0; b < s.block_info().size(); ++b) {
      const auto& bi = s.block_info()[b];
      for (std::size_t p = 0; p < bi.walks.size(); ++p) pos[key(bi.base, bi.walks[p])] = {b, p};
    }
  }
};

}  // namespace

GPAElement gpa_include_right(const GPAElement& x, LoopSpacePtr target) {
  const auto& src = *x.space;
  const auto& dst = *target;
  if (dst.half_length() != src.half_length() + 1 || dst.shading() != src.shading())
    throw std::invalid_argument("gpa_include_right: target must be the next box of equal shading");
  WalkIndex idx(dst);
  GPAElement out = gpa_zero(target);
  const auto& g = src.graph();
  const int mid_parity = ((src.shading() > 0 ? 0 : 1) + static_cast<int>(src.half_length())) % 2;
  for (std::size_t b = 0; b < src.block_info().size(); ++b) {
    const auto& bi = src.block_info()[b];
    const Matrix& m = x.elt.block(b);
    for (auto step : g.steps_from({mid_parity, bi.mid})) {
      // extended walk/block positions
      for (std::size_t p = 0; p < bi.walks.size(); ++p) {
        Walk wp = bi.walks[p];
        wp.steps.push_back(step);
        wp.verts.push_back(step.other);
        const auto [blk_p, pos_p] = idx.pos.at(WalkIndex::key(bi.base, wp));
        for (std::size_t q = 0; q < bi.walks.size(); ++q) {
          if (m(p, q) == cplx(0.0)) continue;
          Walk wq = bi.walks[q];
          wq.steps.push_back(step);
          wq.verts.push_back(step.other);
          const auto [blk_q, pos_q] = idx.pos.at(WalkIndex::key(bi.base, wq));
          if (blk_p != blk_q) throw std::logic_error("gpa_include_right: block mismatch");
          out.elt.block(blk_p)(pos_p, pos_q) += m(p, q);
        }
      }
    }
  }
  return out;
}

GPAElement gpa_cap_right(const GPAElement& x, LoopSpacePtr target) {
  const auto& src = *x.space;
  const auto& dst = *target;
  if (dst.half_length() + 1 != src.half_length() || dst.shading() != src.shading())
    throw std::invalid_argument("gpa_cap_right: target must be the previous box of equal shading");
  WalkIndex idx(dst);
  GPAElement out = gpa_zero(target);
  const auto& g = src.graph();
  const double d = g.modulus;
  const std::size_t n = src.half_length();
  const int prev_parity = ((src.shading() > 0 ? 0 : 1) + static_cast<int>(n - 1)) % 2;
  for (std::size_t b = 0; b < src.block_info().size(); ++b) {
    const auto& bi = src.block_info()[b];
    const Matrix& m = x.elt.block(b);
    for (std::size_t p = 0; p < bi.walks.size(); ++p)
      for (std::size_t q = 0; q < bi.walks.size(); ++q) {
        if (m(p, q) == cplx(0.0)) continue;
        const Walk& wp = bi.walks[p];
        const Walk& wq = bi.walks[q];
        // the capped strands must carry the same edge, including the source vertex
        if (wp.verts[n - 1] != wq.verts[n - 1] || !same_step(wp.steps[n - 1], wq.steps[n - 1]))
          continue;
        Walk tp{{wp.steps.begin(), wp.steps.end() - 1}, {wp.verts.begin(), wp.verts.end() - 1}};
        Walk tq{{wq.steps.begin(), wq.steps.end() - 1}, {wq.verts.begin(), wq.verts.end() - 1}};
        const auto [blk_p, pos_p] = idx.pos.at(WalkIndex::key(bi.base, tp));
        const auto [blk_q, pos_q] = idx.pos.at(WalkIndex::key(bi.base, tq));
        if (blk_p != blk_q) throw std::logic_error("gpa_cap_right: block mismatch");
        const Vertex far{1 - prev_parity, wp.verts[n]};
        const Vertex near{prev_parity, wp.verts[n - 1]};
        out.elt.block(blk_p)(pos_p, pos_q) += m(p, q) * (g.dim(far) / (d * g.dim(near)));
      }
  }
  return out;
}

GPAElement gpa_include_left(const GPAElement& x, LoopSpacePtr target) {
  const auto& src = *x.space;
  const auto& dst = *target;
  if (dst.half_length() != src.half_length() + 1 || dst.shading() != -src.shading())
    throw std::invalid_argument("gpa_include_left: target must be the next box of opposite shading");
  WalkIndex idx(dst);
  GPAElement out = gpa_zero(target);
  const auto& g = src.graph();
  const int base_parity = src.shading() > 0 ? 0 : 1;
  for (std::size_t b = 0; b < src.block_info().size(); ++b) {
    const auto& bi = src.block_info()[b];
    const Matrix& m = x.elt.block(b);
    for (auto step : g.steps_from({base_parity, bi.base})) {
      // step goes from the old base to the new base in the opposite class;
      // the prepended loop runs new_base -> old_base -> ... -> old_base -> new_base,
      // i.e. the extended walks start with the reversed step.
      const std::size_t new_base = step.other;
      auto prepend = [&](const Walk& w) {
        Walk r;
        r.verts.push_back(new_base);
        r.verts.insert(r.verts.end(), w.verts.begin(), w.verts.end());
        WeightedBipartiteGraph::Step back{bi.base, step.instance};
        r.steps.push_back(back);
        r.steps.insert(r.steps.end(), w.steps.begin(), w.steps.end());
        return r;
      };
      for (std::size_t p = 0; p < bi.walks.size(); ++p) {
        const auto [blk_p, pos_p] = idx.pos.at(WalkIndex::key(new_base, prepend(bi.walks[p])));
        for (std::size_t q = 0; q < bi.walks.size(); ++q) {
          if (m(p, q) == cplx(0.0)) continue;
          const auto [blk_q, pos_q] = idx.pos.at(WalkIndex::key(new_base, prepend(bi.walks[q])));
          if (blk_p != blk_q) throw std::logic_error("gpa_include_left: block mismatch");
          out.elt.block(blk_p)(pos_p, pos_q) += m(p, q);
        }
      }
    }
  }
  return out;
}

GPAElement gpa_cap_left(const GPAElement& x, LoopSpacePtr target) {
  const auto& src = *x.space;
  const auto& dst = *target;
  if (dst.half_length() + 1 != src.half_length() || dst.shading() != -src.shading())
    throw std::invalid_argument("gpa_cap_left: target must be the previous box of opposite shading");
  WalkIndex idx(dst);
  GPAElement out = gpa_zero(target);
  const auto& g = src.graph();
  const double d = g.modulus;
  const int base_parity = src.shading() > 0 ? 0 : 1;
  for (std::size_t b = 0; b < src.block_info().size(); ++b) {
    const auto& bi = src.block_info()[b];
    const Matrix& m = x.elt.block(b);
    const Vertex base{base_parity, bi.base};
    for (std::size_t p = 0; p < bi.walks.size(); ++p)
      for (std::size_t q = 0; q < bi.walks.size(); ++q) {
        if (m(p, q) == cplx(0.0)) continue;
        const Walk& wp = bi.walks[p];
        const Walk& wq = bi.walks[q];
        if (!same_step(wp.steps[0], wq.steps[0])) continue;
        auto drop = [](const Walk& w) {
          return Walk{{w.steps.begin() + 1, w.steps.end()}, {w.verts.begin() + 1, w.verts.end()}};
        };
        const std::size_t new_base = wp.verts[1];
        const auto [blk_p, pos_p] = idx.pos.at(WalkIndex::key(new_base, drop(wp)));
        const auto [blk_q, pos_q] = idx.pos.at(WalkIndex::key(new_base, drop(wq)));
        if (blk_p != blk_q) throw std::logic_error("gpa_cap_left: block mismatch");
        const Vertex v1{1 - base_parity, new_base};
        out.elt.block(blk_p)(pos_p, pos_q) += m(p, q) * (g.dim(base) / (d * g.dim(v1)));
      }
  }
  return out;
}

MarkovTower gpa_as_markov_tower(const WeightedBipartiteGraph& g, std::size_t depth) {
  if (depth < 2) throw std::invalid_argument("gpa_as_markov_tower: depth must be at least 2");
  MarkovTower t;
  t.modulus = g.modulus;
  std::vector<LoopSpacePtr> spaces;
  for (std::size_t n = 0; n <= depth; ++n)
    spaces.push_back(std::make_shared<LoopSpace>(g, n, +1));
  for (auto& s : spaces) t.levels.push_back(s->view());
  // right inclusions as index-map copies: block (v,w) of level n sits inside
  // block (v,w') of level n+1 once per edge instance w-w'
  for (std::size_t n = 0; n < depth; ++n) {
    const auto& lo = *spaces[n];
    const auto& hi = *spaces[n + 1];
    WalkIndex idx(hi);
    std::vector<std::vector<UnitalInclusion::Copy>> copies(hi.view()->n_blocks());
    const int mid_parity = static_cast<int>(n % 2);
    for (std::size_t b = 0; b < lo.block_info().size(); ++b) {
      const auto& bi = lo.block_info()[b];
      for (auto step : g.steps_from({mid_parity, bi.mid})) {
        UnitalInclusion::Copy cp;
        cp.lower_block = b;
        cp.index_map.resize(bi.walks.size());
        std::size_t target_block = 0;
        for (std::size_t p = 0; p < bi.walks.size(); ++p) {
          Walk w = bi.walks[p];
          w.steps.push_back(step);
          w.verts.push_back(step.other);
          const auto [blk, pos] = idx.pos.at(WalkIndex::key(bi.base, w));
          target_block = blk;
          cp.index_map[p] = static_cast<std::uint32_t>(pos);
        }
        copies[target_block].push_back(std::move(cp));
      }
    }
    t.inclusions.emplace_back(t.levels[n], t.levels[n + 1], std::move(copies));
  }
  t.jones.resize(depth);
  for (std::size_t n = 1; n + 1 <= depth; ++n)
    t.jones[n] = gpa_jones_projection(spaces[n + 1], n).elt;
  return t;
}

std::string gpa_basis_json(const LoopSpace& space) {
  nlohmann::ordered_json j;
  j["half_length"] = space.half_length();
  j["shading"] = space.shading() > 0 ? "+" : "-";
  nlohmann::ordered_json loops = nlohmann::json::array();
  const int base_parity = space.shading() > 0 ? 0 : 1;
  for (const auto& bi : space.block_info()) {
    for (std::size_t p = 0; p < bi.walks.size(); ++p)
      for (std::size_t q = 0; q < bi.walks.size(); ++q) {
        nlohmann::ordered_json loop;
        auto vertex_label = [&](std::size_t pos, const Walk& w) {
          const int par = (base_parity + static_cast<int>(pos)) % 2;
          return space.graph().label({par, w.verts[pos]});
        };
        nlohmann::ordered_json seq = nlohmann::json::array();
        for (std::size_t i = 0; i <= space.half_length(); ++i)
          seq.push_back(vertex_label(i, bi.walks[p]));
        for (std::size_t i = space.half_length(); i-- > 0;) seq.push_back(vertex_label(i, bi.walks[q]));
        loop["vertices"] = seq;
        loops.push_back(loop);
      }
  }
  j["loops"] = loops;
  return j.dump(2);
}

std::string gpa_element_json(const GPAElement& x) {
  nlohmann::ordered_json j = nlohmann::json::array();
  const auto& space = *x.space;
  const int base_parity = space.shading() > 0 ? 0 : 1;
  auto walk_labels = [&](const Walk& w) {
    nlohmann::ordered_json seq = nlohmann::json::array();
    for (std::size_t i = 0; i < w.verts.size(); ++i) {
      const int par = (base_parity + static_cast<int>(i)) % 2;
      seq.push_back(space.graph().label({par, w.verts[i]}));
    }
    return seq;
  };
  for (std::size_t b = 0; b < space.block_info().size(); ++b) {
    const auto& bi = space.block_info()[b];
    for (std::size_t p = 0; p < bi.walks.size(); ++p)
      for (std::size_t q = 0; q < bi.walks.size(); ++q) {
        const cplx v = x.elt.block(b)(p, q);
        if (v == cplx(0.0)) continue;
        nlohmann::ordered_json e;
        e["out"] = walk_labels(bi.walks[p]);
        e["back"] = walk_labels(bi.walks[q]);
        e["coeff"] = {v.real(), v.imag()};
        j.push_back(e);
      }
  }
  return j.dump();
}

Report verify_gpa(const WeightedBipartiteGraph& g, std::size_t max_n, double tolerance,
                  std::uint64_t seed) {
  Report rep;
  rep.title = "gpa";
  std::mt19937_64 rng(seed);
  const double d = g.modulus;

  // box dimensions equal the adjacency-power loop counts, exactly:
  // trace of (Lambda Lambda^T)^n on the even side, (Lambda^T Lambda)^n on the odd side
  auto gram_trace_power = [&](bool even_side, std::size_t n) {
    const std::size_t m = even_side ? g.n_even() : g.n_odd();
    const std::size_t other = even_side ? g.n_odd() : g.n_even();
    std::vector<std::vector<long>> gram(m, std::vector<long>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t o = 0; o < other; ++o)
          gram[i][j] += static_cast<long>(even_side ? g.mult[i][o] : g.mult[o][i]) *
                        (even_side ? g.mult[j][o] : g.mult[o][j]);
    std::vector<std::vector<long>> acc(m, std::vector<long>(m, 0));
    for (std::size_t i = 0; i < m; ++i) acc[i][i] = 1;
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::vector<long>> nxt(m, std::vector<long>(m, 0));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t k = 0; k < m; ++k) nxt[i][j] += acc[i][k] * gram[k][j];
      acc = std::move(nxt);
    }
    long tr = 0;
    for (std::size_t i = 0; i < m; ++i) tr += acc[i][i];
    return tr;
  };
  bool dims_ok = true;
  for (std::size_t n = 0; n <= max_n; ++n) {
    if (static_cast<long>(box_dimension(g, n, +1)) != gram_trace_power(true, n)) dims_ok = false;
    if (static_cast<long>(box_dimension(g, n, -1)) != gram_trace_power(false, n)) dims_ok = false;
  }
  rep.add_flag("box-dimension-loop-count", dims_ok);

  // generator compatibility on random elements
  std::vector<LoopSpacePtr> plus, minus;
  for (std::size_t n = 0; n <= max_n + 2; ++n) {
    plus.push_back(std::make_shared<LoopSpace>(g, n, +1));
    minus.push_back(std::make_shared<LoopSpace>(g, n, -1));
  }
  double r_ei = 0.0, r_cap = 0.0, r_comm = 0.0, r_pos = 0.0, r_trace = 0.0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    GPAElement x{plus[n], AlgebraElement::random(plus[n]->view(), rng)};
    x.elt *= cplx(1.0 / std::max(gpa_norm_inf(x), 1e-30));
    // E o iota = id on both sides
    r_cap = std::max(r_cap, gpa_norm_inf(gpa_cap_right(gpa_include_right(x, plus[n + 1]), plus[n]) - x));
    GPAElement xm{minus[n], AlgebraElement::random(minus[n]->view(), rng)};
    xm.elt *= cplx(1.0 / std::max(gpa_norm_inf(xm), 1e-30));
    r_cap = std::max(r_cap, gpa_norm_inf(gpa_cap_left(gpa_include_left(xm, plus[n + 1]), minus[n]) - xm));
    // left and right inclusions commute
    GPAElement a = gpa_include_right(gpa_include_left(xm, plus[n + 1]), plus[n + 2]);
    GPAElement b = gpa_include_left(gpa_include_right(xm, minus[n + 1]), plus[n + 2]);
    r_comm = std::max(r_comm, gpa_norm_inf(a - b));
    // capping after including on the opposite side commutes
    GPAElement c1 = gpa_cap_right(gpa_include_left(xm, plus[n + 1]), plus[n]);
    GPAElement c2 = gpa_include_left(gpa_cap_right(xm, minus[n - 1]), plus[n]);
    r_comm = std::max(r_comm, gpa_norm_inf(c1 - c2));
  }
  rep.add("cap-include-identity", r_cap, tolerance);
  rep.add("generator-commutation", r_comm, tolerance);

  // Jones projections satisfy the TLJ relations
  for (std::size_t k = 1; k + 1 <= max_n; ++k) {
    auto e = gpa_jones_projection(plus[k + 1], k);
    r_ei = std::max(r_ei, gpa_norm_inf(gpa_multiply(e, e) - e));
    r_ei = std::max(r_ei, gpa_norm_inf(gpa_adjoint(e) - e));
    auto e_up = gpa_include_right(e, plus[k + 2]);
    auto f = gpa_jones_projection(plus[k + 2], k + 1);
    GPAElement lhs = gpa_multiply(gpa_multiply(e_up, f), e_up);
    GPAElement rhs = e_up;
    rhs.elt *= cplx(1.0 / (d * d));
    r_ei = std::max(r_ei, gpa_norm_inf(lhs - rhs));
  }
  rep.add("jones-relations", r_ei, tolerance);

  // trace: tracial, positive definite, and tr(e_1) = d^{-2} * tr(1)
  for (std::size_t n = 1; n <= max_n; ++n) {
    GPAElement x{plus[n], AlgebraElement::random(plus[n]->view(), rng)};
    GPAElement y{plus[n], AlgebraElement::random(plus[n]->view(), rng)};
    r_trace = std::max(r_trace, std::abs(gpa_trace(gpa_multiply(x, y)) - gpa_trace(gpa_multiply(y, x))));
    if (gpa_trace(gpa_multiply(x, gpa_adjoint(x))).real() <= 0.0) r_pos = std::max(r_pos, 1.0);
    // the Gram form of the loop basis is diagonal with the trace weights,
    // so positive-definiteness reduces to strictly positive weights
    for (std::size_t b = 0; b < plus[n]->view()->n_blocks(); ++b)
      if (plus[n]->view()->trace_weight(b) <= 0.0) r_pos = std::max(r_pos, 1.0);
  }
  auto e1 = gpa_jones_projection(plus[2], 1);
  r_trace = std::max(r_trace, std::abs(gpa_trace(e1) - cplx(1.0 / (d * d))));
  rep.add("trace-tracial-and-markov", r_trace, tolerance);
  rep.add("trace-positive", r_pos, tolerance);
  return rep;
}

}  // namespace mtower
