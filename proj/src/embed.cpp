#include "mtower/embed.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace mtower {

namespace {

AlgebraElement psd_invsqrt_elt(const AlgebraElement& q, double tol = 1e-10) {
  AlgebraElement s(q.algebra());
  for (std::size_t b = 0; b < q.n_blocks(); ++b) s.block(b) = psd_invsqrt(q.block(b), tol);
  return s;
}

}  // namespace

PimsnerPopaBasis pimsner_popa_basis(const MarkovTower& t, std::size_t lo, std::size_t hi,
                                    double tol) {
  if (hi <= lo || hi > t.depth()) throw std::invalid_argument("pimsner_popa_basis: bad levels");
  const auto upper = t.levels[hi];
  auto expect = [&](const AlgebraElement& x) { return t.expect_down(x, lo); };
  auto lift = [&](const AlgebraElement& y) { return t.include(y, hi); };

  PimsnerPopaBasis out;
  out.lo = lo;
  out.hi = hi;
  for (std::size_t blk = 0; blk < upper->n_blocks(); ++blk)
    for (std::size_t r = 0; r < upper->block_size(blk); ++r)
      for (std::size_t c = 0; c < upper->block_size(blk); ++c) {
        AlgebraElement u = AlgebraElement::matrix_unit(upper, blk, r, c);
        for (const auto& b : out.basis) u -= b * lift(expect(adjoint(b) * u));
        AlgebraElement q = expect(adjoint(u) * u);
        if (norm_inf(q) < tol) continue;
        out.basis.push_back(u * lift(psd_invsqrt_elt(q)));
      }
  AlgebraElement idx = AlgebraElement::zero(upper);
  for (const auto& b : out.basis) idx += b * adjoint(b);
  out.watatani = (trace(idx) / trace(AlgebraElement::identity(upper))).real();
  return out;
}

Report verify_strongly_markov(const MarkovTower& t, const PimsnerPopaBasis& ppb, double tolerance,
                              std::uint64_t seed) {
  Report rep;
  rep.title = "strongly-markov";
  std::mt19937_64 rng(seed);
  const auto upper = t.levels[ppb.hi];

  // reconstruction x = sum_b b E(b* x)
  double r_rec = 0.0;
  for (int s = 0; s < 4; ++s) {
    AlgebraElement x = AlgebraElement::random(upper, rng);
    x *= cplx(1.0 / std::max(norm_inf(x), 1e-30));
    AlgebraElement acc = AlgebraElement::zero(upper);
    for (const auto& b : ppb.basis)
      acc += b * t.include(t.expect_down(adjoint(b) * x, ppb.lo), ppb.hi);
    r_rec = std::max(r_rec, norm_inf(acc - x));
  }
  rep.add("pp-reconstruction", r_rec, tolerance);

  // scalar Watatani index, d^2 per step
  AlgebraElement idx = AlgebraElement::zero(upper);
  for (const auto& b : ppb.basis) idx += b * adjoint(b);
  const double want = std::pow(t.modulus, 2.0 * static_cast<double>(ppb.hi - ppb.lo));
  rep.add("pp-watatani-scalar",
          norm_inf(idx - cplx(ppb.watatani) * AlgebraElement::identity(upper)), tolerance);
  rep.add("pp-watatani-value", std::abs(ppb.watatani - want), 1e-8 * std::max(1.0, want));

  // sum_b b e b* equals the central support of e in the basic construction
  if (ppb.hi - ppb.lo == 1 && ppb.hi + 1 <= t.depth()) {
    const AlgebraElement& e = t.jones[ppb.hi];
    AlgebraElement acc = AlgebraElement::zero(t.levels[ppb.hi + 1]);
    for (const auto& b : ppb.basis) {
      AlgebraElement bl = t.include(b, ppb.hi + 1);
      acc += bl * e * adjoint(bl);
    }
    rep.add("pp-basic-construction-unit", norm_inf(acc - central_support(e)), tolerance);
  }
  return rep;
}

StandardLevel find_standard_level(const MarkovTower& t, double tolerance) {
  StandardLevel out;
  std::mt19937_64 rng(0);
  const double d = t.modulus;
  for (std::size_t r = 0; 2 * r + 2 <= t.depth(); ++r) {
    const AlgebraElement& p = t.jones[2 * r + 1];  // in M_{2r+2}
    double resid = 0.0;
    // compression: p x p = E(x) p on M_{2r+1}
    for (int s = 0; s < 3; ++s) {
      AlgebraElement x = AlgebraElement::random(t.levels[2 * r + 1], rng);
      x *= cplx(1.0 / std::max(norm_inf(x), 1e-30));
      AlgebraElement xl = t.include(x, 2 * r + 2);
      AlgebraElement el = t.include(t.inclusions[2 * r].expect(x), 2 * r + 2);
      resid = std::max(resid, norm_inf(p * xl * p - el * p));
    }
    // index: E(p) = d^{-2}
    resid = std::max(resid, norm_inf(t.inclusions[2 * r + 1].expect(p) -
                                     cplx(1.0 / (d * d)) *
                                         AlgebraElement::identity(t.levels[2 * r + 1])));
    // spanning: the two-sided ideal generated by p is everything
    AlgebraElement z = central_support(p);
    const double span_gap =
        norm_inf(z - AlgebraElement::identity(t.levels[2 * r + 2]));
    resid = std::max(resid, span_gap);
    if (resid <= tolerance) {
      out.r = r;
      out.max_residual = resid;
      out.found = true;
      return out;
    }
  }
  return out;
}

CanonicalPA::CanonicalPA(const MarkovTower& t, std::size_t r, std::size_t n_max)
    : t_(&t), r_(r), n_max_(n_max) {
  if (!t.path) throw std::invalid_argument("canonical PA: tower carries no path model");
  if (2 * r + 1 + n_max + 1 > t.depth())
    throw std::invalid_argument("canonical PA: tower depth too small for the requested boxes");
  const auto lower = t.levels[2 * r];
  const auto upper = t.levels[2 * r + 1];
  auto lam = t.inclusions[2 * r].inclusion_matrix();
  bratteli_.even = {};
  for (std::size_t b = 0; b < lower->n_blocks(); ++b) bratteli_.even.push_back(lower->block_label(b));
  for (std::size_t b = 0; b < upper->n_blocks(); ++b) bratteli_.odd.push_back(upper->block_label(b));
  bratteli_.mult.assign(bratteli_.n_even(), std::vector<int>(bratteli_.n_odd(), 0));
  for (std::size_t l = 0; l < lower->n_blocks(); ++l)
    for (std::size_t u = 0; u < upper->n_blocks(); ++u) bratteli_.mult[l][u] = lam[l][u];
  const std::string base_label = t.levels[0]->block_label(0);
  int bp = lower->block_by_label(base_label);
  if (bp < 0) throw std::invalid_argument("canonical PA: base block absent at level 2r (increase r)");
  bratteli_.basepoint = static_cast<std::size_t>(bp);
  const double d = t.modulus;
  bratteli_.modulus = d;
  bratteli_.dim_even.assign(bratteli_.n_even(), 0.0);
  bratteli_.dim_odd.assign(bratteli_.n_odd(), 0.0);
  for (std::size_t b = 0; b < lower->n_blocks(); ++b)
    bratteli_.dim_even[b] = std::pow(d, 2.0 * r) * lower->trace_weight(b);
  for (std::size_t b = 0; b < upper->n_blocks(); ++b)
    bratteli_.dim_odd[b] = std::pow(d, 2.0 * r + 1.0) * upper->trace_weight(b);
  bratteli_.validate();

  for (std::size_t n = 0; n <= n_max + 1; ++n) {
    plus_.push_back(std::make_shared<LoopSpace>(bratteli_, n, +1));
    minus_.push_back(std::make_shared<LoopSpace>(bratteli_, n, -1));
  }
  pp_plus_ = pimsner_popa_basis(t, 2 * r, 2 * r + 1);
  pp_minus_ = pimsner_popa_basis(t, 2 * r + 1, 2 * r + 2);

  const PathLevel& le = t.path->levels[t.path->offset + 2 * r];
  const PathLevel& lo = t.path->levels[t.path->offset + 2 * r + 1];
  even_vertex_of_block_ = le.vertex_of_block;
  odd_vertex_of_block_ = lo.vertex_of_block;
  prefix_count_even_.assign(lower->n_blocks(), 0);
  for (std::size_t b = 0; b < lower->n_blocks(); ++b) prefix_count_even_[b] = lower->block_size(b);
  prefix_count_odd_.assign(upper->n_blocks(), 0);
  for (std::size_t b = 0; b < upper->n_blocks(); ++b) prefix_count_odd_[b] = upper->block_size(b);
}

LoopSpacePtr CanonicalPA::box_space(std::size_t n, int shading) const {
  return shading > 0 ? plus_.at(n) : minus_.at(n);
}

std::size_t CanonicalPA::box_dim(std::size_t n, int shading) const {
  return box_space(n, shading)->n_loops();
}

namespace {

// translate a Bratteli walk into original-graph steps and extend a tower
// path along it
struct WalkExtender {
  const MarkovTower* t;
  std::size_t base;  // path level of the walk's start
  const std::vector<std::size_t>* start_vertex_of_block;
  const std::vector<std::size_t>* other_vertex_of_block;

  std::size_t extend(std::size_t path_id, const Walk& w) const {
    const PathModel& pm = *t->path;
    std::size_t id = path_id;
    for (std::size_t i = 0; i < w.steps.size(); ++i) {
      const std::size_t lev = base + i + 1;
      const auto& tr = (i % 2 == 0) ? *other_vertex_of_block : *start_vertex_of_block;
      const std::size_t vert = tr[w.steps[i].other];
      const PathLevel& pl = pm.levels[lev];
      bool found = false;
      // children are contiguous per parent in construction order
      for (std::size_t q = 0; q < pl.parent.size(); ++q) {
        if (pl.parent[q] == id && pl.step[q].other == vert &&
            pl.step[q].instance == w.steps[i].instance) {
          id = q;
          found = true;
          break;
        }
      }
      if (!found) throw std::logic_error("canonical PA: walk extension not found");
    }
    return id;
  }
};

}  // namespace

AlgebraElement CanonicalPA::to_tower(const GPAElement& coords) const {
  const LoopSpace& space = *coords.space;
  const int shading = space.shading();
  const std::size_t n = space.half_length();
  const std::size_t base = base_level(shading);
  const std::size_t lvl = base + n;
  const PathModel& pm = *t_->path;
  const PathLevel& base_lvl = pm.levels[pm.offset + base];
  const PathLevel& top_lvl = pm.levels[pm.offset + lvl];
  WalkExtender ext{t_, pm.offset + base,
                   shading > 0 ? &even_vertex_of_block_ : &odd_vertex_of_block_,
                   shading > 0 ? &odd_vertex_of_block_ : &even_vertex_of_block_};
  AlgebraElement out(t_->levels[lvl]);
  for (std::size_t b = 0; b < space.block_info().size(); ++b) {
    const auto& bi = space.block_info()[b];
    const Matrix& m = coords.elt.block(b);
    const std::size_t orig_vertex =
        (shading > 0 ? even_vertex_of_block_ : odd_vertex_of_block_)[bi.base];
    for (std::size_t prefix : base_lvl.paths_by_vertex[orig_vertex]) {
      std::vector<std::size_t> glob(bi.walks.size());
      for (std::size_t p = 0; p < bi.walks.size(); ++p) glob[p] = ext.extend(prefix, bi.walks[p]);
      for (std::size_t p = 0; p < bi.walks.size(); ++p)
        for (std::size_t q = 0; q < bi.walks.size(); ++q) {
          if (m(p, q) == cplx(0.0)) continue;
          const std::size_t blk =
              static_cast<std::size_t>(top_lvl.block_of_vertex[top_lvl.end_vertex[glob[p]]]);
          out.block(blk)(top_lvl.local_index[glob[p]], top_lvl.local_index[glob[q]]) += m(p, q);
        }
    }
  }
  return out;
}

GPAElement CanonicalPA::from_tower(std::size_t n, int shading, const AlgebraElement& x,
                                   double* membership_residual) const {
  const std::size_t base = base_level(shading);
  const std::size_t lvl = base + n;
  if (x.algebra() != t_->levels[lvl])
    throw std::invalid_argument("from_tower: element at the wrong level");
  LoopSpacePtr space = box_space(n, shading);
  const PathModel& pm = *t_->path;
  const PathLevel& base_lvl = pm.levels[pm.offset + base];
  const PathLevel& top_lvl = pm.levels[pm.offset + lvl];
  WalkExtender ext{t_, pm.offset + base,
                   shading > 0 ? &even_vertex_of_block_ : &odd_vertex_of_block_,
                   shading > 0 ? &odd_vertex_of_block_ : &even_vertex_of_block_};
  GPAElement out = gpa_zero(space);
  for (std::size_t b = 0; b < space->block_info().size(); ++b) {
    const auto& bi = space->block_info()[b];
    const std::size_t orig_vertex =
        (shading > 0 ? even_vertex_of_block_ : odd_vertex_of_block_)[bi.base];
    const auto& prefixes = base_lvl.paths_by_vertex[orig_vertex];
    Matrix& m = out.elt.block(b);
    for (std::size_t prefix : prefixes) {
      std::vector<std::size_t> glob(bi.walks.size());
      for (std::size_t p = 0; p < bi.walks.size(); ++p) glob[p] = ext.extend(prefix, bi.walks[p]);
      for (std::size_t p = 0; p < bi.walks.size(); ++p)
        for (std::size_t q = 0; q < bi.walks.size(); ++q)
          m(p, q) += x.block(static_cast<std::size_t>(
                        top_lvl.block_of_vertex[top_lvl.end_vertex[glob[p]]]))(
                        top_lvl.local_index[glob[p]], top_lvl.local_index[glob[q]]) /
                    static_cast<double>(prefixes.size());
    }
  }
  if (membership_residual) *membership_residual = norm_inf(to_tower(out) - x);
  return out;
}

AlgebraElement CanonicalPA::right_include(const AlgebraElement& x) const {
  return t_->inclusions[t_->level_of(x)].embed(x);
}

AlgebraElement CanonicalPA::right_cap(const AlgebraElement& x) const {
  return t_->inclusions[t_->level_of(x) - 1].expect(x);
}

AlgebraElement CanonicalPA::left_include(const AlgebraElement& x) const { return x; }

AlgebraElement CanonicalPA::left_cap(const AlgebraElement& x) const {
  return left_cap_with(x, pp_plus_.basis);
}

AlgebraElement CanonicalPA::left_cap_with(const AlgebraElement& x,
                                          const std::vector<AlgebraElement>& basis) const {
  const std::size_t lvl = t_->level_of(x);
  const double d = t_->modulus;
  AlgebraElement acc = AlgebraElement::zero(t_->levels[lvl]);
  for (const auto& b : basis) {
    AlgebraElement bl = t_->include(b, lvl);
    acc += bl * x * adjoint(bl);
  }
  acc *= cplx(1.0 / (d * d));
  return acc;
}

AlgebraElement CanonicalPA::jones(std::size_t m, int shading) const {
  const std::size_t base = base_level(shading);
  return t_->jones[base + m];
}

ModuleEmbedding::ModuleEmbedding(const MarkovTower& t, std::size_t r, std::size_t n_max)
    : pa_(t, r, n_max) {}

AlgebraElement ModuleEmbedding::embed_to_tower(const TLElement& x) const {
  const MarkovTower& t = pa_.tower();
  const std::size_t base = pa_.base_level(x.shading());
  MarkovTower view = shift(t, base);
  return represent(view, x);
}

GPAElement ModuleEmbedding::embed(const TLElement& x) const {
  if (x.n_bottom() != x.n_top()) throw std::invalid_argument("embed: element is not square");
  return pa_.from_tower(x.n_bottom(), x.shading(), embed_to_tower(x));
}

Report verify_canonical_pa(const CanonicalPA& pa, double tolerance, int samples,
                           std::uint64_t seed) {
  Report rep;
  rep.title = "canonical-pa";
  std::mt19937_64 rng(seed);
  const MarkovTower& t = pa.tower();

  // bipath basis spans commutant elements: [to_tower(x), M_base] = 0
  double r_comm = 0.0, r_member = 0.0;
  for (int shading : {+1, -1}) {
    const std::size_t base = pa.base_level(shading);
    for (std::size_t n = 1; n <= pa.n_max(); ++n) {
      GPAElement coords{pa.box_space(n, shading),
                        AlgebraElement::random(pa.box_space(n, shading)->view(), rng)};
      AlgebraElement x = pa.to_tower(coords);
      for (int s = 0; s < samples; ++s) {
        AlgebraElement g = t.include(AlgebraElement::random(t.levels[base], rng), base + n);
        g *= cplx(1.0 / std::max(norm_inf(g), 1e-30));
        r_comm = std::max(r_comm, norm_inf(x * g - g * x));
      }
      double mr = 0.0;
      pa.from_tower(n, shading, x, &mr);
      r_member = std::max(r_member, mr);
    }
  }
  rep.add("bipath-commutant", r_comm, tolerance);
  rep.add("bipath-roundtrip", r_member, tolerance);

  // box dimensions: commutant dimension by the nullspace oracle at small n
  bool dims_ok = true;
  for (int shading : {+1, -1}) {
    const std::size_t base = pa.base_level(shading);
    for (std::size_t n = 0; n <= std::min<std::size_t>(pa.n_max(), 2); ++n) {
      if (t.levels[base + n]->dim() > 128) continue;
      std::vector<AlgebraElement> gens;
      const auto lowalg = t.levels[base];
      for (std::size_t b = 0; b < lowalg->n_blocks(); ++b)
        for (std::size_t rr = 0; rr < lowalg->block_size(b); ++rr)
          for (std::size_t cc = 0; cc < lowalg->block_size(b); ++cc)
            gens.push_back(
                t.include(AlgebraElement::matrix_unit(lowalg, b, rr, cc), base + n));
      const auto basis = relative_commutant(t.levels[base + n], gens);
      if (basis.size() != pa.box_dim(n, shading)) dims_ok = false;
    }
  }
  rep.add_flag("box-dimension-commutant", dims_ok);

  // caps land in the right boxes and are expectation-normalized
  double r_caps = 0.0;
  for (std::size_t n = 1; n <= pa.n_max(); ++n) {
    GPAElement coords{pa.box_space(n, +1),
                      AlgebraElement::random(pa.box_space(n, +1)->view(), rng)};
    AlgebraElement x = pa.to_tower(coords);
    double mr = 0.0;
    if (n >= 1) {
      AlgebraElement rc = pa.right_cap(x);
      pa.from_tower(n - 1, +1, rc, &mr);
      r_caps = std::max(r_caps, mr);
      AlgebraElement lc = pa.left_cap(x);
      pa.from_tower(n - 1, -1, lc, &mr);
      r_caps = std::max(r_caps, mr);
    }
    // E o iota = id both ways
    r_caps = std::max(r_caps, norm_inf(pa.right_cap(pa.right_include(x)) - x));
  }
  rep.add("caps-into-boxes", r_caps, tolerance);

  // left capping is independent of the Pimsner-Popa basis: compare against a
  // basis built from a rotated candidate order
  double r_basis = 0.0;
  {
    // alternative basis: conjugate the canonical one by a unitary of M_{2r+1}
    // coming from a random hermitian; still a Pimsner-Popa basis
    const std::size_t lo = pa.base_level(+1), hi = lo + 1;
    std::vector<AlgebraElement> alt;
    // exp(i h) approximated by a Cayley transform (1 - ih/2)(1 + ih/2)^{-1}
    // is overkill here; instead reorder and re-orthogonalize: run the
    // Gram-Schmidt seeded with reversed matrix units.
    const auto upper = t.levels[hi];
    auto expect = [&](const AlgebraElement& x) { return t.expect_down(x, lo); };
    auto lift = [&](const AlgebraElement& y) { return t.include(y, hi); };
    for (std::size_t blk = upper->n_blocks(); blk-- > 0;)
      for (std::size_t rr = upper->block_size(blk); rr-- > 0;)
        for (std::size_t cc = upper->block_size(blk); cc-- > 0;) {
          AlgebraElement u = AlgebraElement::matrix_unit(upper, blk, rr, cc);
          for (const auto& b : alt) u -= b * lift(expect(adjoint(b) * u));
          AlgebraElement q = expect(adjoint(u) * u);
          if (norm_inf(q) < 1e-10) continue;
          alt.push_back(u * lift(psd_invsqrt_elt(q)));
        }
    for (std::size_t n = 1; n <= pa.n_max(); ++n) {
      GPAElement coords{pa.box_space(n, +1),
                        AlgebraElement::random(pa.box_space(n, +1)->view(), rng)};
      AlgebraElement x = pa.to_tower(coords);
      r_basis = std::max(r_basis, norm_inf(pa.left_cap(x) - pa.left_cap_with(x, alt)));
    }
  }
  rep.add("left-cap-basis-independent", r_basis, tolerance);

  // the coordinate map intertwines the generator actions with the loop ops
  double r_iso = 0.0;
  for (std::size_t n = 1; n <= pa.n_max(); ++n) {
    GPAElement cx{pa.box_space(n, +1), AlgebraElement::random(pa.box_space(n, +1)->view(), rng)};
    GPAElement cy{pa.box_space(n, +1), AlgebraElement::random(pa.box_space(n, +1)->view(), rng)};
    AlgebraElement x = pa.to_tower(cx), y = pa.to_tower(cy);
    // multiplication and adjoint
    r_iso = std::max(r_iso, gpa_norm_inf(pa.from_tower(n, +1, x * y) - gpa_multiply(cx, cy)));
    r_iso = std::max(r_iso, gpa_norm_inf(pa.from_tower(n, +1, adjoint(x)) - gpa_adjoint(cx)));
    // right inclusion / capping
    r_iso = std::max(r_iso, gpa_norm_inf(pa.from_tower(n + 1, +1, pa.right_include(x)) -
                                         gpa_include_right(cx, pa.box_space(n + 1, +1))));
    r_iso = std::max(r_iso, gpa_norm_inf(pa.from_tower(n - 1, +1, pa.right_cap(x)) -
                                         gpa_cap_right(cx, pa.box_space(n - 1, +1))));
    // left capping
    r_iso = std::max(r_iso, gpa_norm_inf(pa.from_tower(n - 1, -1, pa.left_cap(x)) -
                                         gpa_cap_left(cx, pa.box_space(n - 1, -1))));
    // left inclusion from the minus side
    GPAElement cm{pa.box_space(n, -1), AlgebraElement::random(pa.box_space(n, -1)->view(), rng)};
    AlgebraElement xm = pa.to_tower(cm);
    r_iso = std::max(r_iso, gpa_norm_inf(pa.from_tower(n + 1, +1, pa.left_include(xm)) -
                                         gpa_include_left(cm, pa.box_space(n + 1, +1))));
  }
  // Jones projections map onto the loop Jones projections
  for (std::size_t m = 1; m + 1 <= pa.n_max(); ++m) {
    GPAElement want = gpa_jones_projection(pa.box_space(m + 1, +1), m);
    r_iso = std::max(r_iso, gpa_norm_inf(pa.from_tower(m + 1, +1, pa.jones(m, +1)) - want));
  }
  rep.add("gpa-isomorphism-intertwines", r_iso, tolerance);
  return rep;
}

Report verify_planar_map(const ModuleEmbedding& e, std::size_t n_max, int samples,
                         double tolerance, std::uint64_t seed) {
  Report rep;
  rep.title = "planar-map";
  std::mt19937_64 rng(seed);
  const CanonicalPA& pa = e.pa();
  const double d = pa.tower().modulus;

  auto random_tl = [&](std::size_t n, int shading) {
    TLElement x(n, n, shading, d);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& dg : tl_basis(n, shading)) x.add_term(dg, cplx(u(rng), u(rng)));
    return x;
  };

  // unital *-homomorphism per box
  double r_hom = 0.0;
  for (int shading : {+1, -1})
    for (std::size_t n = 0; n <= n_max; ++n) {
      GPAElement one = e.embed(TLElement::identity(n, d, shading));
      r_hom = std::max(r_hom, gpa_norm_inf(one - gpa_identity(one.space)));
      for (int s = 0; s < samples; ++s) {
        TLElement x = random_tl(n, shading), y = random_tl(n, shading);
        r_hom = std::max(r_hom, gpa_norm_inf(e.embed(x * y) - gpa_multiply(e.embed(x), e.embed(y))));
        r_hom = std::max(r_hom, gpa_norm_inf(e.embed(x.adjoint()) - gpa_adjoint(e.embed(x))));
      }
    }
  rep.add("embedding-homomorphism", r_hom, tolerance);

  // Jones projections to Jones projections
  double r_jones = 0.0;
  for (std::size_t m = 1; m + 1 <= n_max; ++m) {
    GPAElement img = e.embed(TLElement::jones_projection(m, m + 1, d));
    GPAElement want = gpa_jones_projection(img.space, m);
    r_jones = std::max(r_jones, gpa_norm_inf(img - want));
  }
  rep.add("embedding-jones", r_jones, tolerance);

  // the four generator tangles
  double r_ri = 0.0, r_rc = 0.0, r_li = 0.0, r_lc = 0.0;
  for (int shading : {+1, -1})
    for (std::size_t n = 1; n <= n_max; ++n)
      for (int s = 0; s < samples; ++s) {
        TLElement x = random_tl(n, shading);
        GPAElement fx = e.embed(x);
        // right inclusion
        GPAElement a = e.embed(include_right(x));
        r_ri = std::max(r_ri, gpa_norm_inf(a - gpa_include_right(fx, a.space)));
        // right capping (expectation-normalized on both sides)
        TLElement capped = cap_right(x);
        capped *= cplx(1.0 / d);
        GPAElement b = e.embed(capped);
        r_rc = std::max(r_rc, gpa_norm_inf(b - gpa_cap_right(fx, b.space)));
        if (shading < 0) {
          GPAElement c = e.embed(include_left(x));
          r_li = std::max(r_li, gpa_norm_inf(c - gpa_include_left(fx, c.space)));
        } else {
          TLElement lcap = cap_left(x);
          lcap *= cplx(1.0 / d);
          GPAElement c = e.embed(lcap);
          r_lc = std::max(r_lc, gpa_norm_inf(c - gpa_cap_left(fx, c.space)));
        }
      }
  rep.add("embedding-right-inclusion", r_ri, tolerance);
  rep.add("embedding-right-capping", r_rc, tolerance);
  rep.add("embedding-left-inclusion", r_li, tolerance);
  rep.add("embedding-left-capping", r_lc, tolerance);

  // injectivity: the rank of the embedded diagram basis equals the rank of
  // the tower representation (the quotient dimension)
  bool inj_ok = true;
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::vector<AlgebraElement> images;
    for (const auto& dg : tl_basis(n))
      images.push_back(e.embed(TLElement::from_diagram(dg, d)).elt);
    const std::size_t img_rank = family_rank(images);
    MarkovTower view = shift(pa.tower(), pa.base_level(+1));
    if (img_rank != image_dimension(view, n)) inj_ok = false;
  }
  rep.add_flag("embedding-injective", inj_ok);
  return rep;
}

Report verify_shift_iso(const MarkovTower& t, std::size_t r, std::size_t n_max, int samples,
                        double tolerance, std::uint64_t seed) {
  Report rep;
  rep.title = "shift-iso";
  std::mt19937_64 rng(seed);
  CanonicalPA pa1(t, r, n_max);
  CanonicalPA pa2(t, r + 1, n_max);

  // the two Bratteli graphs must agree verbatim (stabilized steps)
  bool graphs_equal = pa1.bratteli().even == pa2.bratteli().even &&
                      pa1.bratteli().odd == pa2.bratteli().odd &&
                      pa1.bratteli().mult == pa2.bratteli().mult;
  rep.add_flag("shift-bratteli-equal", graphs_equal);
  if (!graphs_equal) return rep;

  auto shift_iso = [&](std::size_t n, int shading, const AlgebraElement& x) {
    GPAElement coords = pa1.from_tower(n, shading, x);
    GPAElement moved{pa2.box_space(n, shading), coords.elt};
    return pa2.to_tower(moved);
  };

  // image of 1 is 1; Jones projections map to Jones projections
  double r_unit = 0.0, r_jones = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    AlgebraElement one = AlgebraElement::identity(t.levels[2 * r + n]);
    r_unit = std::max(r_unit,
                      norm_inf(shift_iso(n, +1, one) -
                               AlgebraElement::identity(t.levels[2 * r + 2 + n])));
  }
  for (std::size_t m = 1; m + 1 <= n_max; ++m)
    r_jones = std::max(r_jones,
                       norm_inf(shift_iso(m + 1, +1, t.jones[2 * r + m]) - t.jones[2 * r + 2 + m]));
  rep.add("shift-unital", r_unit, tolerance);
  rep.add("shift-jones", r_jones, tolerance);

  // *-homomorphism computed in the towers
  double r_hom = 0.0, r_gen = 0.0, r_dim = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    r_dim = std::max(r_dim, static_cast<double>(pa1.box_dim(n, +1) != pa2.box_dim(n, +1)));
    for (int s = 0; s < samples; ++s) {
      GPAElement cx{pa1.box_space(n, +1), AlgebraElement::random(pa1.box_space(n, +1)->view(), rng)};
      GPAElement cy{pa1.box_space(n, +1), AlgebraElement::random(pa1.box_space(n, +1)->view(), rng)};
      AlgebraElement x = pa1.to_tower(cx), y = pa1.to_tower(cy);
      r_hom = std::max(r_hom, norm_inf(shift_iso(n, +1, x * y) -
                                       shift_iso(n, +1, x) * shift_iso(n, +1, y)));
      r_hom = std::max(r_hom, norm_inf(shift_iso(n, +1, adjoint(x)) - adjoint(shift_iso(n, +1, x))));
      // generator tangles, each side with its own expectation and basis
      r_gen = std::max(r_gen, norm_inf(shift_iso(n + 1, +1, pa1.right_include(x)) -
                                       pa2.right_include(shift_iso(n, +1, x))));
      r_gen = std::max(r_gen, norm_inf(shift_iso(n - 1, +1, pa1.right_cap(x)) -
                                       pa2.right_cap(shift_iso(n, +1, x))));
      r_gen = std::max(r_gen, norm_inf(shift_iso(n - 1, -1, pa1.left_cap(x)) -
                                       pa2.left_cap(shift_iso(n, +1, x))));
      GPAElement cm{pa1.box_space(n, -1), AlgebraElement::random(pa1.box_space(n, -1)->view(), rng)};
      AlgebraElement xm = pa1.to_tower(cm);
      r_gen = std::max(r_gen, norm_inf(shift_iso(n + 1, +1, pa1.left_include(xm)) -
                                       pa2.left_include(shift_iso(n, -1, xm))));
    }
  }
  rep.add_flag("shift-dimension-equal", r_dim == 0.0);
  rep.add("shift-homomorphism", r_hom, tolerance);
  rep.add("shift-generator-commutation", r_gen, tolerance);
  return rep;
}

ShiftIso::ShiftIso(const MarkovTower& t, std::size_t r, std::size_t n_max) : t_(&t), r_(r) {
  (void)n_max;
}

AlgebraElement ShiftIso::apply(std::size_t n, int shading, const AlgebraElement& x) const {
  CanonicalPA pa1(*t_, r_, n + 1);
  CanonicalPA pa2(*t_, r_ + 1, n + 1);
  GPAElement coords = pa1.from_tower(n, shading, x);
  GPAElement moved{pa2.box_space(n, shading), coords.elt};
  return pa2.to_tower(moved);
}

CompressionIso make_compression_iso(const MarkovTower& t, std::size_t r, const AlgebraElement& q) {
  MarkovTower s = shift(t, 2 * r);
  if (q.algebra() != s.levels[0])
    throw std::invalid_argument("compression iso: projection must lie in M_{2r}");
  AlgebraElement z = central_support(q);
  for (std::size_t b = 0; b < z.n_blocks(); ++b)
    if (norm_inf(z.block(b)) < 0.5)
      throw std::invalid_argument("compression iso: full ideal span fails, block " +
                                  z.algebra()->block_label(b) + " has zero central support");
  CompressionIso out;
  out.r = r;
  out.compression = compress_full(s, q);
  return out;
}

Report verify_compression_iso(const MarkovTower& t, std::size_t r, const AlgebraElement& q,
                              std::size_t n_max, double tolerance, int samples,
                              std::uint64_t seed) {
  Report rep;
  rep.title = "compression-iso";
  std::mt19937_64 rng(seed);
  const double d = t.modulus;
  CanonicalPA pa(t, r, n_max);
  CompressionIso iso = make_compression_iso(t, r, q);
  const MarkovTower& c = iso.compression.tower;

  auto apply = [&](std::size_t n, const AlgebraElement& x) {
    return iso.compression.apply(x, n);  // shifted level n = tower level 2r+n
  };

  // compressed tower is a Markov tower and the index is preserved
  rep.merge(verify_markov_axioms(c, tolerance, 2, seed + 1));
  auto cpp = pimsner_popa_basis(c, 0, 1);
  rep.add("compressed-watatani-index", std::abs(cpp.watatani - d * d), 1e-7 * std::max(1.0, d * d));

  // unital *-isomorphism on box spaces: multiplicative, star, unital, and
  // dimension-preserving against the compressed commutant (nullspace oracle)
  double r_hom = 0.0;
  bool dims_ok = true;
  for (std::size_t n = 1; n <= n_max; ++n) {
    AlgebraElement one = AlgebraElement::identity(t.levels[2 * r + n]);
    r_hom = std::max(r_hom, norm_inf(apply(n, one) - AlgebraElement::identity(c.levels[n])));
    for (int s = 0; s < samples; ++s) {
      GPAElement cx{pa.box_space(n, +1), AlgebraElement::random(pa.box_space(n, +1)->view(), rng)};
      GPAElement cy{pa.box_space(n, +1), AlgebraElement::random(pa.box_space(n, +1)->view(), rng)};
      AlgebraElement x = pa.to_tower(cx), y = pa.to_tower(cy);
      r_hom = std::max(r_hom, norm_inf(apply(n, x * y) - apply(n, x) * apply(n, y)));
      r_hom = std::max(r_hom, norm_inf(apply(n, adjoint(x)) - adjoint(apply(n, x))));
    }
    if (c.levels[n]->dim() <= 128) {
      std::vector<AlgebraElement> gens;
      for (std::size_t b = 0; b < c.levels[0]->n_blocks(); ++b)
        for (std::size_t rr = 0; rr < c.levels[0]->block_size(b); ++rr)
          for (std::size_t cc = 0; cc < c.levels[0]->block_size(b); ++cc)
            gens.push_back(c.include(AlgebraElement::matrix_unit(c.levels[0], b, rr, cc), n));
      const auto basis = relative_commutant(c.levels[n], gens);
      if (basis.size() != pa.box_dim(n, +1)) dims_ok = false;
    }
  }
  rep.add("compression-homomorphism", r_hom, tolerance);
  rep.add_flag("compression-dimension-preserved", dims_ok);

  // generator commutation: right inclusion/capping and the left capping with
  // the adapted basis {a} u {(1-q) b}
  double r_gen = 0.0;
  // {a}: per block partial isometries onto a unit eigenvector of q
  std::vector<AlgebraElement> a_family;
  {
    const auto base = t.levels[2 * r];
    for (std::size_t b = 0; b < base->n_blocks(); ++b) {
      std::vector<double> vals;
      Matrix vecs;
      hermitian_eig(q.block(b), vals, vecs);
      int unit = -1;
      for (std::size_t j = 0; j < vals.size(); ++j)
        if (vals[j] > 0.5) unit = static_cast<int>(j);
      if (unit < 0) continue;
      for (std::size_t s = 0; s < base->block_size(b); ++s) {
        AlgebraElement a(base);
        for (std::size_t rr = 0; rr < base->block_size(b); ++rr)
          a.block(b)(s, rr) = std::conj(vecs(rr, static_cast<std::size_t>(unit)));
        a_family.push_back(std::move(a));
      }
    }
    AlgebraElement acc = AlgebraElement::zero(base);
    for (const auto& a : a_family) acc += a * q * adjoint(a);
    rep.add("adapted-family-resolves-unit", norm_inf(acc - AlgebraElement::identity(base)),
            tolerance);
  }
  // compressed Pimsner-Popa basis { q b a q } for the compressed inclusion
  std::vector<AlgebraElement> comp_basis;
  for (const auto& b : pa.pp_basis(+1).basis)
    for (const auto& a : a_family) {
      AlgebraElement ba = b * t.include(a, 2 * r + 1);
      comp_basis.push_back(apply(1, ba));
    }
  {
    // reconstruction in the compressed inclusion
    double r_rec = 0.0;
    for (int s = 0; s < samples; ++s) {
      AlgebraElement x = AlgebraElement::random(c.levels[1], rng);
      x *= cplx(1.0 / std::max(norm_inf(x), 1e-30));
      AlgebraElement acc = AlgebraElement::zero(c.levels[1]);
      for (const auto& b : comp_basis)
        acc += b * c.include(c.inclusions[0].expect(adjoint(b) * x), 1);
      r_rec = std::max(r_rec, norm_inf(acc - x));
    }
    rep.add("compressed-pp-reconstruction", r_rec, tolerance);
  }
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (int s = 0; s < samples; ++s) {
      GPAElement cx{pa.box_space(n, +1), AlgebraElement::random(pa.box_space(n, +1)->view(), rng)};
      AlgebraElement x = pa.to_tower(cx);
      r_gen = std::max(r_gen,
                       norm_inf(apply(n + 1, pa.right_include(x)) - c.inclusions[n].embed(apply(n, x))));
      r_gen = std::max(r_gen,
                       norm_inf(apply(n - 1, pa.right_cap(x)) - c.inclusions[n - 1].expect(apply(n, x))));
      // left capping: T side with the canonical basis, C side with {q b a q}
      AlgebraElement lhs = apply(n, pa.left_cap(x));
      AlgebraElement acc = AlgebraElement::zero(c.levels[n]);
      for (const auto& b : comp_basis) {
        AlgebraElement bl = c.include(b, n);
        acc += bl * apply(n, x) * adjoint(bl);
      }
      acc *= cplx(1.0 / (d * d));
      r_gen = std::max(r_gen, norm_inf(lhs - acc));
    }
  }
  rep.add("compression-generator-commutation", r_gen, tolerance);
  return rep;
}

Report invariance_shift(const WeightedBipartiteGraph& g, std::size_t r1, std::size_t r2,
                        std::size_t n_max, double tolerance) {
  Report rep;
  rep.title = "invariance-shift";
  if (r1 > r2) std::swap(r1, r2);
  const std::size_t depth = 2 * r2 + 2 + n_max + 2;
  MarkovTower t = build_tower(g, depth);
  ModuleEmbedding e1(t, r1, n_max);
  ModuleEmbedding e2(t, r2, n_max);
  const double d = g.modulus;

  // transport through the iterated shift isomorphism and compare
  double r_cmp = 0.0;
  for (int shading : {+1, -1})
    for (std::size_t n = 0; n <= n_max; ++n)
      for (const auto& dg : tl_basis(n, shading)) {
        TLElement x = TLElement::from_diagram(dg, d);
        AlgebraElement y = e1.embed_to_tower(x);
        for (std::size_t rr = r1; rr < r2; ++rr) {
          ShiftIso iso(t, rr, n);
          y = iso.apply(n, shading, y);
        }
        GPAElement lhs = e2.pa().from_tower(n, shading, y);
        GPAElement rhs = e2.embed(x);
        r_cmp = std::max(r_cmp, gpa_norm_inf(lhs - rhs));
      }
  rep.add("shift-transported-embedding", r_cmp, tolerance);
  return rep;
}

namespace {

// all isomorphisms of unpointed weighted bipartite graphs (no class swap;
// the graphs here come with fixed shadings)
void all_isos_rec(const WeightedBipartiteGraph& a, const WeightedBipartiteGraph& b,
                  std::vector<int>& emap, std::vector<int>& omap,
                  std::vector<std::pair<std::vector<int>, std::vector<int>>>& out, double tol) {
  for (std::size_t e = 0; e < a.n_even(); ++e) {
    if (emap[e] >= 0) continue;
    for (std::size_t f = 0; f < b.n_even(); ++f) {
      bool used = false;
      for (int v : emap) used |= v == static_cast<int>(f);
      if (used) continue;
      if (std::abs(a.dim_even[e] - b.dim_even[f]) > tol) continue;
      bool ok = true;
      for (std::size_t o = 0; o < a.n_odd() && ok; ++o)
        if (omap[o] >= 0 && a.mult[e][o] != b.mult[f][omap[o]]) ok = false;
      if (!ok) continue;
      emap[e] = static_cast<int>(f);
      all_isos_rec(a, b, emap, omap, out, tol);
      emap[e] = -1;
    }
    return;
  }
  for (std::size_t o = 0; o < a.n_odd(); ++o) {
    if (omap[o] >= 0) continue;
    for (std::size_t p = 0; p < b.n_odd(); ++p) {
      bool used = false;
      for (int v : omap) used |= v == static_cast<int>(p);
      if (used) continue;
      if (std::abs(a.dim_odd[o] - b.dim_odd[p]) > tol) continue;
      bool ok = true;
      for (std::size_t e = 0; e < a.n_even() && ok; ++e)
        if (emap[e] >= 0 && a.mult[e][o] != b.mult[emap[e]][p]) ok = false;
      if (!ok) continue;
      omap[o] = static_cast<int>(p);
      all_isos_rec(a, b, emap, omap, out, tol);
      omap[o] = -1;
    }
    return;
  }
  out.push_back({emap, omap});
}

}  // namespace

InvarianceResult invariance_basepoint(const WeightedBipartiteGraph& g, const std::string& new_base,
                                      std::size_t n_max, double tolerance) {
  InvarianceResult result;
  result.report.title = "invariance-basepoint";

  WeightedBipartiteGraph g2 = g;
  int nb = -1;
  for (std::size_t e = 0; e < g.n_even(); ++e)
    if (g.even[e] == new_base) nb = static_cast<int>(e);
  if (nb < 0) throw std::invalid_argument("new basepoint must be an even vertex");
  g2.basepoint = static_cast<std::size_t>(nb);
  const double scale = g.dim_even[static_cast<std::size_t>(nb)];
  for (auto& v : g2.dim_even) v /= scale;
  for (auto& v : g2.dim_odd) v /= scale;

  auto r1s = find_standard_level(build_tower(g, graph_diameter(g) + 4));
  auto r2s = find_standard_level(build_tower(g2, graph_diameter(g2) + 4));
  if (!r1s.found || !r2s.found) {
    result.report.add_flag("standard-levels-found", false);
    return result;
  }
  const std::size_t d1 = 2 * r1s.r + 2 + n_max + 2, d2 = 2 * r2s.r + 2 + n_max + 2;
  MarkovTower t1 = build_tower(g, d1);
  MarkovTower t2 = build_tower(g2, d2);
  ModuleEmbedding e1(t1, r1s.r, n_max);
  ModuleEmbedding e2(t2, r2s.r, n_max);
  const double d = g.modulus;

  // sample images over the diagram basis, both shadings
  struct Sample {
    std::size_t n;
    int shading;
    GPAElement img1, img2;
  };
  std::vector<Sample> samples;
  for (int shading : {+1, -1})
    for (std::size_t n = 0; n <= n_max; ++n)
      for (const auto& dg : tl_basis(n, shading)) {
        TLElement x = TLElement::from_diagram(dg, d);
        samples.push_back({n, shading, e1.embed(x), e2.embed(x)});
      }

  // candidate graph isomorphisms between the two Bratteli graphs
  const auto& b1 = e1.pa().bratteli();
  const auto& b2 = e2.pa().bratteli();
  std::vector<std::pair<std::vector<int>, std::vector<int>>> isos;
  if (b1.n_even() == b2.n_even() && b1.n_odd() == b2.n_odd()) {
    std::vector<int> emap(b1.n_even(), -1), omap(b1.n_odd(), -1);
    all_isos_rec(b1, b2, emap, omap, isos, 1e-7);
  }
  result.report.add_flag("graph-isomorphisms-found", !isos.empty(),
                         std::to_string(isos.size()) + " candidates");

  double best = 1e300;
  for (const auto& [emap, omap] : isos) {
    // walk relabeling: steps map index-wise through the vertex maps
    auto map_walk = [&](const Walk& w, int base_parity) {
      Walk out = w;
      for (std::size_t i = 0; i < w.verts.size(); ++i) {
        const int par = (base_parity + static_cast<int>(i)) % 2;
        out.verts[i] = par == 0 ? static_cast<std::size_t>(emap[w.verts[i]])
                                : static_cast<std::size_t>(omap[w.verts[i]]);
      }
      for (std::size_t i = 0; i < w.steps.size(); ++i) out.steps[i].other = out.verts[i + 1];
      return out;
    };
    // solve for walk phases per box from the nonzero coefficient ratios
    double worst = 0.0;
    for (const auto& smp : samples) {
      const auto& s1 = *smp.img1.space;
      const auto& s2 = *smp.img2.space;
      const int base_parity = smp.shading > 0 ? 0 : 1;
      // index the target walks
      std::map<std::vector<int>, std::pair<std::size_t, std::size_t>> pos2;
      for (std::size_t b = 0; b < s2.block_info().size(); ++b)
        for (std::size_t p = 0; p < s2.block_info()[b].walks.size(); ++p) {
          const auto& w = s2.block_info()[b].walks[p];
          std::vector<int> key{static_cast<int>(s2.block_info()[b].base)};
          for (const auto& st : w.steps) {
            key.push_back(static_cast<int>(st.other));
            key.push_back(st.instance);
          }
          pos2[key] = {b, p};
        }
      // phase solve: eta per (block, walk) of the source
      std::map<std::pair<std::size_t, std::size_t>, cplx> eta;
      bool consistent = true;
      for (int pass = 0; pass < 2 && consistent; ++pass) {
        for (std::size_t b = 0; b < s1.block_info().size(); ++b) {
          const auto& bi = s1.block_info()[b];
          for (std::size_t p = 0; p < bi.walks.size() && consistent; ++p)
            for (std::size_t qq = 0; qq < bi.walks.size() && consistent; ++qq) {
              const cplx v1 = smp.img1.elt.block(b)(p, qq);
              if (std::abs(v1) < 1e-6) continue;
              Walk wp = map_walk(bi.walks[p], base_parity);
              Walk wq = map_walk(bi.walks[qq], base_parity);
              auto key = [&](const Walk& w) {
                std::vector<int> kk{static_cast<int>(w.verts[0])};
                for (const auto& st : w.steps) {
                  kk.push_back(static_cast<int>(st.other));
                  kk.push_back(st.instance);
                }
                return kk;
              };
              auto itp = pos2.find(key(wp));
              auto itq = pos2.find(key(wq));
              if (itp == pos2.end() || itq == pos2.end() || itp->second.first != itq->second.first) {
                consistent = false;
                break;
              }
              const cplx v2 = smp.img2.elt.block(itp->second.first)(itp->second.second,
                                                                    itq->second.second);
              const cplx rho = v2 / v1;
              auto kp = std::make_pair(b, p);
              auto kq = std::make_pair(b, qq);
              if (eta.count(kp) && eta.count(kq)) {
                // consistency checked in the final sweep below
              } else if (eta.count(kp)) {
                eta[kq] = std::conj(rho / eta[kp]);
              } else if (eta.count(kq)) {
                eta[kp] = rho * eta[kq];
              } else if (pass == 1) {
                eta[kp] = 1.0;
                eta[kq] = std::conj(rho);
              }
            }
        }
      }
      if (!consistent) {
        worst = 1e300;
        break;
      }
      // final check with the solved phases (default phase 1)
      for (std::size_t b = 0; b < s1.block_info().size(); ++b) {
        const auto& bi = s1.block_info()[b];
        for (std::size_t p = 0; p < bi.walks.size(); ++p)
          for (std::size_t qq = 0; qq < bi.walks.size(); ++qq) {
            Walk wp = map_walk(bi.walks[p], base_parity);
            Walk wq = map_walk(bi.walks[qq], base_parity);
            auto key = [&](const Walk& w) {
              std::vector<int> kk{static_cast<int>(w.verts[0])};
              for (const auto& st : w.steps) {
                kk.push_back(static_cast<int>(st.other));
                kk.push_back(st.instance);
              }
              return kk;
            };
            auto itp = pos2.find(key(wp));
            auto itq = pos2.find(key(wq));
            if (itp == pos2.end() || itq == pos2.end()) continue;
            cplx ep = eta.count({b, p}) ? eta[{b, p}] : cplx(1.0);
            cplx eq = eta.count({b, qq}) ? eta[{b, qq}] : cplx(1.0);
            const cplx v1 = smp.img1.elt.block(b)(p, qq);
            const cplx v2 = smp.img2.elt.block(itp->second.first)(itp->second.second,
                                                                  itq->second.second);
            worst = std::max(worst, std::abs(ep * std::conj(eq) * v1 - v2));
          }
      }
      if (worst > tolerance) break;
    }
    best = std::min(best, worst);
    if (best <= tolerance) break;
  }
  result.witness_residual = best;
  result.conclusive = best <= tolerance;
  if (result.conclusive)
    result.report.add("witness-permutation-phase", best, tolerance);
  else
    result.report.add_flag("witness-permutation-phase", false,
                           "no witness found; inconclusive, not a counterexample");
  return result;
}

}  // namespace mtower
