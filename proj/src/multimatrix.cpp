#include "mtower/multimatrix.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mtower {

MultiMatrixAlgebra::MultiMatrixAlgebra(std::vector<Block> blocks, std::vector<double> trace_weight,
                                       bool normalized)
    : blocks_(std::move(blocks)), trace_weight_(std::move(trace_weight)), normalized_(normalized) {
  if (blocks_.size() != trace_weight_.size())
    throw std::invalid_argument("block/trace_weight length mismatch");
  std::set<std::string> seen;
  double total = 0.0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].size == 0) throw std::invalid_argument("zero-size block");
    if (trace_weight_[b] <= 0.0) throw std::invalid_argument("non-positive trace weight");
    if (!seen.insert(blocks_[b].label).second)
      throw std::invalid_argument("duplicate block label: " + blocks_[b].label);
    total += trace_weight_[b] * static_cast<double>(blocks_[b].size);
  }
  if (normalized_ && std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("trace weights do not sum to a normalized trace");
}

int MultiMatrixAlgebra::block_by_label(const std::string& label) const {
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    if (blocks_[b].label == label) return static_cast<int>(b);
  return -1;
}

std::size_t MultiMatrixAlgebra::dim() const {
  std::size_t d = 0;
  for (const auto& b : blocks_) d += b.size * b.size;
  return d;
}

std::size_t MultiMatrixAlgebra::total_size() const {
  std::size_t d = 0;
  for (const auto& b : blocks_) d += b.size;
  return d;
}

AlgebraElement::AlgebraElement(AlgebraPtr alg) : alg_(std::move(alg)) {
  blocks_.reserve(alg_->n_blocks());
  for (std::size_t b = 0; b < alg_->n_blocks(); ++b)
    blocks_.emplace_back(alg_->block_size(b), alg_->block_size(b));
}

AlgebraElement AlgebraElement::identity(AlgebraPtr alg) {
  AlgebraElement x(alg);
  for (std::size_t b = 0; b < alg->n_blocks(); ++b) x.blocks_[b] = Matrix::identity(alg->block_size(b));
  return x;
}

AlgebraElement AlgebraElement::zero(AlgebraPtr alg) { return AlgebraElement(std::move(alg)); }

AlgebraElement AlgebraElement::random(AlgebraPtr alg, std::mt19937_64& rng) {
  AlgebraElement x(std::move(alg));
  for (std::size_t b = 0; b < x.n_blocks(); ++b) fill_random(x.blocks_[b], rng);
  return x;
}

AlgebraElement AlgebraElement::random_selfadjoint(AlgebraPtr alg, std::mt19937_64& rng) {
  AlgebraElement x = random(std::move(alg), rng);
  for (std::size_t b = 0; b < x.n_blocks(); ++b) {
    Matrix h = x.blocks_[b];
    x.blocks_[b] = 0.5 * (h + mtower::adjoint(h));
  }
  return x;
}

AlgebraElement AlgebraElement::matrix_unit(AlgebraPtr alg, std::size_t b, std::size_t r, std::size_t c) {
  AlgebraElement x(std::move(alg));
  x.blocks_[b](r, c) = 1.0;
  return x;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (alg_ != o.alg_) throw std::invalid_argument("algebra element parent mismatch");
  for (std::size_t b = 0; b < blocks_.size(); ++b) blocks_[b] += o.blocks_[b];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  if (alg_ != o.alg_) throw std::invalid_argument("algebra element parent mismatch");
  for (std::size_t b = 0; b < blocks_.size(); ++b) blocks_[b] -= o.blocks_[b];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(cplx s) {
  for (auto& m : blocks_) m *= s;
  return *this;
}

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.algebra() != y.algebra()) throw std::invalid_argument("algebra element parent mismatch");
  AlgebraElement out(x.algebra());
  for (std::size_t b = 0; b < x.n_blocks(); ++b) out.block(b) = matmul(x.block(b), y.block(b));
  return out;
}

AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) { return multiply(x, y); }

AlgebraElement adjoint(const AlgebraElement& x) {
  AlgebraElement out(x.algebra());
  for (std::size_t b = 0; b < x.n_blocks(); ++b) out.block(b) = adjoint(x.block(b));
  return out;
}

cplx trace(const AlgebraElement& x) {
  cplx t = 0.0;
  for (std::size_t b = 0; b < x.n_blocks(); ++b)
    t += x.algebra()->trace_weight(b) * mat_trace(x.block(b));
  return t;
}

cplx inner(const AlgebraElement& x, const AlgebraElement& y) { return trace(multiply(adjoint(y), x)); }

double norm_inf(const AlgebraElement& x) {
  double m = 0.0;
  for (std::size_t b = 0; b < x.n_blocks(); ++b) m = std::max(m, norm_inf(x.block(b)));
  return m;
}

bool is_projection(const AlgebraElement& p, double tol) {
  return norm_inf(p - adjoint(p)) <= tol && norm_inf(multiply(p, p) - p) <= tol;
}

UnitalInclusion::UnitalInclusion(AlgebraPtr lower, AlgebraPtr upper, std::vector<std::vector<Copy>> copies)
    : lower_(std::move(lower)), upper_(std::move(upper)), copies_(std::move(copies)) {
  if (copies_.size() != upper_->n_blocks())
    throw std::invalid_argument("inclusion copies shape mismatch");
}

std::vector<std::vector<int>> UnitalInclusion::inclusion_matrix() const {
  std::vector<std::vector<int>> lam(lower_->n_blocks(), std::vector<int>(upper_->n_blocks(), 0));
  for (std::size_t u = 0; u < copies_.size(); ++u)
    for (const auto& c : copies_[u]) lam[c.lower_block][u] += 1;
  return lam;
}

AlgebraElement UnitalInclusion::embed(const AlgebraElement& x) const {
  if (x.algebra() != lower_) throw std::invalid_argument("embed: element not in lower algebra");
  AlgebraElement out(upper_);
  for (std::size_t u = 0; u < copies_.size(); ++u) {
    Matrix& dst = out.block(u);
    for (const auto& c : copies_[u]) {
      const Matrix& src = x.block(c.lower_block);
      if (c.is_index()) {
        const auto& map = c.index_map;
        for (std::size_t r = 0; r < src.rows(); ++r)
          for (std::size_t s = 0; s < src.cols(); ++s) dst(map[r], map[s]) += src(r, s);
      } else {
        dst += c.v * src * adjoint(c.v);
      }
    }
  }
  return out;
}

AlgebraElement UnitalInclusion::expect(const AlgebraElement& x) const {
  if (x.algebra() != upper_) throw std::invalid_argument("expect: element not in upper algebra");
  AlgebraElement out(lower_);
  for (std::size_t u = 0; u < copies_.size(); ++u) {
    const Matrix& src = x.block(u);
    const double tu = upper_->trace_weight(u);
    for (const auto& c : copies_[u]) {
      Matrix& dst = out.block(c.lower_block);
      if (c.is_index()) {
        const auto& map = c.index_map;
        for (std::size_t r = 0; r < dst.rows(); ++r)
          for (std::size_t s = 0; s < dst.cols(); ++s) dst(r, s) += tu * src(map[r], map[s]);
      } else {
        dst += tu * (adjoint(c.v) * src * c.v);
      }
    }
  }
  for (std::size_t l = 0; l < lower_->n_blocks(); ++l) {
    const cplx scale = 1.0 / lower_->trace_weight(l);
    out.block(l) *= scale;
  }
  return out;
}

double UnitalInclusion::verify(std::mt19937_64& rng, int samples) const {
  double resid = 0.0;
  // unitality
  AlgebraElement one_low = AlgebraElement::identity(lower_);
  resid = std::max(resid, norm_inf(embed(one_low) - AlgebraElement::identity(upper_)));
  // trace compatibility t_low = Lambda t_up
  auto lam = inclusion_matrix();
  for (std::size_t l = 0; l < lower_->n_blocks(); ++l) {
    double s = 0.0;
    for (std::size_t u = 0; u < upper_->n_blocks(); ++u)
      s += lam[l][u] * upper_->trace_weight(u);
    resid = std::max(resid, std::abs(s - lower_->trace_weight(l)));
  }
  // *-homomorphism on random pairs
  for (int i = 0; i < samples; ++i) {
    AlgebraElement a = AlgebraElement::random(lower_, rng);
    AlgebraElement b = AlgebraElement::random(lower_, rng);
    resid = std::max(resid, norm_inf(embed(a * b) - embed(a) * embed(b)));
    resid = std::max(resid, norm_inf(embed(adjoint(a)) - adjoint(embed(a))));
    // trace preservation and expectation duality tr(E(x) y) = tr(x embed(y))
    AlgebraElement x = AlgebraElement::random(upper_, rng);
    resid = std::max(resid, std::abs(trace(expect(x) * a) - trace(x * embed(a))));
  }
  return resid;
}

std::vector<AlgebraElement> relative_commutant(AlgebraPtr alg,
                                               const std::vector<AlgebraElement>& generators,
                                               double tol) {
  // Linear system [x, g] = 0 over the concatenated block entries of x.
  const std::size_t dim = alg->dim();
  std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> coords;
  coords.reserve(dim);
  for (std::size_t b = 0; b < alg->n_blocks(); ++b)
    for (std::size_t r = 0; r < alg->block_size(b); ++r)
      for (std::size_t c = 0; c < alg->block_size(b); ++c) coords.push_back({b, {r, c}});

  std::size_t rows = 0;
  for (const auto& g : generators) {
    (void)g;
    rows += dim;
  }
  Matrix a(std::max<std::size_t>(rows, 1), dim);
  std::size_t row0 = 0;
  for (const auto& g : generators) {
    if (g.algebra() != alg) throw std::invalid_argument("commutant generator in wrong algebra");
    // row index: output coordinate (b, r, c); column: input coordinate
    std::vector<std::size_t> block_offset(alg->n_blocks(), 0);
    for (std::size_t b = 1; b < alg->n_blocks(); ++b)
      block_offset[b] = block_offset[b - 1] + alg->block_size(b - 1) * alg->block_size(b - 1);
    for (std::size_t col = 0; col < dim; ++col) {
      const auto [b, rc] = coords[col];
      const auto [r, c] = rc;
      const Matrix& gb = g.block(b);
      const std::size_t s = alg->block_size(b);
      const std::size_t orow = row0 + block_offset[b];
      // x has 1 at (b,r,c): (xg - gx) block b gets g(c,:) in row r and -g(:,r) in column c
      for (std::size_t j = 0; j < s; ++j) {
        a(orow + r * s + j, col) += gb(c, j);
        a(orow + j * s + c, col) -= gb(j, r);
      }
    }
    row0 += dim;
  }
  Matrix ns = (generators.empty()) ? Matrix::identity(dim) : nullspace(a, tol);
  std::vector<AlgebraElement> basis;
  for (std::size_t j = 0; j < ns.cols(); ++j) {
    AlgebraElement x(alg);
    for (std::size_t col = 0; col < dim; ++col) {
      const auto [b, rc] = coords[col];
      x.block(b)(rc.first, rc.second) = ns(col, j);
    }
    basis.push_back(std::move(x));
  }
  // Orthonormalize in the trace inner product and close under adjoint.
  std::vector<AlgebraElement> out;
  auto add = [&](AlgebraElement v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : out) {
        const cplx d = inner(v, b);
        v -= d * b;
      }
    const double nrm = std::sqrt(std::abs(inner(v, v).real()));
    if (nrm > 1e-8) {
      v *= cplx(1.0 / nrm);
      out.push_back(std::move(v));
    }
  };
  for (const auto& v : basis) {
    add(v);
    add(adjoint(v));
  }
  return out;
}

AlgebraElement central_support(const AlgebraElement& p, double tol) {
  if (!is_projection(p, tol)) throw std::invalid_argument("central_support: input is not a projection");
  AlgebraElement z(p.algebra());
  for (std::size_t b = 0; b < p.n_blocks(); ++b)
    if (norm_inf(p.block(b)) > tol) z.block(b) = Matrix::identity(p.algebra()->block_size(b));
  return z;
}

IdealSpan two_sided_ideal_span(const std::vector<AlgebraElement>& s, double tol) {
  IdealSpan out;
  if (s.empty()) return out;
  const auto alg = s.front().algebra();
  for (std::size_t b = 0; b < alg->n_blocks(); ++b) {
    bool hit = false;
    for (const auto& x : s) hit |= norm_inf(x.block(b)) > tol;
    if (hit) {
      out.supported_blocks.push_back(b);
      out.dimension += alg->block_size(b) * alg->block_size(b);
    }
  }
  return out;
}

}  // namespace mtower

namespace mtower {

std::string element_json(const AlgebraElement& x) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json blocks = nlohmann::json::array();
  for (std::size_t b = 0; b < x.n_blocks(); ++b) {
    nlohmann::ordered_json e;
    e["label"] = x.algebra()->block_label(b);
    nlohmann::ordered_json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < x.block(b).rows(); ++r) {
      nlohmann::ordered_json row = nlohmann::json::array();
      for (std::size_t c = 0; c < x.block(b).cols(); ++c)
        row.push_back({x.block(b)(r, c).real(), x.block(b)(r, c).imag()});
      rows.push_back(row);
    }
    e["matrix"] = rows;
    blocks.push_back(e);
  }
  j["blocks"] = blocks;
  return j.dump();
}

}  // namespace mtower
