#pragma once

#include "mtower/tower.hpp"
#include "mtower/walks.hpp"

namespace mtower {

/// Box space of the bipartite graph planar algebra: the span of based loops
/// of length 2n at vertices of one class. The loop-concatenation product
/// makes it a multi-matrix algebra with one block per ordered vertex pair
/// (base v, midpoint w); a loop is a pair of length-n walks v -> w.
class LoopSpace {
public:
  LoopSpace(WeightedBipartiteGraph graph, std::size_t n, int shading);

  struct BlockInfo {
    std::size_t base = 0;  // vertex index in the base class
    std::size_t mid = 0;   // vertex index in the class at distance n
    std::vector<Walk> walks;
  };

  const WeightedBipartiteGraph& graph() const { return graph_; }
  std::size_t half_length() const { return n_; }
  int shading() const { return shading_; }
  const AlgebraPtr& view() const { return view_; }
  const std::vector<BlockInfo>& block_info() const { return info_; }
  std::size_t n_loops() const { return view_->dim(); }

private:
  WeightedBipartiteGraph graph_;
  std::size_t n_ = 0;
  int shading_ = +1;
  AlgebraPtr view_;
  std::vector<BlockInfo> info_;
};

using LoopSpacePtr = std::shared_ptr<const LoopSpace>;

/// Count of based loops of length 2n at vertices of the given class.
std::size_t box_dimension(const WeightedBipartiteGraph& g, std::size_t n, int shading);

/// Element of a box space; coefficients are carried by the block matrices
/// of the multi-matrix view (entry (p,q) of block (v,w) = coefficient of the
/// loop that runs out along walk p and back along walk q).
struct GPAElement {
  LoopSpacePtr space;
  AlgebraElement elt;

  GPAElement() = default;
  GPAElement(LoopSpacePtr s, AlgebraElement e) : space(std::move(s)), elt(std::move(e)) {}
};

GPAElement gpa_zero(LoopSpacePtr space);
GPAElement gpa_identity(LoopSpacePtr space);
/// Indicator of one loop (block b of the view, outgoing walk p, return walk q).
GPAElement gpa_loop_indicator(LoopSpacePtr space, std::size_t block, std::size_t p, std::size_t q);

GPAElement gpa_multiply(const GPAElement& x, const GPAElement& y);
GPAElement gpa_adjoint(const GPAElement& x);
cplx gpa_trace(const GPAElement& x);
double gpa_norm_inf(const GPAElement& x);
GPAElement operator-(const GPAElement& x, const GPAElement& y);

/// Jones projection e_k of the loop tower, an element of the (k+1)-box.
GPAElement gpa_jones_projection(const WeightedBipartiteGraph& g, std::size_t k, int shading);
GPAElement gpa_jones_projection(LoopSpacePtr space_kplus1, std::size_t k);

/// Right inclusion (append a backtrack at the far point) and the
/// expectation-normalized right capping, with cap o include = id.
GPAElement gpa_include_right(const GPAElement& x, LoopSpacePtr target);
GPAElement gpa_cap_right(const GPAElement& x, LoopSpacePtr target);
/// Left inclusion (prepend a backtrack at the base) and expectation-
/// normalized left capping; both flip the shading.
GPAElement gpa_include_left(const GPAElement& x, LoopSpacePtr target);
GPAElement gpa_cap_left(const GPAElement& x, LoopSpacePtr target);

/// Package the loop tower (G_{n,+}, tr_n, e_{n+1}) as a Markov tower.
/// Not connected when the graph has more than one even vertex.
MarkovTower gpa_as_markov_tower(const WeightedBipartiteGraph& g, std::size_t depth);

/// JSON dump of a box-space basis (loops as vertex/edge sequences).
std::string gpa_basis_json(const LoopSpace& space);
/// JSON dump of an element as loop -> coefficient pairs.
std::string gpa_element_json(const GPAElement& x);

Report verify_gpa(const WeightedBipartiteGraph& g, std::size_t max_n, double tolerance,
                  std::uint64_t seed = 0);

}  // namespace mtower
