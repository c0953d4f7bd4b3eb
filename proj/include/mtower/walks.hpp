#pragma once

#include "mtower/graph.hpp"

namespace mtower {

/// A walk of fixed length on a bipartite graph, with one vertex per
/// position (verts.size() = steps.size() + 1) and one edge instance per step.
struct Walk {
  std::vector<WeightedBipartiteGraph::Step> steps;
  std::vector<std::size_t> verts;
};

/// All walks of length `len` from `from`, in lexicographic step order.
std::vector<Walk> walks_from(const WeightedBipartiteGraph& g, Vertex from, std::size_t len);

}  // namespace mtower
