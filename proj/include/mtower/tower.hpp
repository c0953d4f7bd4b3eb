#pragma once

#include <optional>

#include "mtower/graph.hpp"
#include "mtower/multimatrix.hpp"
#include "mtower/report.hpp"

namespace mtower {

/// Paths of one length from the basepoint, stored as a trie layer.
/// Paths are ordered lexicographically in (parent path, step), grouped by
/// end vertex into the blocks of the corresponding algebra level.
struct PathLevel {
  std::vector<std::size_t> parent;                   // index into previous level
  std::vector<WeightedBipartiteGraph::Step> step;    // step taken from the parent
  std::vector<std::size_t> end_vertex;               // index in the class of this parity
  std::vector<std::vector<std::size_t>> paths_by_vertex;  // per vertex: path ids
  std::vector<int> block_of_vertex;                  // -1 when unreachable
  std::vector<std::size_t> vertex_of_block;
  std::vector<std::size_t> local_index;              // path id -> index within its block
};

struct PathModel {
  WeightedBipartiteGraph graph;
  std::size_t offset = 0;                 // tower level i lives at path level offset + i
  std::vector<PathLevel> levels;          // full path levels 0 .. offset + depth
};

/// Graded sequence of algebras with unital inclusions, compatible traces and
/// Jones projections e_n in M_{n+1}.
class MarkovTower {
public:
  double modulus = 0.0;
  std::vector<AlgebraPtr> levels;            // M_0 .. M_N
  std::vector<UnitalInclusion> inclusions;   // [i] : M_i -> M_{i+1}
  std::vector<AlgebraElement> jones;         // jones[n] = e_n in M_{n+1}; index 0 unused
  std::optional<PathModel> path;

  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
  bool connected() const { return levels[0]->dim() == 1; }

  /// Find the level whose algebra holds x (by pointer identity).
  std::size_t level_of(const AlgebraElement& x) const;
  /// Iterated unital inclusion up to `to_level`.
  AlgebraElement include(AlgebraElement x, std::size_t to_level) const;
  /// Iterated conditional expectation down to `to_level`.
  AlgebraElement expect_down(AlgebraElement x, std::size_t to_level) const;
  /// e_n included into M_level (level >= n+1).
  AlgebraElement jones_at(std::size_t n, std::size_t level) const;
};

/// Path-model tower over a pointed weighted bipartite graph.
MarkovTower build_tower(const WeightedBipartiteGraph& g, std::size_t depth);

Report verify_markov_axioms(const MarkovTower& t, double tolerance, int samples = 4,
                            std::uint64_t seed = 0);
Report verify_elementary_properties(const MarkovTower& t, double tolerance, int samples = 4,
                                    std::uint64_t seed = 0);

/// Linear dimensions of the ideals X_n = M_{n-1} e_{n-1} M_{n-1} and the
/// complements Y_n ("new stuff"), for n = 0 .. depth; X_0 = X_1 = 0.
struct NewStuffDims {
  std::vector<std::size_t> x_dim;
  std::vector<std::size_t> y_dim;
};
NewStuffDims new_stuff_dimensions(const MarkovTower& t);

/// Least n with Y_n = (0), when visible within the built depth.
std::optional<std::size_t> finite_depth(const MarkovTower& t);

struct PrincipalGraphResult {
  WeightedBipartiteGraph graph;
  bool truncated = false;     // depth was insufficient to certify stabilization
  std::size_t read_level = 0; // Bratteli step the graph was read from
};
PrincipalGraphResult principal_graph(const MarkovTower& t);

MarkovTower shift(const MarkovTower& t, std::size_t k);

/// Compressed tower together with the per-level compression isometries
/// (the columns of isometries[level][block] span the range of the embedded
/// projection in that block; keep[level][block] is the compressed block
/// index, -1 when the block dies).
struct Compression {
  MarkovTower tower;
  std::vector<std::vector<Matrix>> isometries;
  std::vector<std::vector<int>> keep;

  /// V* x V at one level (x in the parent tower's algebra there).
  AlgebraElement apply(const AlgebraElement& x, std::size_t level) const;
};
Compression compress_full(const MarkovTower& t, const AlgebraElement& p);
MarkovTower compress(const MarkovTower& t, const AlgebraElement& p);
/// Levels M_j, M_{j+k}, ... with the cabled Jones projections; modulus d^k.
MarkovTower multistep(const MarkovTower& t, std::size_t j, std::size_t k);

/// The cabled projection f^{j+k}_j evaluated in M_{j+2k} by the word formula.
AlgebraElement cabled_projection_in_tower(const MarkovTower& t, std::size_t j, std::size_t k);

std::string bratteli_dot(const MarkovTower& t);

}  // namespace mtower
