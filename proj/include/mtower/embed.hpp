#pragma once

#include "mtower/gpa.hpp"
#include "mtower/projcat.hpp"

namespace mtower {

/// Pimsner-Popa basis for M_hi over M_lo inside a tower: a finite family
/// {b} in M_hi with x = sum_b b E(b* x); the Watatani index sum_b b b* is a
/// scalar, d^{2(hi-lo)} for tower inclusions.
struct PimsnerPopaBasis {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::vector<AlgebraElement> basis;  // elements of levels[hi]
  double watatani = 0.0;
};

PimsnerPopaBasis pimsner_popa_basis(const MarkovTower& t, std::size_t lo, std::size_t hi,
                                    double tol = 1e-10);

/// Invariant checks: reconstruction, scalar index, and (when depth allows)
/// sum_b b e b* against the central support of e in the next level.
Report verify_strongly_markov(const MarkovTower& t, const PimsnerPopaBasis& ppb, double tolerance,
                              std::uint64_t seed = 0);

/// Least r such that M_2r in M_{2r+1} in (M_{2r+2}, e_{2r+1}) is standard:
/// the compression, index and spanning conditions hold with p = e_{2r+1}.
struct StandardLevel {
  std::size_t r = 0;
  double max_residual = 0.0;
  bool found = false;
};
StandardLevel find_standard_level(const MarkovTower& t, double tolerance = 1e-9);

/// The canonical relative-commutant planar algebra of the strongly Markov
/// inclusion M_{2r} in M_{2r+1}: box spaces P_{n,+} = M_{2r}' cap M_{2r+n}
/// and P_{n,-} = M_{2r+1}' cap M_{2r+1+n}, with the generator actions, and
/// the coordinate isomorphism onto the loop spaces of the Bratteli graph.
class CanonicalPA {
public:
  CanonicalPA(const MarkovTower& t, std::size_t r, std::size_t n_max);

  const MarkovTower& tower() const { return *t_; }
  std::size_t r() const { return r_; }
  std::size_t n_max() const { return n_max_; }
  const WeightedBipartiteGraph& bratteli() const { return bratteli_; }
  LoopSpacePtr box_space(std::size_t n, int shading) const;
  std::size_t base_level(int shading) const { return shading > 0 ? 2 * r_ : 2 * r_ + 1; }
  std::size_t box_dim(std::size_t n, int shading) const;

  /// Coordinates in the bipath basis <-> tower element of M_{base+n}.
  AlgebraElement to_tower(const GPAElement& coords) const;
  GPAElement from_tower(std::size_t n, int shading, const AlgebraElement& x,
                        double* membership_residual = nullptr) const;

  /// Generator actions on tower elements (expectation-normalized caps).
  AlgebraElement right_include(const AlgebraElement& x) const;
  AlgebraElement right_cap(const AlgebraElement& x) const;
  AlgebraElement left_include(const AlgebraElement& x) const;  // reinterpretation
  AlgebraElement left_cap(const AlgebraElement& x) const;      // d^{-2} sum b x b*
  AlgebraElement left_cap_with(const AlgebraElement& x,
                               const std::vector<AlgebraElement>& basis) const;
  /// Canonical Jones projection of the m+1 box: the tower e_{base+m}.
  AlgebraElement jones(std::size_t m, int shading) const;

  const PimsnerPopaBasis& pp_basis(int shading) const { return shading > 0 ? pp_plus_ : pp_minus_; }

private:
  const MarkovTower* t_;
  std::size_t r_ = 0;
  std::size_t n_max_ = 0;
  WeightedBipartiteGraph bratteli_;
  std::vector<LoopSpacePtr> plus_, minus_;
  PimsnerPopaBasis pp_plus_;   // M_{2r} in M_{2r+1}
  PimsnerPopaBasis pp_minus_;  // M_{2r+1} in M_{2r+2}
  // translation: Bratteli class index -> original block index, per level parity
  std::vector<std::size_t> even_vertex_of_block_, odd_vertex_of_block_;
  std::vector<std::size_t> prefix_count_even_, prefix_count_odd_;  // paths to each base block
};

/// The embedding of the Temperley-Lieb-Jones tower at the graph's modulus
/// into the graph planar algebra of the module's fusion graph: prepend 2r
/// strands, read off relative-commutant coordinates.
class ModuleEmbedding {
public:
  ModuleEmbedding(const MarkovTower& t, std::size_t r, std::size_t n_max);
  const CanonicalPA& pa() const { return pa_; }
  std::size_t r() const { return pa_.r(); }

  /// x is a TL element at the graph's modulus; shading from x.shading().
  GPAElement embed(const TLElement& x) const;
  /// The tower element behind embed(), before taking coordinates.
  AlgebraElement embed_to_tower(const TLElement& x) const;

private:
  CanonicalPA pa_;
};

Report verify_canonical_pa(const CanonicalPA& pa, double tolerance, int samples,
                           std::uint64_t seed = 0);
Report verify_planar_map(const ModuleEmbedding& e, std::size_t n_max, int samples,
                         double tolerance, std::uint64_t seed = 0);

/// Shift isomorphism P_n(r) -> P_n(r+1): the expectation onto the commutant
/// of M_{2r+2}, x -> d^{-4} sum_b b x b* over a Pimsner-Popa basis of
/// M_{2r+2} over M_{2r} (adds two strands on the left).
class ShiftIso {
public:
  ShiftIso(const MarkovTower& t, std::size_t r, std::size_t n_max);
  AlgebraElement apply(std::size_t n, int shading, const AlgebraElement& x) const;

private:
  const MarkovTower* t_;
  std::size_t r_;
  PimsnerPopaBasis two_step_plus_;   // M_{2r} in M_{2r+2}
  PimsnerPopaBasis two_step_minus_;  // M_{2r+1} in M_{2r+3}
};

Report verify_shift_iso(const MarkovTower& t, std::size_t r, std::size_t n_max, int samples,
                        double tolerance, std::uint64_t seed = 0);

/// Compression of the canonical planar algebra by a base projection with
/// full ideal span: x -> (compressed) x q, an isomorphism onto the canonical
/// planar algebra of the compressed tower.
struct CompressionIso {
  // the compressed tower of shift(t, 2r) by q, with its isometries
  Compression compression;
  std::size_t r = 0;
};
CompressionIso make_compression_iso(const MarkovTower& t, std::size_t r, const AlgebraElement& q);
Report verify_compression_iso(const MarkovTower& t, std::size_t r, const AlgebraElement& q,
                              std::size_t n_max, double tolerance, int samples,
                              std::uint64_t seed = 0);

/// Embeddings at r and r+1 agree after transporting through the shift
/// isomorphism; reports the max residual over the TL diagram basis.
Report invariance_shift(const WeightedBipartiteGraph& g, std::size_t r1, std::size_t r2,
                        std::size_t n_max, double tolerance);

/// Basepoint moved to another even vertex: the two embeddings differ by a
/// permutation-with-phase automorphism of the loop spaces, searched over
/// unpointed graph isomorphisms and walk phases. `conclusive` is false when
/// no witness was found (which is not a counterexample).
struct InvarianceResult {
  Report report;
  bool conclusive = false;
  double witness_residual = 0.0;
};
InvarianceResult invariance_basepoint(const WeightedBipartiteGraph& g, const std::string& new_base,
                                      std::size_t n_max, double tolerance);

}  // namespace mtower
