#pragma once

#include <array>
#include <map>

#include "mtower/represent.hpp"

namespace mtower {

/// Morphism [src] -> [dst] of the projection category of a Markov tower;
/// the carrier lives in M_{(src+dst)/2}.
struct ProjMorphism {
  std::size_t src = 0;
  std::size_t dst = 0;
  AlgebraElement carrier;
};

/// The category of projections of a Markov tower: objects [n], composition
/// by the three conditional-expectation formulas, the TLJ module action and
/// the pivotal trace. Tangle representations are memoized per instance.
class ProjectionCategory {
public:
  explicit ProjectionCategory(const MarkovTower& t) : t_(&t) {}

  const MarkovTower& tower() const { return *t_; }
  double modulus() const { return t_->modulus; }

  ProjMorphism identity(std::size_t n) const;
  ProjMorphism morphism(std::size_t src, std::size_t dst, AlgebraElement carrier) const;
  ProjMorphism random_morphism(std::size_t src, std::size_t dst, std::mt19937_64& rng) const;
  static ProjMorphism dagger(const ProjMorphism& f);

  /// g after f; dispatches on the three level patterns, remaining cases via
  /// compose(f+, g+)+ = (g o f)+.
  ProjMorphism compose(const ProjMorphism& g, const ProjMorphism& f);

  /// Right action by identities and by TL morphisms: f <| 1_[j], 1_[n] <| g,
  /// and the bifunctorial combination f <| g.
  ProjMorphism act_identity(const ProjMorphism& f, std::size_t j);
  ProjMorphism act_tl(std::size_t n, const TLElement& g);
  ProjMorphism act(const ProjMorphism& f, const TLElement& g);

  /// Tr_[n] = d^n tr_n on endomorphisms of [n].
  cplx pivotal_trace(const ProjMorphism& f) const;

  AlgebraElement rep_cached(const TLDiagram& d);

private:
  const MarkovTower* t_;
  std::map<TLDiagram, AlgebraElement> rep_cache_;
};

/// Precomputed data for the 4x4 linking-algebra homomorphism at (n,i,j,k):
/// object levels, the diagonal cup/cap projections p_a in M_N and the
/// standardizer tangles for the off-diagonal entries, N = n+2(i+j+k).
class LinkingMap {
public:
  LinkingMap(ProjectionCategory& cat, std::size_t n, std::size_t i, std::size_t j, std::size_t k);

  std::size_t big_level() const { return N_; }
  std::size_t object_level(std::size_t a) const { return lvl_[a]; }
  /// Carrier level of the (a,b) entry, (lvl_a + lvl_b)/2.
  std::size_t entry_level(std::size_t a, std::size_t b) const { return (lvl_[a] + lvl_[b]) / 2; }
  const AlgebraElement& diagonal_projection(std::size_t a) const { return p_[a]; }

  /// pi applied to a single entry x: [lvl_b] -> [lvl_a].
  AlgebraElement apply_entry(std::size_t a, std::size_t b, const AlgebraElement& x) const;

  /// Certificate that x -> iota(x) p_a is injective on M_{lvl_a}: the
  /// expectation of p_a down to level lvl_a must be a strictly positive
  /// scalar; returns (scalar, deviation from scalar).
  std::pair<double, double> diagonal_injectivity_certificate(std::size_t a) const;

private:
  ProjectionCategory* cat_;
  std::size_t N_;
  std::array<std::size_t, 4> lvl_{};
  std::array<double, 4> delta_{};  // filler exponents i+j+k, j+k, k, 0
  std::array<AlgebraElement, 4> p_;
  std::array<std::array<AlgebraElement, 4>, 4> standardizer_;  // a < b entries
};

/// One seeded random 4x4 array of appropriately-leveled entries.
using LinkingElement = std::array<std::array<ProjMorphism, 4>, 4>;
LinkingElement random_linking_element(ProjectionCategory& cat, const LinkingMap& lm,
                                      std::mt19937_64& rng);
LinkingElement linking_multiply(ProjectionCategory& cat, const LinkingMap& lm,
                                const LinkingElement& x, const LinkingElement& y);
std::array<std::array<AlgebraElement, 4>, 4> linking_apply(const LinkingMap& lm,
                                                           const LinkingElement& x);

/// Simple objects: principal-graph vertices with representative minimal
/// projections and the partial isometry linking p in M_n to p e_{n+1}.
struct SimpleObject {
  std::string vertex;
  std::size_t level = 0;
  std::size_t block = 0;
  ProjMorphism witness;  // [level] -> [level+2]
};
std::vector<SimpleObject> simple_objects(ProjectionCategory& cat);

Report verify_projcat(ProjectionCategory& cat, int samples, double tol_compose,
                      std::uint64_t seed = 0);
Report verify_linking(ProjectionCategory& cat, std::size_t n, std::size_t i, std::size_t j,
                      std::size_t k, int pairs, double tolerance, std::uint64_t seed = 0);
Report verify_pivotal(ProjectionCategory& cat, std::size_t max_n, std::size_t max_k, int samples,
                      double tolerance, std::uint64_t seed = 0);

}  // namespace mtower
