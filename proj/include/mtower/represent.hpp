#pragma once

#include "mtower/tljdiag.hpp"
#include "mtower/tower.hpp"

namespace mtower {

/// Substitute the tower's Jones projections for the diagram generators:
/// evaluates a TL element at level n (= n_bottom = n_top) as an element of
/// M_n via the loop/path state sum. Requires a path model.
AlgebraElement represent(const MarkovTower& t, const TLElement& x);

/// All TL_n basis diagrams (planar pairings of n bottom + n top points).
std::vector<TLDiagram> tl_basis(std::size_t n, int shading = +1);

/// Numerical rank of { represent(D) : D in tl_basis(n) }.
std::size_t image_dimension(const MarkovTower& t, std::size_t n, double tol = 1e-8);

/// Max residual of the identity relating the cabled projection f^{j+k}_j to
/// the ascending Jones word times its residual tangle, evaluated in M_{j+2k}.
double multistep_relation_check(const MarkovTower& t, std::size_t j, std::size_t k);

/// The same residual computed purely diagrammatically in TL_{j+2k}.
double multistep_relation_check_diagrams(std::size_t j, std::size_t k, double modulus);

/// Gram rank of algebra elements under the trace inner product.
std::size_t family_rank(const std::vector<AlgebraElement>& fam, double tol = 1e-8);

}  // namespace mtower
