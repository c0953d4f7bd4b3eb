#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mtower/linalg.hpp"

namespace mtower {

/// Finite direct sum of full matrix blocks with a positive trace weight per
/// block (the trace of a minimal projection in that block).
class MultiMatrixAlgebra {
public:
  struct Block {
    std::string label;
    std::size_t size = 0;
  };

  MultiMatrixAlgebra() = default;
  MultiMatrixAlgebra(std::vector<Block> blocks, std::vector<double> trace_weight, bool normalized);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t n_blocks() const { return blocks_.size(); }
  std::size_t block_size(std::size_t b) const { return blocks_[b].size; }
  const std::string& block_label(std::size_t b) const { return blocks_[b].label; }
  double trace_weight(std::size_t b) const { return trace_weight_[b]; }
  bool normalized() const { return normalized_; }
  int block_by_label(const std::string& label) const;  // -1 if absent

  /// Total linear dimension, sum of size^2.
  std::size_t dim() const;
  /// Sum of block sizes (dimension of the underlying path space).
  std::size_t total_size() const;

private:
  std::vector<Block> blocks_;
  std::vector<double> trace_weight_;
  bool normalized_ = true;
};

using AlgebraPtr = std::shared_ptr<const MultiMatrixAlgebra>;

/// Element of a MultiMatrixAlgebra: one matrix per block.
class AlgebraElement {
public:
  AlgebraElement() = default;
  explicit AlgebraElement(AlgebraPtr alg);

  static AlgebraElement identity(AlgebraPtr alg);
  static AlgebraElement zero(AlgebraPtr alg);
  static AlgebraElement random(AlgebraPtr alg, std::mt19937_64& rng);
  static AlgebraElement random_selfadjoint(AlgebraPtr alg, std::mt19937_64& rng);
  /// Matrix unit e_{rc} in block b.
  static AlgebraElement matrix_unit(AlgebraPtr alg, std::size_t b, std::size_t r, std::size_t c);

  const AlgebraPtr& algebra() const { return alg_; }
  Matrix& block(std::size_t b) { return blocks_[b]; }
  const Matrix& block(std::size_t b) const { return blocks_[b]; }
  std::size_t n_blocks() const { return blocks_.size(); }

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(cplx s);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(cplx s, AlgebraElement a) { return a *= s; }

private:
  AlgebraPtr alg_;
  std::vector<Matrix> blocks_;
};

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement adjoint(const AlgebraElement& x);
cplx trace(const AlgebraElement& x);
/// Trace inner product <x,y> = tr(y* x).
cplx inner(const AlgebraElement& x, const AlgebraElement& y);
double norm_inf(const AlgebraElement& x);
bool is_projection(const AlgebraElement& p, double tol = 1e-9);

/// Unital inclusion of multi-matrix algebras. Each upper block is an
/// orthogonal sum of isometric copies of lower blocks:
///   embed(x)_u = sum over copies (l, V)  of  V x_l V*.
/// Copies are either explicit isometries or index maps (V e_r = e_map[r]).
class UnitalInclusion {
public:
  struct Copy {
    std::size_t lower_block = 0;
    std::vector<std::uint32_t> index_map;  // non-empty: 0/1 isometry via indices
    Matrix v;                              // else dense isometry, upper_size x lower_size
    bool is_index() const { return !index_map.empty(); }
  };

  UnitalInclusion() = default;
  UnitalInclusion(AlgebraPtr lower, AlgebraPtr upper, std::vector<std::vector<Copy>> copies);

  const AlgebraPtr& lower() const { return lower_; }
  const AlgebraPtr& upper() const { return upper_; }
  const std::vector<std::vector<Copy>>& copies() const { return copies_; }

  /// Inclusion matrix: entry (l, u) = number of copies of lower block l in upper block u.
  std::vector<std::vector<int>> inclusion_matrix() const;

  AlgebraElement embed(const AlgebraElement& x) const;
  /// Trace-preserving conditional expectation upper -> lower.
  AlgebraElement expect(const AlgebraElement& x) const;

  /// Structural checks: unitality, trace compatibility t_low = Lambda t_up,
  /// multiplicativity on random elements. Returns max residual.
  double verify(std::mt19937_64& rng, int samples = 3) const;

private:
  AlgebraPtr lower_;
  AlgebraPtr upper_;
  std::vector<std::vector<Copy>> copies_;  // per upper block
};

/// Orthonormal basis (trace inner product) of {x : [x, g] = 0 for all g}.
/// The result is *-closed and contains the identity's span.
std::vector<AlgebraElement> relative_commutant(AlgebraPtr alg,
                                               const std::vector<AlgebraElement>& generators,
                                               double tol = 1e-10);

/// Smallest central projection dominating p (blockwise support indicator).
AlgebraElement central_support(const AlgebraElement& p, double tol = 1e-9);

struct IdealSpan {
  std::vector<std::size_t> supported_blocks;
  std::size_t dimension = 0;  // sum of size^2 over supported blocks
};

/// Two-sided ideal generated by S. In a multi-matrix algebra this is the sum
/// of the full blocks where some generator has a nonzero component.
IdealSpan two_sided_ideal_span(const std::vector<AlgebraElement>& s, double tol = 1e-9);

/// Block-matrix dump for debugging: entries as [re, im] pairs per block.
std::string element_json(const AlgebraElement& x);

}  // namespace mtower
