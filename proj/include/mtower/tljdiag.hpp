#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mtower/linalg.hpp"

namespace mtower {

/// Planar pairing of n_bottom + n_top boundary points of a rectangle.
/// Points are numbered 0..n_bottom-1 along the bottom (left to right) and
/// n_bottom..n_bottom+n_top-1 along the top (left to right). No closed
/// loops are stored; multiplication evaluates them into the coefficient.
struct TLDiagram {
  std::uint16_t n_bottom = 0;
  std::uint16_t n_top = 0;
  int shading = +1;  // sign of the leftmost region
  std::vector<std::uint16_t> pairing;

  static TLDiagram identity(std::size_t n, int shading = +1);
  /// Diagram of E_i in TL_n (1-based i): cup (i-1, i) at the bottom and the
  /// matching cap at the top, all other strands through.
  static TLDiagram e_diagram(std::size_t i, std::size_t n, int shading = +1);

  std::size_t points() const { return static_cast<std::size_t>(n_bottom) + n_top; }
  bool is_planar() const;
  void validate() const;

  TLDiagram flipped() const;                       // vertical flip (adjoint)
  TLDiagram tensor(const TLDiagram& right) const;  // horizontal juxtaposition
  /// Move the rightmost `count` top points to the bottom right (order
  /// reversing, as when folding a bundle down around the right side).
  TLDiagram bend_down(std::size_t count) const;
  TLDiagram bend_up(std::size_t count) const;

  friend bool operator==(const TLDiagram&, const TLDiagram&) = default;
  friend auto operator<=>(const TLDiagram&, const TLDiagram&) = default;
};

/// Vertical stacking x over y (y's top glued to x's bottom).
/// Returns the reduced diagram and the number of closed loops removed.
std::pair<TLDiagram, int> stack_diagrams(const TLDiagram& x, const TLDiagram& y);

/// All non-crossing perfect pairings of `points` boundary points of a disk
/// (used for bases of TL_n via n bottom + n top points).
std::vector<std::vector<std::uint16_t>> noncrossing_pairings(std::size_t points);

/// Formal linear combination of TL diagrams of one signature, with modulus d.
class TLElement {
public:
  TLElement() = default;
  TLElement(std::size_t n_bottom, std::size_t n_top, int shading, double modulus);

  static TLElement from_diagram(const TLDiagram& d, double modulus, cplx coeff = 1.0);
  static TLElement identity(std::size_t n, double modulus, int shading = +1);
  /// Jones projection e_i = d^{-1} E_i in TL_n.
  static TLElement jones_projection(std::size_t i, std::size_t n, double modulus, int shading = +1);

  std::size_t n_bottom() const { return n_bottom_; }
  std::size_t n_top() const { return n_top_; }
  int shading() const { return shading_; }
  double modulus() const { return modulus_; }
  const std::map<TLDiagram, cplx>& terms() const { return terms_; }

  void add_term(const TLDiagram& d, cplx coeff);

  TLElement& operator+=(const TLElement& o);
  TLElement& operator*=(cplx s);
  friend TLElement operator+(TLElement a, const TLElement& b) { return a += b; }
  friend TLElement operator*(cplx s, TLElement a) { return a *= s; }
  TLElement operator-(const TLElement& o) const;

  TLElement adjoint() const;
  TLElement tensor(const TLElement& right) const;
  TLElement bend_down(std::size_t count) const;
  TLElement bend_up(std::size_t count) const;

  double norm_inf() const;  // max coefficient magnitude

private:
  std::size_t n_bottom_ = 0;
  std::size_t n_top_ = 0;
  int shading_ = +1;
  double modulus_ = 0.0;
  std::map<TLDiagram, cplx> terms_;
};

/// Vertical stacking product, x over y; closed loops contribute factors d.
TLElement diagram_multiply(const TLElement& x, const TLElement& y);
TLElement operator*(const TLElement& x, const TLElement& y);

/// Cabled Jones projection f^{j+k}_j in TL_{j+2k}, evaluated from the word
/// d^{k(k-1)} (e_{j+k} ... e_{j+1})(e_{j+k+1} ... e_{j+2}) ... (e_{j+2k-1} ... e_{j+k}).
TLElement cabled_projection(std::size_t j, std::size_t k, double modulus);

/// The same projection as a single diagram with k nested cup/caps to the
/// right of j through strands, coefficient d^{-k}.
TLElement cabled_projection_diagram(std::size_t j, std::size_t k, double modulus);

/// Number of planar pairings of 2n points (Catalan number), by enumeration.
std::size_t generic_dimension(std::size_t n);

/// Close the rightmost strand (join last bottom and last top point around
/// the right side); a strand already connecting them closes into a loop.
TLElement cap_right(const TLElement& x);
/// Close the leftmost strand around the left side; flips the shading.
TLElement cap_left(const TLElement& x);
/// Add a through strand on the right / on the left (left flips shading).
TLElement include_right(const TLElement& x);
TLElement include_left(const TLElement& x);

/// Text notation: '|' for a through strand, balanced "()" for a nested
/// cup at the bottom with the matching cap at the top, e.g. "||()".
TLDiagram parse_diagram(const std::string& text, int shading = +1);

}  // namespace mtower
