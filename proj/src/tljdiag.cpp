#include "mtower/tljdiag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mtower {

TLDiagram TLDiagram::identity(std::size_t n, int shading) {
  TLDiagram d;
  d.n_bottom = d.n_top = static_cast<std::uint16_t>(n);
  d.shading = shading;
  d.pairing.resize(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    d.pairing[i] = static_cast<std::uint16_t>(n + i);
    d.pairing[n + i] = static_cast<std::uint16_t>(i);
  }
  return d;
}

TLDiagram TLDiagram::e_diagram(std::size_t i, std::size_t n, int shading) {
  if (i < 1 || i >= n) throw std::invalid_argument("e_diagram: index out of range");
  TLDiagram d = identity(n, shading);
  const std::size_t a = i - 1, b = i;
  d.pairing[a] = static_cast<std::uint16_t>(b);
  d.pairing[b] = static_cast<std::uint16_t>(a);
  d.pairing[n + a] = static_cast<std::uint16_t>(n + b);
  d.pairing[n + b] = static_cast<std::uint16_t>(n + a);
  return d;
}

bool TLDiagram::is_planar() const {
  // Circular order: bottom left to right, then top right to left.
  const std::size_t p = points();
  std::vector<std::uint16_t> circ(p);  // circle position -> point id
  for (std::size_t i = 0; i < n_bottom; ++i) circ[i] = static_cast<std::uint16_t>(i);
  for (std::size_t t = 0; t < n_top; ++t)
    circ[n_bottom + t] = static_cast<std::uint16_t>(n_bottom + (n_top - 1 - t));
  std::vector<std::size_t> pos(p);
  for (std::size_t c = 0; c < p; ++c) pos[circ[c]] = c;
  std::vector<std::uint16_t> stack;
  for (std::size_t c = 0; c < p; ++c) {
    const std::uint16_t pt = circ[c];
    const std::uint16_t partner = pairing[pt];
    if (pos[partner] > c) {
      stack.push_back(pt);
    } else {
      if (stack.empty() || stack.back() != partner) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

void TLDiagram::validate() const {
  if ((n_bottom + n_top) % 2 != 0) throw std::invalid_argument("odd number of boundary points");
  if (pairing.size() != points()) throw std::invalid_argument("pairing size mismatch");
  for (std::size_t i = 0; i < points(); ++i) {
    if (pairing[i] >= points() || pairing[i] == i || pairing[pairing[i]] != i)
      throw std::invalid_argument("pairing is not a fixed-point-free involution");
  }
  if (!is_planar()) throw std::invalid_argument("pairing is not planar");
}

TLDiagram TLDiagram::flipped() const {
  TLDiagram d;
  d.n_bottom = n_top;
  d.n_top = n_bottom;
  d.shading = shading;
  d.pairing.resize(points());
  auto remap = [&](std::uint16_t p) -> std::uint16_t {
    return p < n_bottom ? static_cast<std::uint16_t>(n_top + p)
                        : static_cast<std::uint16_t>(p - n_bottom);
  };
  for (std::size_t i = 0; i < points(); ++i) d.pairing[remap(static_cast<std::uint16_t>(i))] = remap(pairing[i]);
  return d;
}

TLDiagram TLDiagram::tensor(const TLDiagram& right) const {
  TLDiagram d;
  d.n_bottom = static_cast<std::uint16_t>(n_bottom + right.n_bottom);
  d.n_top = static_cast<std::uint16_t>(n_top + right.n_top);
  d.shading = shading;
  d.pairing.resize(d.points());
  auto remap_left = [&](std::uint16_t p) -> std::uint16_t {
    return p < n_bottom ? p : static_cast<std::uint16_t>(p + right.n_bottom);
  };
  auto remap_right = [&](std::uint16_t p) -> std::uint16_t {
    return p < right.n_bottom ? static_cast<std::uint16_t>(p + n_bottom)
                              : static_cast<std::uint16_t>(p + n_bottom + n_top);
  };
  for (std::size_t i = 0; i < points(); ++i)
    d.pairing[remap_left(static_cast<std::uint16_t>(i))] = remap_left(pairing[i]);
  for (std::size_t i = 0; i < right.points(); ++i)
    d.pairing[remap_right(static_cast<std::uint16_t>(i))] = remap_right(right.pairing[i]);
  return d;
}

TLDiagram TLDiagram::bend_down(std::size_t count) const {
  if (count > n_top) throw std::invalid_argument("bend_down: not enough top points");
  TLDiagram d;
  d.n_bottom = static_cast<std::uint16_t>(n_bottom + count);
  d.n_top = static_cast<std::uint16_t>(n_top - count);
  d.shading = shading;
  d.pairing.resize(points());
  // old point -> new point
  auto remap = [&](std::uint16_t p) -> std::uint16_t {
    if (p < n_bottom) return p;
    const std::size_t t = p - n_bottom;  // top index
    if (t < n_top - count) return static_cast<std::uint16_t>(n_bottom + count + t);
    const std::size_t u = t - (n_top - count);
    return static_cast<std::uint16_t>(n_bottom + (count - 1 - u));
  };
  for (std::size_t i = 0; i < points(); ++i)
    d.pairing[remap(static_cast<std::uint16_t>(i))] = remap(pairing[i]);
  return d;
}

TLDiagram TLDiagram::bend_up(std::size_t count) const {
  if (count > n_bottom) throw std::invalid_argument("bend_up: not enough bottom points");
  TLDiagram d;
  d.n_bottom = static_cast<std::uint16_t>(n_bottom - count);
  d.n_top = static_cast<std::uint16_t>(n_top + count);
  d.shading = shading;
  d.pairing.resize(points());
  auto remap = [&](std::uint16_t p) -> std::uint16_t {
    if (p >= n_bottom) return static_cast<std::uint16_t>(p - count);  // top shifts left by count
    if (p < n_bottom - count) return p;
    const std::size_t u = p - (n_bottom - count);
    return static_cast<std::uint16_t>((n_bottom - count) + (n_top + count - 1 - u) + 0 + (0));
  };
  for (std::size_t i = 0; i < points(); ++i)
    d.pairing[remap(static_cast<std::uint16_t>(i))] = remap(pairing[i]);
  return d;
}

std::pair<TLDiagram, int> stack_diagrams(const TLDiagram& x, const TLDiagram& y) {
  if (x.n_bottom != y.n_top) throw std::invalid_argument("stack: signature mismatch");
  const std::size_t m = x.n_bottom;       // interface strands
  const std::size_t nb = y.n_bottom;      // final bottom
  const std::size_t nt = x.n_top;         // final top
  // Walk each strand. Nodes: (diagram, point). Interface: y-top j <-> x-bottom j.
  TLDiagram out;
  out.n_bottom = static_cast<std::uint16_t>(nb);
  out.n_top = static_cast<std::uint16_t>(nt);
  out.shading = y.shading;
  out.pairing.assign(nb + nt, 0);
  std::vector<char> visited_iface(m, 0);

  auto walk = [&](bool start_in_y, std::uint16_t start) -> std::pair<bool, std::uint16_t> {
    // Returns final endpoint as (in_y, point). Marks interface crossings.
    bool in_y = start_in_y;
    std::uint16_t p = start;
    while (true) {
      const TLDiagram& d = in_y ? y : x;
      p = d.pairing[p];
      if (in_y) {
        if (p < y.n_bottom) return {true, p};  // final bottom
        const std::size_t j = p - y.n_bottom;  // y top -> interface
        visited_iface[j] = 1;
        in_y = false;
        p = static_cast<std::uint16_t>(j);  // x bottom
      } else {
        if (p >= x.n_bottom) return {false, p};  // final top
        visited_iface[p] = 1;                    // x bottom -> interface
        in_y = true;
        p = static_cast<std::uint16_t>(y.n_bottom + p);  // y top
      }
    }
  };

  std::vector<char> done(nb + nt, 0);
  for (std::size_t i = 0; i < nb + nt; ++i) {
    if (done[i]) continue;
    const bool start_in_y = i < nb;
    const std::uint16_t start =
        start_in_y ? static_cast<std::uint16_t>(i) : static_cast<std::uint16_t>(x.n_bottom + (i - nb));
    auto [end_in_y, q] = walk(start_in_y, start);
    const std::size_t end_id = end_in_y ? q : nb + (q - x.n_bottom);
    out.pairing[i] = static_cast<std::uint16_t>(end_id);
    out.pairing[end_id] = static_cast<std::uint16_t>(i);
    done[i] = done[end_id] = 1;
  }

  // Remaining interface strands form closed loops.
  int loops = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (visited_iface[j]) continue;
    ++loops;
    // trace the loop through both diagrams
    bool in_y = false;
    std::uint16_t p = static_cast<std::uint16_t>(j);  // x bottom j
    visited_iface[j] = 1;
    while (true) {
      const TLDiagram& d = in_y ? y : x;
      const std::uint16_t q = d.pairing[p];
      std::size_t iface;
      if (in_y) {
        iface = q - y.n_bottom;  // must be a y-top point
        in_y = false;
        p = static_cast<std::uint16_t>(iface);
      } else {
        iface = q;  // must be an x-bottom point
        in_y = true;
        p = static_cast<std::uint16_t>(y.n_bottom + iface);
      }
      if (visited_iface[iface]) break;
      visited_iface[iface] = 1;
    }
  }
  return {out, loops};
}

std::vector<std::vector<std::uint16_t>> noncrossing_pairings(std::size_t points) {
  std::vector<std::vector<std::uint16_t>> out;
  if (points % 2 != 0) return out;
  if (points == 0) {
    out.push_back({});
    return out;
  }
  std::vector<std::uint16_t> idx(points);
  for (std::size_t i = 0; i < points; ++i) idx[i] = static_cast<std::uint16_t>(i);
  // pair position 0 with an odd offset, recurse on the two arcs
  for (std::size_t k = 1; k < points; k += 2) {
    auto inner = noncrossing_pairings(k - 1);
    auto outer = noncrossing_pairings(points - k - 1);
    for (const auto& pi : inner)
      for (const auto& po : outer) {
        std::vector<std::uint16_t> pairing(points);
        pairing[0] = static_cast<std::uint16_t>(k);
        pairing[k] = 0;
        for (std::size_t i = 0; i < k - 1; ++i) pairing[1 + i] = static_cast<std::uint16_t>(1 + pi[i]);
        for (std::size_t i = 0; i < points - k - 1; ++i)
          pairing[k + 1 + i] = static_cast<std::uint16_t>(k + 1 + po[i]);
        out.push_back(pairing);
      }
  }
  return out;
}

TLElement::TLElement(std::size_t n_bottom, std::size_t n_top, int shading, double modulus)
    : n_bottom_(n_bottom), n_top_(n_top), shading_(shading), modulus_(modulus) {}

TLElement TLElement::from_diagram(const TLDiagram& d, double modulus, cplx coeff) {
  d.validate();
  TLElement x(d.n_bottom, d.n_top, d.shading, modulus);
  x.add_term(d, coeff);
  return x;
}

TLElement TLElement::identity(std::size_t n, double modulus, int shading) {
  return from_diagram(TLDiagram::identity(n, shading), modulus);
}

TLElement TLElement::jones_projection(std::size_t i, std::size_t n, double modulus, int shading) {
  return from_diagram(TLDiagram::e_diagram(i, n, shading), modulus, cplx(1.0 / modulus));
}

void TLElement::add_term(const TLDiagram& d, cplx coeff) {
  if (d.n_bottom != n_bottom_ || d.n_top != n_top_ || d.shading != shading_)
    throw std::invalid_argument("TL term signature mismatch");
  auto it = terms_.find(d);
  if (it == terms_.end()) {
    if (coeff != cplx(0.0)) terms_.emplace(d, coeff);
  } else {
    it->second += coeff;
    if (std::abs(it->second) < 1e-14) terms_.erase(it);
  }
}

TLElement& TLElement::operator+=(const TLElement& o) {
  if (o.n_bottom_ != n_bottom_ || o.n_top_ != n_top_ || o.shading_ != shading_ ||
      o.modulus_ != modulus_)
    throw std::invalid_argument("TL element signature mismatch in +=");
  for (const auto& [d, c] : o.terms_) add_term(d, c);
  return *this;
}

TLElement& TLElement::operator*=(cplx s) {
  if (s == cplx(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [d, c] : terms_) c *= s;
  return *this;
}

TLElement TLElement::operator-(const TLElement& o) const {
  TLElement r = *this;
  TLElement neg = o;
  neg *= cplx(-1.0);
  r += neg;
  return r;
}

TLElement TLElement::adjoint() const {
  TLElement r(n_top_, n_bottom_, shading_, modulus_);
  for (const auto& [d, c] : terms_) r.add_term(d.flipped(), std::conj(c));
  return r;
}

TLElement TLElement::tensor(const TLElement& right) const {
  TLElement r(n_bottom_ + right.n_bottom_, n_top_ + right.n_top_, shading_, modulus_);
  for (const auto& [d, c] : terms_)
    for (const auto& [e, f] : right.terms_) r.add_term(d.tensor(e), c * f);
  return r;
}

TLElement TLElement::bend_down(std::size_t count) const {
  TLElement r(n_bottom_ + count, n_top_ - count, shading_, modulus_);
  for (const auto& [d, c] : terms_) r.add_term(d.bend_down(count), c);
  return r;
}

TLElement TLElement::bend_up(std::size_t count) const {
  TLElement r(n_bottom_ - count, n_top_ + count, shading_, modulus_);
  for (const auto& [d, c] : terms_) r.add_term(d.bend_up(count), c);
  return r;
}

double TLElement::norm_inf() const {
  double m = 0.0;
  for (const auto& [d, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

TLElement diagram_multiply(const TLElement& x, const TLElement& y) {
  if (x.n_bottom() != y.n_top() || x.shading() != y.shading())
    throw std::invalid_argument("diagram_multiply: signature mismatch");
  TLElement r(y.n_bottom(), x.n_top(), x.shading(), x.modulus());
  for (const auto& [dx, cx] : x.terms())
    for (const auto& [dy, cy] : y.terms()) {
      auto [d, loops] = stack_diagrams(dx, dy);
      r.add_term(d, cx * cy * std::pow(x.modulus(), loops));
    }
  return r;
}

TLElement operator*(const TLElement& x, const TLElement& y) { return diagram_multiply(x, y); }

TLElement cabled_projection(std::size_t j, std::size_t k, double modulus) {
  const std::size_t n = j + 2 * k;
  TLElement w = TLElement::identity(n, modulus);
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t i = j + k + t; i >= j + 1 + t; --i) w = w * TLElement::jones_projection(i, n, modulus);
  w *= cplx(std::pow(modulus, static_cast<double>(k * (k - 1))));
  return w;
}

TLElement cabled_projection_diagram(std::size_t j, std::size_t k, double modulus) {
  const std::size_t n = j + 2 * k;
  TLDiagram d = TLDiagram::identity(n);
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t a = j + s, b = j + 2 * k - 1 - s;
    d.pairing[a] = static_cast<std::uint16_t>(b);
    d.pairing[b] = static_cast<std::uint16_t>(a);
    d.pairing[n + a] = static_cast<std::uint16_t>(n + b);
    d.pairing[n + b] = static_cast<std::uint16_t>(n + a);
  }
  return TLElement::from_diagram(d, modulus, cplx(std::pow(modulus, -static_cast<double>(k))));
}

std::size_t generic_dimension(std::size_t n) {
  if (n > 8) throw std::invalid_argument("generic_dimension: enumeration bound exceeded (n <= 8)");
  return noncrossing_pairings(2 * n).size();
}

namespace {

TLDiagram remove_two_points(const TLDiagram& d, std::uint16_t a, std::uint16_t b) {
  // removes boundary points a < b (already re-paired), reindexing the rest
  TLDiagram r;
  std::vector<std::uint16_t> newid(d.points(), 0xFFFF);
  std::uint16_t next = 0;
  for (std::size_t i = 0; i < d.points(); ++i)
    if (i != a && i != b) newid[i] = next++;
  const bool a_bottom = a < d.n_bottom, b_bottom = b < d.n_bottom;
  r.n_bottom = static_cast<std::uint16_t>(d.n_bottom - (a_bottom ? 1 : 0) - (b_bottom ? 1 : 0));
  r.n_top = static_cast<std::uint16_t>(d.n_top - (a_bottom ? 0 : 1) - (b_bottom ? 0 : 1));
  r.shading = d.shading;
  r.pairing.assign(d.points() - 2, 0);
  for (std::size_t i = 0; i < d.points(); ++i) {
    if (i == a || i == b) continue;
    r.pairing[newid[i]] = newid[d.pairing[i]];
  }
  return r;
}

}  // namespace

TLElement cap_right(const TLElement& x) {
  if (x.n_bottom() == 0 || x.n_top() == 0)
    throw std::invalid_argument("cap_right: no strand to close");
  TLElement r(x.n_bottom() - 1, x.n_top() - 1, x.shading(), x.modulus());
  const std::uint16_t pb = static_cast<std::uint16_t>(x.n_bottom() - 1);
  const std::uint16_t pt = static_cast<std::uint16_t>(x.n_bottom() + x.n_top() - 1);
  for (const auto& [d, c] : x.terms()) {
    if (d.pairing[pb] == pt) {
      r.add_term(remove_two_points(d, pb, pt), c * x.modulus());
    } else {
      TLDiagram e = d;
      const std::uint16_t a = e.pairing[pb], b = e.pairing[pt];
      e.pairing[a] = b;
      e.pairing[b] = a;
      r.add_term(remove_two_points(e, pb, pt), c);
    }
  }
  return r;
}

TLElement cap_left(const TLElement& x) {
  if (x.n_bottom() == 0 || x.n_top() == 0)
    throw std::invalid_argument("cap_left: no strand to close");
  TLElement r(x.n_bottom() - 1, x.n_top() - 1, -x.shading(), x.modulus());
  const std::uint16_t pb = 0;
  const std::uint16_t pt = static_cast<std::uint16_t>(x.n_bottom());
  for (const auto& [d, c] : x.terms()) {
    if (d.pairing[pb] == pt) {
      TLDiagram rd = remove_two_points(d, pb, pt);
      rd.shading = -d.shading;
      r.add_term(rd, c * x.modulus());
    } else {
      TLDiagram e = d;
      const std::uint16_t a = e.pairing[pb], b = e.pairing[pt];
      e.pairing[a] = b;
      e.pairing[b] = a;
      TLDiagram rd = remove_two_points(e, pb, pt);
      rd.shading = -e.shading;
      r.add_term(rd, c);
    }
  }
  return r;
}

TLElement include_right(const TLElement& x) {
  TLElement r(x.n_bottom() + 1, x.n_top() + 1, x.shading(), x.modulus());
  for (const auto& [d, c] : x.terms()) {
    TLDiagram e = d.tensor(TLDiagram::identity(1, d.shading));
    r.add_term(e, c);
  }
  return r;
}

TLElement include_left(const TLElement& x) {
  TLElement r(x.n_bottom() + 1, x.n_top() + 1, -x.shading(), x.modulus());
  for (const auto& [d, c] : x.terms()) {
    TLDiagram one = TLDiagram::identity(1, -d.shading);
    TLDiagram e = one.tensor(d);
    r.add_term(e, c);
  }
  return r;
}

TLDiagram parse_diagram(const std::string& text, int shading) {
  std::vector<int> through;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> stack;
  int pos = 0;
  for (char ch : text) {
    if (ch == '|') {
      through.push_back(pos++);
    } else if (ch == '(') {
      stack.push_back(pos++);
    } else if (ch == ')') {
      if (stack.empty()) throw std::invalid_argument("unbalanced bracket in diagram text");
      pairs.push_back({stack.back(), pos++});
      stack.pop_back();
    } else if (ch != ' ') {
      throw std::invalid_argument("unexpected character in diagram text");
    }
  }
  if (!stack.empty()) throw std::invalid_argument("unbalanced bracket in diagram text");
  const std::size_t n = static_cast<std::size_t>(pos);
  TLDiagram d = TLDiagram::identity(n, shading);
  for (auto [a, b] : pairs) {
    d.pairing[a] = static_cast<std::uint16_t>(b);
    d.pairing[b] = static_cast<std::uint16_t>(a);
    d.pairing[n + a] = static_cast<std::uint16_t>(n + b);
    d.pairing[n + b] = static_cast<std::uint16_t>(n + a);
  }
  d.validate();
  return d;
}

}  // namespace mtower
