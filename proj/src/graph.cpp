#include "mtower/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mtower {

using json = nlohmann::ordered_json;

int WeightedBipartiteGraph::degree(Vertex v) const {
  int d = 0;
  if (v.parity == 0)
    for (std::size_t o = 0; o < n_odd(); ++o) d += mult[v.idx][o];
  else
    for (std::size_t e = 0; e < n_even(); ++e) d += mult[e][v.idx];
  return d;
}

std::vector<WeightedBipartiteGraph::Step> WeightedBipartiteGraph::steps_from(Vertex v) const {
  std::vector<Step> out;
  if (v.parity == 0) {
    for (std::size_t o = 0; o < n_odd(); ++o)
      for (int c = 0; c < mult[v.idx][o]; ++c) out.push_back({o, c});
  } else {
    for (std::size_t e = 0; e < n_even(); ++e)
      for (int c = 0; c < mult[e][v.idx]; ++c) out.push_back({e, c});
  }
  return out;
}

bool WeightedBipartiteGraph::connected() const {
  const std::size_t total = n_even() + n_odd();
  if (total == 0) return false;
  std::vector<char> seen(total, 0);
  std::vector<Vertex> stack{{0, basepoint}};
  seen[basepoint] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (auto s : steps_from(v)) {
      const std::size_t flat = (v.parity == 0) ? n_even() + s.other : s.other;
      if (!seen[flat]) {
        seen[flat] = 1;
        ++count;
        stack.push_back({1 - v.parity, s.other});
      }
    }
  }
  return count == total;
}

void WeightedBipartiteGraph::validate() const {
  if (even.empty()) throw std::invalid_argument("graph has no even vertices");
  if (basepoint >= n_even()) throw std::invalid_argument("basepoint is not an even vertex");
  std::set<std::string> ids;
  for (const auto& v : even)
    if (!ids.insert(v).second) throw std::invalid_argument("duplicate vertex id: " + v);
  for (const auto& v : odd)
    if (!ids.insert(v).second) throw std::invalid_argument("duplicate vertex id: " + v);
  if (mult.size() != n_even()) throw std::invalid_argument("multiplicity matrix shape mismatch");
  bool any_edge = false;
  for (const auto& row : mult) {
    if (row.size() != n_odd()) throw std::invalid_argument("multiplicity matrix shape mismatch");
    for (int m : row) {
      if (m < 0) throw std::invalid_argument("negative edge multiplicity");
      any_edge |= m > 0;
    }
  }
  if (!any_edge) throw std::invalid_argument("graph has no edges");
  if (!connected()) {
    // name one vertex of the unreached component
    std::vector<char> seen(n_even() + n_odd(), 0);
    std::vector<Vertex> stack{{0, basepoint}};
    seen[basepoint] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (auto s : steps_from(v)) {
        const std::size_t flat = (v.parity == 0) ? n_even() + s.other : s.other;
        if (!seen[flat]) {
          seen[flat] = 1;
          stack.push_back({1 - v.parity, s.other});
        }
      }
    }
    std::string offending;
    for (std::size_t i = 0; i < n_even(); ++i)
      if (!seen[i]) offending = even[i];
    for (std::size_t i = 0; i < n_odd(); ++i)
      if (!seen[n_even() + i]) offending = odd[i];
    throw std::invalid_argument("graph not connected; unreachable vertex: " + offending);
  }
}

void frobenius_perron(WeightedBipartiteGraph& g) {
  g.dim_even.assign(g.n_even(), 0.0);
  g.dim_odd.assign(g.n_odd(), 0.0);
  g.modulus = 0.0;
  g.validate();
  const std::size_t ne = g.n_even(), no = g.n_odd(), n = ne + no;
  std::vector<double> x(n, 1.0), y(n, 0.0);
  auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t e = 0; e < ne; ++e)
      for (std::size_t o = 0; o < no; ++o) {
        const double m = g.mult[e][o];
        if (m == 0.0) continue;
        out[e] += m * in[ne + o];
        out[ne + o] += m * in[e];
      }
  };
  // The bipartite adjacency spectrum is symmetric, so plain power iteration
  // oscillates between the +lambda and -lambda eigenvectors. A positive
  // diagonal shift makes the iteration aperiodic with the same Perron vector.
  double shift = 0.0;
  for (std::size_t e = 0; e < ne; ++e) {
    double deg = 0.0;
    for (std::size_t o = 0; o < no; ++o) deg += g.mult[e][o];
    shift = std::max(shift, deg);
  }
  for (std::size_t o = 0; o < no; ++o) {
    double deg = 0.0;
    for (std::size_t e = 0; e < ne; ++e) deg += g.mult[e][o];
    shift = std::max(shift, deg);
  }
  double lambda = 0.0;
  for (int iter = 0; iter < 100000; ++iter) {
    apply(x, y);
    for (std::size_t i = 0; i < n; ++i) y[i] += shift * x[i];
    double ny = 0.0;
    for (double v : y) ny += v * v;
    ny = std::sqrt(ny);
    if (ny == 0.0) throw std::invalid_argument("graph has no edges");
    for (auto& v : y) v /= ny;
    apply(y, x);  // x = A y, reused as scratch
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += y[i] * x[i];
    lambda = dot;
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i) resid += (x[i] - lambda * y[i]) * (x[i] - lambda * y[i]);
    resid = std::sqrt(resid);
    x = y;
    if (resid <= 1e-13 * std::max(lambda, 1.0)) break;
  }
  const double base = x[g.basepoint];
  if (base <= 0.0) throw std::runtime_error("power iteration produced non-positive basepoint weight");
  for (std::size_t e = 0; e < ne; ++e) g.dim_even[e] = x[e] / base;
  for (std::size_t o = 0; o < no; ++o) g.dim_odd[o] = x[ne + o] / base;
  g.modulus = lambda;
}

DimReport verify_dimension_function(const WeightedBipartiteGraph& g, double tolerance) {
  DimReport rep;
  const double d = g.modulus;
  auto push = [&](const std::string& id, double target, double nbr) {
    DimResidual r{id, std::abs(d * target - nbr)};
    rep.max_residual = std::max(rep.max_residual, r.residual);
    rep.residuals.push_back(r);
  };
  for (std::size_t e = 0; e < g.n_even(); ++e) {
    double s = 0.0;
    for (std::size_t o = 0; o < g.n_odd(); ++o) s += g.mult[e][o] * g.dim_odd[o];
    push(g.even[e], g.dim_even[e], s);
  }
  for (std::size_t o = 0; o < g.n_odd(); ++o) {
    double s = 0.0;
    for (std::size_t e = 0; e < g.n_even(); ++e) s += g.mult[e][o] * g.dim_even[e];
    push(g.odd[o], g.dim_odd[o], s);
  }
  rep.pass = rep.max_residual <= tolerance;
  return rep;
}

namespace {

// Build a pointed graph from an undirected edge list on labelled vertices,
// 2-coloring from the basepoint (basepoint even).
WeightedBipartiteGraph from_edge_list(const std::vector<std::pair<int, int>>& edges, int n_vertices,
                                      int basepoint) {
  std::vector<int> color(n_vertices, -1);
  color[basepoint] = 0;
  std::vector<int> stack{basepoint};
  std::vector<std::vector<int>> adj(n_vertices);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (color[w] == -1) {
        color[w] = 1 - color[v];
        stack.push_back(w);
      } else if (color[w] == color[v]) {
        throw std::invalid_argument("builtin graph is not bipartite");
      }
    }
  }
  WeightedBipartiteGraph g;
  std::vector<int> pos(n_vertices, -1);
  for (int v = 0; v < n_vertices; ++v) {
    const std::string id = "v" + std::to_string(v);
    if (color[v] == 0) {
      pos[v] = static_cast<int>(g.even.size());
      g.even.push_back(id);
    } else {
      pos[v] = static_cast<int>(g.odd.size());
      g.odd.push_back(id);
    }
  }
  g.mult.assign(g.n_even(), std::vector<int>(g.n_odd(), 0));
  for (auto [a, b] : edges) {
    if (color[a] == 1) std::swap(a, b);
    g.mult[pos[a]][pos[b]] += 1;
  }
  g.basepoint = pos[basepoint];
  frobenius_perron(g);
  return g;
}

}  // namespace

WeightedBipartiteGraph builtin_graph(const std::string& family, int n) {
  std::vector<std::pair<int, int>> edges;
  if (family == "A") {
    if (n < 2) throw std::invalid_argument("A_n requires n >= 2");
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return from_edge_list(edges, n, 0);
  }
  if (family == "D") {
    if (n < 4) throw std::invalid_argument("D_n requires n >= 4");
    // chain 0 - 1 - ... - (n-3), fork tips (n-2) and (n-1) on vertex (n-3)
    for (int i = 0; i + 1 <= n - 3; ++i) edges.push_back({i, i + 1});
    edges.push_back({n - 3, n - 2});
    edges.push_back({n - 3, n - 1});
    return from_edge_list(edges, n, 0);
  }
  if (family == "E") {
    if (n < 6 || n > 8) throw std::invalid_argument("E_n requires n in {6,7,8}");
    // trivalent node t with arms of lengths (1, 2, n-4); basepoint at the
    // extremal vertex of the longest arm (vertex 0).
    const int long_arm = n - 4;
    edges.clear();
    // long arm: 0 - 1 - ... - long_arm (vertex long_arm is the trivalent node)
    for (int i = 0; i < long_arm; ++i) edges.push_back({i, i + 1});
    const int t = long_arm;
    // middle arm of length 2
    edges.push_back({t, long_arm + 1});
    edges.push_back({long_arm + 1, long_arm + 2});
    // short arm of length 1
    edges.push_back({t, long_arm + 3});
    return from_edge_list(edges, n, 0);
  }
  throw std::invalid_argument("unknown graph family: " + family);
}

WeightedBipartiteGraph builtin_graph(const std::string& name) {
  if (name.size() < 2) throw std::invalid_argument("unknown builtin graph: " + name);
  const std::string family(1, name[0]);
  const int n = std::stoi(name.substr(1));
  return builtin_graph(family, n);
}

WeightedBipartiteGraph load_graph(const std::string& json_text) {
  json j = json::parse(json_text);
  WeightedBipartiteGraph g;
  for (const auto& v : j.at("even")) g.even.push_back(v.get<std::string>());
  for (const auto& v : j.at("odd")) g.odd.push_back(v.get<std::string>());
  std::map<std::string, std::size_t> epos, opos;
  for (std::size_t i = 0; i < g.n_even(); ++i) epos[g.even[i]] = i;
  for (std::size_t i = 0; i < g.n_odd(); ++i) opos[g.odd[i]] = i;
  g.mult.assign(g.n_even(), std::vector<int>(g.n_odd(), 0));
  for (const auto& e : j.at("edges")) {
    const std::string a = e.at(0).get<std::string>();
    const std::string b = e.at(1).get<std::string>();
    const int m = e.size() > 2 ? e.at(2).get<int>() : 1;
    if (!epos.count(a) || !opos.count(b)) {
      if (epos.count(a) && epos.count(b))
        throw std::invalid_argument("edge between two even vertices: " + a + ", " + b);
      if (opos.count(a) && opos.count(b))
        throw std::invalid_argument("edge between two odd vertices: " + a + ", " + b);
      throw std::invalid_argument("edge references unknown vertex: " + a + ", " + b);
    }
    g.mult[epos[a]][opos[b]] += m;
  }
  const std::string bp = j.at("basepoint").get<std::string>();
  if (!epos.count(bp)) throw std::invalid_argument("basepoint is not an even vertex: " + bp);
  g.basepoint = epos[bp];
  if (j.contains("dim")) {
    g.dim_even.assign(g.n_even(), 0.0);
    g.dim_odd.assign(g.n_odd(), 0.0);
    for (const auto& [key, val] : j.at("dim").items()) {
      if (epos.count(key))
        g.dim_even[epos[key]] = val.get<double>();
      else if (opos.count(key))
        g.dim_odd[opos[key]] = val.get<double>();
      else
        throw std::invalid_argument("dim references unknown vertex: " + key);
    }
    if (j.contains("modulus"))
      g.modulus = j.at("modulus").get<double>();
    else
      throw std::invalid_argument("graph with explicit dim requires explicit modulus");
    g.validate();
  } else {
    frobenius_perron(g);
  }
  return g;
}

std::string save_graph(const WeightedBipartiteGraph& g) {
  json j;
  j["even"] = g.even;
  j["odd"] = g.odd;
  json edges = json::array();
  for (std::size_t e = 0; e < g.n_even(); ++e)
    for (std::size_t o = 0; o < g.n_odd(); ++o)
      if (g.mult[e][o] > 0) edges.push_back({g.even[e], g.odd[o], g.mult[e][o]});
  j["edges"] = edges;
  j["basepoint"] = g.even[g.basepoint];
  json dim = json::object();
  for (std::size_t e = 0; e < g.n_even(); ++e) dim[g.even[e]] = g.dim_even[e];
  for (std::size_t o = 0; o < g.n_odd(); ++o) dim[g.odd[o]] = g.dim_odd[o];
  j["dim"] = dim;
  j["modulus"] = g.modulus;
  return j.dump(2);
}

std::string graph_dot(const WeightedBipartiteGraph& g) {
  std::ostringstream os;
  os << "graph G {\n";
  os << "  node [shape=circle];\n";
  for (std::size_t e = 0; e < g.n_even(); ++e) {
    os << "  \"" << g.even[e] << "\" [label=\"" << g.even[e] << "\\ndim=" << g.dim_even[e] << "\"";
    if (e == g.basepoint) os << " penwidth=2 color=blue";
    os << "];\n";
  }
  for (std::size_t o = 0; o < g.n_odd(); ++o)
    os << "  \"" << g.odd[o] << "\" [label=\"" << g.odd[o] << "\\ndim=" << g.dim_odd[o]
       << "\" style=filled fillcolor=lightgray];\n";
  for (std::size_t e = 0; e < g.n_even(); ++e)
    for (std::size_t o = 0; o < g.n_odd(); ++o)
      if (g.mult[e][o] > 0) {
        os << "  \"" << g.even[e] << "\" -- \"" << g.odd[o] << "\"";
        if (g.mult[e][o] > 1) os << " [label=\"" << g.mult[e][o] << "\"]";
        os << ";\n";
      }
  os << "}\n";
  return os.str();
}

std::size_t graph_diameter(const WeightedBipartiteGraph& g) {
  const std::size_t total = g.n_even() + g.n_odd();
  auto flat = [&](Vertex v) { return v.parity == 0 ? v.idx : g.n_even() + v.idx; };
  std::size_t diam = 0;
  for (std::size_t s = 0; s < total; ++s) {
    Vertex start = s < g.n_even() ? Vertex{0, s} : Vertex{1, s - g.n_even()};
    std::vector<int> dist(total, -1);
    std::vector<Vertex> queue{start};
    dist[flat(start)] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      Vertex v = queue[h];
      for (auto st : g.steps_from(v)) {
        Vertex w{1 - v.parity, st.other};
        if (dist[flat(w)] < 0) {
          dist[flat(w)] = dist[flat(v)] + 1;
          diam = std::max<std::size_t>(diam, static_cast<std::size_t>(dist[flat(w)]));
          queue.push_back(w);
        }
      }
    }
  }
  return diam;
}

namespace {

bool extend_iso(const WeightedBipartiteGraph& a, const WeightedBipartiteGraph& b,
                std::vector<int>& emap, std::vector<int>& omap, double tol) {
  // next unmatched even vertex
  for (std::size_t e = 0; e < a.n_even(); ++e) {
    if (emap[e] >= 0) continue;
    for (std::size_t f = 0; f < b.n_even(); ++f) {
      bool used = false;
      for (int v : emap) used |= v == static_cast<int>(f);
      if (used) continue;
      if (std::abs(a.dim_even[e] - b.dim_even[f]) > tol) continue;
      emap[e] = static_cast<int>(f);
      // consistency with already-matched odd vertices
      bool ok = true;
      for (std::size_t o = 0; o < a.n_odd() && ok; ++o)
        if (omap[o] >= 0 && a.mult[e][o] != b.mult[f][omap[o]]) ok = false;
      if (ok && extend_iso(a, b, emap, omap, tol)) return true;
      emap[e] = -1;
    }
    return false;
  }
  for (std::size_t o = 0; o < a.n_odd(); ++o) {
    if (omap[o] >= 0) continue;
    for (std::size_t q = 0; q < b.n_odd(); ++q) {
      bool used = false;
      for (int v : omap) used |= v == static_cast<int>(q);
      if (used) continue;
      if (std::abs(a.dim_odd[o] - b.dim_odd[q]) > tol) continue;
      bool ok = true;
      for (std::size_t e = 0; e < a.n_even() && ok; ++e)
        if (emap[e] >= 0 && a.mult[e][o] != b.mult[emap[e]][q]) ok = false;
      if (!ok) continue;
      omap[o] = static_cast<int>(q);
      if (extend_iso(a, b, emap, omap, tol)) return true;
      omap[o] = -1;
    }
    return false;
  }
  return true;  // everything matched
}

}  // namespace

bool pointed_graph_isomorphic(const WeightedBipartiteGraph& a, const WeightedBipartiteGraph& b,
                              double tol) {
  if (a.n_even() != b.n_even() || a.n_odd() != b.n_odd()) return false;
  if (std::abs(a.modulus - b.modulus) > tol) return false;
  std::vector<int> emap(a.n_even(), -1), omap(a.n_odd(), -1);
  emap[a.basepoint] = static_cast<int>(b.basepoint);
  if (std::abs(a.dim_even[a.basepoint] - b.dim_even[b.basepoint]) > tol) return false;
  return extend_iso(a, b, emap, omap, tol);
}

}  // namespace mtower
