#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mtower {

/// Vertex handle: parity 0 = even class, 1 = odd class; idx into that class.
struct Vertex {
  int parity = 0;
  std::size_t idx = 0;
  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// Pointed bipartite multigraph with Frobenius-Perron weights.
/// dim(basepoint) = 1 and d * dim(v) = sum over neighbours with multiplicity.
struct WeightedBipartiteGraph {
  std::vector<std::string> even;             // vertex ids, even class
  std::vector<std::string> odd;              // vertex ids, odd class
  std::vector<std::vector<int>> mult;        // even x odd edge multiplicities
  std::size_t basepoint = 0;                 // index into `even`
  std::vector<double> dim_even;
  std::vector<double> dim_odd;
  double modulus = 0.0;

  std::size_t n_even() const { return even.size(); }
  std::size_t n_odd() const { return odd.size(); }
  const std::string& label(Vertex v) const { return v.parity == 0 ? even[v.idx] : odd[v.idx]; }
  double dim(Vertex v) const { return v.parity == 0 ? dim_even[v.idx] : dim_odd[v.idx]; }
  int multiplicity(std::size_t e, std::size_t o) const { return mult[e][o]; }

  /// Degree counted with multiplicity.
  int degree(Vertex v) const;

  /// Neighbour steps from v in canonical order: (other vertex, instance).
  struct Step {
    std::size_t other;   // index in the opposite class
    int instance;        // 0 .. mult-1
    friend bool operator==(const Step&, const Step&) = default;
  };
  std::vector<Step> steps_from(Vertex v) const;

  bool connected() const;
  void validate() const;  // throws std::invalid_argument on structural problems
};

/// Spectral radius and Perron vector of the bipartite adjacency matrix,
/// normalized so the basepoint weight is 1. Deterministic power iteration
/// seeded with the all-ones vector, Rayleigh-quotient stopping at 1e-13.
void frobenius_perron(WeightedBipartiteGraph& g);

struct DimResidual {
  std::string vertex;
  double residual = 0.0;
};

struct DimReport {
  std::vector<DimResidual> residuals;
  double max_residual = 0.0;
  bool pass = false;
};

DimReport verify_dimension_function(const WeightedBipartiteGraph& g, double tolerance);

/// Builtin families: "A" (n>=2), "D" (n>=4), "E" (n in {6,7,8}).
/// Basepoint is the extremal vertex of the longest arm.
WeightedBipartiteGraph builtin_graph(const std::string& family, int n);
WeightedBipartiteGraph builtin_graph(const std::string& name);  // e.g. "A3", "E6"

WeightedBipartiteGraph load_graph(const std::string& json_text);
std::string save_graph(const WeightedBipartiteGraph& g);
std::string graph_dot(const WeightedBipartiteGraph& g);

/// Longest graph distance between any two vertices.
std::size_t graph_diameter(const WeightedBipartiteGraph& g);

/// Exact pointed-weighted-graph isomorphism (multiplicities exact,
/// dims within tol, basepoint to basepoint).
bool pointed_graph_isomorphic(const WeightedBipartiteGraph& a, const WeightedBipartiteGraph& b,
                              double tol = 1e-9);

}  // namespace mtower
