#include "mtower/walks.hpp"

namespace mtower {

namespace {

void extend_walks(const WeightedBipartiteGraph& g, int base_parity, std::size_t len, Walk& cur,
                  std::vector<Walk>& out) {
  if (cur.steps.size() == len) {
    out.push_back(cur);
    return;
  }
  const int parity = (base_parity + static_cast<int>(cur.steps.size())) % 2;
  const Vertex at{parity, cur.verts.back()};
  for (auto s : g.steps_from(at)) {
    cur.steps.push_back(s);
    cur.verts.push_back(s.other);
    extend_walks(g, base_parity, len, cur, out);
    cur.steps.pop_back();
    cur.verts.pop_back();
  }
}

}  // namespace

std::vector<Walk> walks_from(const WeightedBipartiteGraph& g, Vertex from, std::size_t len) {
  std::vector<Walk> out;
  Walk cur;
  cur.verts.push_back(from.idx);
  extend_walks(g, from.parity, len, cur, out);
  return out;
}

}  // namespace mtower
