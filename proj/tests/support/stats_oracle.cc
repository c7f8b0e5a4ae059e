#include <algorithm>

#include "support/testing.h"

namespace amreager::testing {

// Crossing-pair formulation: edge e is non-projective when some other edge
// (or the virtual root arc into top) has exactly one endpoint strictly
// inside e's token interval and does not touch e's endpoints.
bool CrossingOracle(const AmrGraph &g, const Alignment &a, const Edge &e) {
  const int lo = std::min(a.token(e.src), a.token(e.dst));
  const int hi = std::max(a.token(e.src), a.token(e.dst));
  auto inside = [&](int v) {
    return v >= 0 && a.aligned(v) && a.token(v) > lo && a.token(v) < hi;
  };
  auto touches = [&](int v) { return v == e.src || v == e.dst; };
  std::vector<std::pair<int, int>> arcs;
  for (const Edge &f : g.edges()) arcs.push_back({f.src, f.dst});
  arcs.push_back({-1, g.top()});  // the root arc from position 0
  for (auto [x, y] : arcs) {
    if (inside(x) && !inside(y) && !touches(y)) return true;
    if (inside(y) && !inside(x) && !touches(x)) return true;
  }
  return false;
}

StatsReport RecountStats(const std::vector<AlignedSample> &samples) {
  StatsReport r;
  for (const AlignedSample &s : samples) {
    ++r.graphs;
    bool any_re = false, any_np = false;
    for (const Edge &e : s.graph.edges()) {
      ++r.edges;
      if (s.graph.in_edges(e.dst).size() >= 2) ++r.reentrant_edges, any_re = true;
      if (!s.alignment.aligned(e.src) || !s.alignment.aligned(e.dst)) continue;
      ++r.checked_edges;
      if (CrossingOracle(s.graph, s.alignment, e)) ++r.nonprojective_edges, any_np = true;
    }
    r.reentrant_graphs += any_re;
    r.nonprojective_graphs += any_np;
  }
  return r;
}

}  // namespace amreager::testing
