#include "amreager/graph_analysis.h"

#include <algorithm>
#include <cstdio>
#include <functional>

namespace amreager {

Fragment TokenFragment(const AmrGraph &g, const Alignment &a, int i) {
  Fragment f;
  const std::vector<int> nodes = a.Preimage(i);
  if (nodes.empty()) return f;
  std::vector<int> old_to_new;
  f.graph = InducedSubgraph(g, nodes, &old_to_new);
  f.source_nodes.resize(f.graph.num_nodes());
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (old_to_new[v] != AmrGraph::kNone) f.source_nodes[old_to_new[v]] = v;
  }
  int roots = 0;
  for (int v = 0; v < f.graph.num_nodes(); ++v) {
    if (f.graph.in_edges(v).empty()) {
      if (roots++ == 0) f.root = v;
    }
  }
  if (roots == 0) f.root = 0;
  f.forest = roots > 1;
  f.graph.set_top(f.root);
  return f;
}

int FragmentDepth(const Fragment &f) {
  if (f.empty()) return 0;
  std::vector<int> memo(f.graph.num_nodes(), -1);
  std::function<int(int)> height = [&](int v) {
    if (memo[v] >= 0) return memo[v];
    memo[v] = 0;
    int best = 0;
    for (int e : f.graph.out_edges(v)) {
      best = std::max(best, 1 + height(f.graph.edges()[e].dst));
    }
    return memo[v] = best;
  };
  return height(f.root);
}

Projectivity EdgeProjective(const AmrGraph &g, const Alignment &a,
                            const Edge &e) {
  if (!a.aligned(e.src) || !a.aligned(e.dst)) return Projectivity::kSkipped;
  const int lo = std::min(a.token(e.src), a.token(e.dst));
  const int hi = std::max(a.token(e.src), a.token(e.dst));
  auto in_span = [&](int w) {
    return a.aligned(w) && a.token(w) > lo && a.token(w) < hi;
  };
  auto allowed = [&](int x) {
    return x == e.src || x == e.dst || in_span(x);
  };
  for (int w = 0; w < g.num_nodes(); ++w) {
    if (!in_span(w)) continue;
    if (w == g.top()) return Projectivity::kNonProjective;
    for (int k : g.in_edges(w)) {
      if (!allowed(g.edges()[k].src)) return Projectivity::kNonProjective;
    }
    for (int k : g.out_edges(w)) {
      if (!allowed(g.edges()[k].dst)) return Projectivity::kNonProjective;
    }
  }
  return Projectivity::kProjective;
}

namespace {

double Pct(int num, int den) { return den == 0 ? 0.0 : 100.0 * num / den; }

}  // namespace

double StatsReport::NonProjectiveEdgePct() const {
  return Pct(nonprojective_edges, checked_edges);
}
double StatsReport::NonProjectiveGraphPct() const {
  return Pct(nonprojective_graphs, graphs);
}
double StatsReport::ReentrantEdgePct() const {
  return Pct(reentrant_edges, edges);
}
double StatsReport::ReentrantGraphPct() const {
  return Pct(reentrant_graphs, graphs);
}

std::string StatsReport::ToString() const {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "Non-projective edges\t%.1f%%\t(%d/%d)\n"
                "Non-projective AMRs\t%.1f%%\t(%d/%d)\n"
                "Reentrant edges\t%.1f%%\t(%d/%d)\n"
                "AMRs with at least one reentrancy\t%.1f%%\t(%d/%d)\n",
                NonProjectiveEdgePct(), nonprojective_edges, checked_edges,
                NonProjectiveGraphPct(), nonprojective_graphs, graphs,
                ReentrantEdgePct(), reentrant_edges, edges,
                ReentrantGraphPct(), reentrant_graphs, graphs);
  return buf;
}

StatsReport CorpusStats(const std::vector<AlignedGraph> &corpus) {
  if (corpus.empty()) throw AmrError("corpus_stats: empty corpus");
  StatsReport r;
  for (const AlignedGraph &item : corpus) {
    const AmrGraph &g = *item.graph;
    ++r.graphs;
    bool nonprojective = false;
    bool reentrant = false;
    for (const Edge &e : g.edges()) {
      ++r.edges;
      if (g.in_edges(e.dst).size() >= 2) {
        ++r.reentrant_edges;
        reentrant = true;
      }
      const Projectivity p = EdgeProjective(g, *item.alignment, e);
      if (p == Projectivity::kSkipped) continue;
      ++r.checked_edges;
      if (p == Projectivity::kNonProjective) {
        ++r.nonprojective_edges;
        nonprojective = true;
      }
    }
    r.nonprojective_graphs += nonprojective;
    r.reentrant_graphs += reentrant;
  }
  return r;
}

}  // namespace amreager
