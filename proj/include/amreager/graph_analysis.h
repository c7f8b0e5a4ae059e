#ifndef AMREAGER_GRAPH_ANALYSIS_H_
#define AMREAGER_GRAPH_ANALYSIS_H_

#include <string>
#include <vector>

#include "amreager/alignment.h"
#include "amreager/amr_graph.h"

namespace amreager {

struct Fragment {
  AmrGraph graph;
  int root = AmrGraph::kNone;
  std::vector<int> source_nodes;  // fragment node -> node of the source graph
  bool forest = false;            // more than one internal root

  bool empty() const { return graph.empty(); }
  static Fragment Empty() { return Fragment(); }
};

// The sub-graph induced by the pre-image of token i. Root is the first node
// without a parent inside the fragment.
Fragment TokenFragment(const AmrGraph &g, const Alignment &a, int i);

// Longest directed path from the root, in edges.
int FragmentDepth(const Fragment &f);

enum class Projectivity { kProjective, kNonProjective, kSkipped };

// The top node counts as having a parent at position 0.
Projectivity EdgeProjective(const AmrGraph &g, const Alignment &a,
                            const Edge &e);

struct StatsReport {
  int graphs = 0;
  int edges = 0;
  int checked_edges = 0;  // both endpoints aligned
  int nonprojective_edges = 0;
  int nonprojective_graphs = 0;
  int reentrant_edges = 0;  // edges into nodes of in-degree >= 2
  int reentrant_graphs = 0;

  double NonProjectiveEdgePct() const;
  double NonProjectiveGraphPct() const;
  double ReentrantEdgePct() const;
  double ReentrantGraphPct() const;
  std::string ToString() const;
};

struct AlignedGraph {
  const AmrGraph *graph;
  const Alignment *alignment;
};

// Throws AmrError for an empty corpus.
StatsReport CorpusStats(const std::vector<AlignedGraph> &corpus);

}  // namespace amreager

#endif  // AMREAGER_GRAPH_ANALYSIS_H_
