#ifndef AMREAGER_ORACLE_H_
#define AMREAGER_ORACLE_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "amreager/alignment.h"
#include "amreager/amr_graph.h"
#include "amreager/sentence.h"
#include "amreager/transition.h"

namespace amreager {

struct OracleStep {
  Configuration config;  // before the transition
  Transition gold_action;
  int reentrancy_candidate = kNoNode;  // sibling considered at Reduce
  bool reentrancy_positive = false;
  std::optional<std::string> edge_label;  // LArc/RArc (not :top), reentrancy
};

// Precision and recall of the constructed edges against the gold graph,
// the root arc counted as one edge.
struct OracleScore {
  int gold_edges = 0;
  int built_edges = 0;
  int correct_edges = 0;
  int gold_nodes = 0;
  int unaligned_nodes = 0;

  double precision() const;
  double recall() const;
  OracleScore &operator+=(const OracleScore &o);
};

struct OracleResult {
  std::vector<OracleStep> steps;
  AmrGraph reconstructed;   // constructed nodes and edges, top set
  std::vector<int> origin;  // reconstructed node -> gold node
  OracleScore score;
};

// Rules in order: gold edge s0 -> s1 gives LArc; s1 -> s0 gives RArc; no
// gold edge between s0 and a node aligned to the buffer gives Reduce, with a
// reentrancy when gold links the most recent sibling to s0; else Shift with
// the gold fragment of beta_0. Rules 1 and 2 only fire for unbuilt, legal
// arcs. Throws on a terminal configuration.
Transition OracleTransition(const Configuration &c, const AmrGraph &gold,
                            const Alignment &a);

// keep_configs=false leaves OracleStep::config default-constructed.
OracleResult OracleRun(const Sentence &s, const AmrGraph &gold,
                       const Alignment &a, bool keep_configs = true);

OracleScore ScoreAgainstGold(const Configuration &c, const AmrGraph &gold,
                             const Alignment &a);

}  // namespace amreager

#endif  // AMREAGER_ORACLE_H_
