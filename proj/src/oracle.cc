#include "amreager/oracle.h"

#include <set>
#include <tuple>

namespace amreager {

double OracleScore::precision() const {
  return built_edges == 0 ? 1.0 : static_cast<double>(correct_edges) / built_edges;
}

double OracleScore::recall() const {
  return gold_edges == 0 ? 1.0 : static_cast<double>(correct_edges) / gold_edges;
}

OracleScore &OracleScore::operator+=(const OracleScore &o) {
  gold_edges += o.gold_edges;
  built_edges += o.built_edges;
  correct_edges += o.correct_edges;
  gold_nodes += o.gold_nodes;
  unaligned_nodes += o.unaligned_nodes;
  return *this;
}

namespace {

// First unbuilt gold edge src -> dst in the configuration's node space.
const std::string *UnbuiltGoldEdge(const Configuration &c,
                                   const AmrGraph &gold, int src, int dst) {
  const int gs = c.origin(src), gd = c.origin(dst);
  for (int e : gold.out_edges(gs)) {
    const Edge &edge = gold.edges()[e];
    if (edge.dst == gd && !c.graph().HasEdge(src, edge.label, dst)) {
      return &edge.label;
    }
  }
  return nullptr;
}

bool TouchesBuffer(const Configuration &c, const AmrGraph &gold,
                   const Alignment &a, int node) {
  const int first = c.Buffer(0);
  if (first == 0) return false;
  const int g = c.origin(node);
  for (int e : gold.out_edges(g)) {
    if (a.token(gold.edges()[e].dst) >= first) return true;
  }
  for (int e : gold.in_edges(g)) {
    if (a.token(gold.edges()[e].src) >= first) return true;
  }
  return false;
}

}  // namespace

Transition OracleTransition(const Configuration &c, const AmrGraph &gold,
                            const Alignment &a) {
  if (c.IsTerminal()) throw AmrError("oracle called on a terminal configuration");
  const int s0 = c.Stack(0), s1 = c.Stack(1);
  if (s0 >= 0 && s1 >= 0) {
    if (c.CanLArc()) {
      if (const std::string *label = UnbuiltGoldEdge(c, gold, s0, s1)) {
        return Transition::LArc(*label);
      }
    }
    if (c.CanRArc()) {
      if (const std::string *label = UnbuiltGoldEdge(c, gold, s1, s0)) {
        return Transition::RArc(*label);
      }
    }
  } else if (s0 >= 0 && s1 == kRootNode && c.CanRArc() &&
             gold.top() == c.origin(s0)) {
    return Transition::RArc(kTopLabel);
  }
  if (s0 >= 0 && !TouchesBuffer(c, gold, a, s0)) {
    const int w = c.ReentrancyCandidate(s0);
    if (w >= 0) {
      if (const std::string *label = UnbuiltGoldEdge(c, gold, w, s0)) {
        return Transition::Reduce(w, *label);
      }
    }
    return Transition::Reduce();
  }
  if (!c.CanShift()) return Transition::Reduce();
  return Transition::Shift(TokenFragment(gold, a, c.Buffer(0)));
}

OracleScore ScoreAgainstGold(const Configuration &c, const AmrGraph &gold,
                             const Alignment &a) {
  OracleScore score;
  score.gold_nodes = gold.num_nodes();
  for (int v = 0; v < gold.num_nodes(); ++v) score.unaligned_nodes += !a.aligned(v);
  score.gold_edges = gold.num_edges() + (gold.top() != AmrGraph::kNone);
  std::set<std::tuple<int, std::string, int>> gold_set;
  for (const Edge &e : gold.edges()) gold_set.insert({e.src, e.label, e.dst});
  const AmrGraph &g = c.graph();
  for (const Edge &e : g.edges()) {
    ++score.built_edges;
    score.correct_edges +=
        gold_set.count({c.origin(e.src), e.label, c.origin(e.dst)}) > 0;
  }
  if (c.top_node() != kNoNode) {
    ++score.built_edges;
    score.correct_edges += c.origin(c.top_node()) == gold.top();
  }
  return score;
}

OracleResult OracleRun(const Sentence &s, const AmrGraph &gold,
                       const Alignment &a, bool keep_configs) {
  OracleResult result;
  Configuration c = Configuration::Initial(s.size());
  const int budget = TransitionBudget(s.size(), std::max(1, gold.num_nodes()));
  int steps = 0;
  while (!c.IsTerminal()) {
    if (++steps > budget) throw AmrError("oracle exceeded the transition budget");
    Transition t = OracleTransition(c, gold, a);
    OracleStep step;
    if (keep_configs) step.config = c;
    if ((t.action == Action::kLArc || t.action == Action::kRArc) &&
        t.label != kTopLabel) {
      step.edge_label = t.label;
    }
    if (t.action == Action::kReduce) {
      step.reentrancy_candidate = c.ReentrancyCandidate(c.Stack(0));
      if (t.reentrancy) {
        step.reentrancy_positive = true;
        step.edge_label = t.reentrancy->label;
      }
    }
    c.Apply(t);
    step.gold_action = std::move(t);
    result.steps.push_back(std::move(step));
  }
  result.score = ScoreAgainstGold(c, gold, a);
  result.reconstructed = c.graph();
  if (c.top_node() != kNoNode) result.reconstructed.set_top(c.top_node());
  result.origin.resize(c.graph().num_nodes());
  for (int v = 0; v < c.graph().num_nodes(); ++v) result.origin[v] = c.origin(v);
  return result;
}

}  // namespace amreager
