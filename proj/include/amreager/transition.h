#ifndef AMREAGER_TRANSITION_H_
#define AMREAGER_TRANSITION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "amreager/amr_graph.h"
#include "amreager/graph_analysis.h"
#include "amreager/sentence.h"
#include "json.hpp"

namespace amreager {

// Stack positions hold node ids of the partial graph or one of these.
constexpr int kRootNode = -1;  // the artificial root at the stack bottom
constexpr int kNoNode = -2;    // position does not exist

extern const char kTopLabel[];  // ":top"

enum class Action { kShift = 0, kLArc = 1, kRArc = 2, kReduce = 3 };
constexpr int kNumActions = 4;
const char *ActionName(Action a);

struct Reentrancy {
  int sibling = kNoNode;
  std::string label;
};

struct Transition {
  Action action = Action::kShift;
  Fragment fragment;  // Shift
  std::string label;  // LArc, RArc
  std::optional<Reentrancy> reentrancy;  // Reduce

  static Transition Shift(Fragment f = Fragment::Empty());
  static Transition LArc(const std::string &label);
  static Transition RArc(const std::string &label);
  static Transition Reduce();
  static Transition Reduce(int sibling, const std::string &label);

  std::string ToString() const;
};

enum ParentTag : uint8_t {
  kRArcParent = 1,
  kLArcParent = 2,
  kReduceParent = 4,
};

// Parser state (stack, buffer, constructed edges). Copies are independent.
class Configuration {
 public:
  static Configuration Initial(int num_tokens);

  int num_tokens() const { return num_tokens_; }
  int stack_size() const { return static_cast<int>(stack_.size()); }
  const std::vector<int> &stack() const { return stack_; }
  // sigma_k, counting from the top; kNoNode when absent.
  int Stack(int k) const;
  // beta_k as a 1-based token index; 0 when absent.
  int Buffer(int k) const;
  int buffer_size() const { return num_tokens_ - next_ + 1; }
  bool IsTerminal() const;

  const AmrGraph &graph() const { return graph_; }
  const std::vector<int> &arcs() const { return arcs_; }  // edge indices
  int top_node() const { return top_node_; }
  int first_pushed() const { return first_pushed_; }

  int token_of(int node) const;
  int depth(int node) const;
  uint8_t parent_tags(int node) const { return tags_[node]; }
  int origin(int node) const { return origin_[node]; }
  int num_children(int node) const;
  int num_parents(int node) const;
  // Leftmost by aligned token, ties by node id; kNoNode when absent.
  int leftmost_parent(int node) const;
  int leftmost_child(int node) const;
  int leftmost_grandchild(int node) const;

  // The most recently attached sibling w of node that may receive a Reduce
  // edge w -> node, or kNoNode.
  int ReentrancyCandidate(int node) const;

  bool CanShift() const;
  bool CanLArc() const;
  bool CanRArc() const;
  bool CanReduce() const;
  bool IsLegal(Action a) const;
  // Empty string when t is legal, else the reason.
  std::string WhyIllegal(const Transition &t) const;

  // In place; throws AmrError when illegal.
  void Apply(const Transition &t);

  // Index of the newest edge created by the last Apply, or -1.
  int last_edge() const { return last_edge_; }

  std::string NodeName(int node) const;
  std::string DebugString() const;

 private:
  int Better(int a, int b) const;
  int AddEdge(int src, const std::string &label, int dst);
  bool Reaches(int from, int to, int limit) const;

  int num_tokens_ = 0;
  int next_ = 1;
  std::vector<int> stack_;
  AmrGraph graph_;
  std::vector<int> arcs_;
  int top_node_ = kNoNode;
  int first_pushed_ = kNoNode;
  int last_edge_ = -1;
  std::vector<int> token_;
  std::vector<int> depth_;
  std::vector<uint8_t> tags_;
  std::vector<int> origin_;
  std::vector<int> left_parent_;
  std::vector<int> left_child_;
  std::vector<int> left_grandchild_;
  std::vector<int> last_child_edge_;
  std::vector<int> prev_child_edge_;
};

Configuration Apply(const Configuration &c, const Transition &t);

struct LogEntry {
  int step = 0;
  Transition transition;  // fragment dropped to keep logs small
  std::vector<int> stack;   // after the transition; empty unless recorded
  std::vector<int> buffer;  // after the transition; empty unless recorded
  std::optional<Edge> new_edge;  // src kRootNode for :top
  bool forced = false;           // budget drain
};

struct ParseOptions {
  int max_fragment_size = 8;  // c in the transition budget
  bool record_states = false;
};

struct ParseResult {
  AmrGraph graph;
  std::vector<LogEntry> log;
  Configuration final_config;
  int transitions = 0;
  int budget = 0;
  bool budget_exhausted = false;
  bool empty() const { return graph.empty(); }
};

using Policy = std::function<Transition(const Configuration &)>;

int TransitionBudget(int num_tokens, int max_fragment_size);

// Runs policy to a terminal configuration, then sets top (root arc target,
// else first pushed node) and attaches disconnected parts to top with :mod.
ParseResult GreedyParse(int num_tokens, const Policy &policy,
                        const ParseOptions &options = {});

// Output graph from a terminal configuration.
AmrGraph FinalizeGraph(const Configuration &c);

nlohmann::json LogEntryToJson(const LogEntry &e, const Configuration &c);

}  // namespace amreager

#endif  // AMREAGER_TRANSITION_H_
