#include "amreager/transition.h"

#include <algorithm>
#include <sstream>

namespace amreager {

const char kTopLabel[] = ":top";

const char *ActionName(Action a) {
  switch (a) {
    case Action::kShift:
      return "Shift";
    case Action::kLArc:
      return "LArc";
    case Action::kRArc:
      return "RArc";
    case Action::kReduce:
      return "Reduce";
  }
  return "?";
}

Transition Transition::Shift(Fragment f) {
  Transition t;
  t.action = Action::kShift;
  t.fragment = std::move(f);
  return t;
}

Transition Transition::LArc(const std::string &label) {
  Transition t;
  t.action = Action::kLArc;
  t.label = label;
  return t;
}

Transition Transition::RArc(const std::string &label) {
  Transition t;
  t.action = Action::kRArc;
  t.label = label;
  return t;
}

Transition Transition::Reduce() {
  Transition t;
  t.action = Action::kReduce;
  return t;
}

Transition Transition::Reduce(int sibling, const std::string &label) {
  Transition t = Reduce();
  t.reentrancy = Reentrancy{sibling, label};
  return t;
}

std::string Transition::ToString() const {
  std::string s = ActionName(action);
  if (action == Action::kLArc || action == Action::kRArc) {
    s += "(" + label + ")";
  } else if (action == Action::kReduce && reentrancy) {
    s += "(" + std::to_string(reentrancy->sibling) + " " + reentrancy->label +
         ")";
  }
  return s;
}

Configuration Configuration::Initial(int num_tokens) {
  if (num_tokens < 0) throw AmrError("negative sentence length");
  Configuration c;
  c.num_tokens_ = num_tokens;
  c.next_ = 1;
  c.stack_ = {kRootNode};
  return c;
}

int Configuration::Stack(int k) const {
  const int index = stack_size() - 1 - k;
  return k < 0 || index < 0 ? kNoNode : stack_[index];
}

int Configuration::Buffer(int k) const {
  const int index = next_ + k;
  return k < 0 || index > num_tokens_ ? 0 : index;
}

bool Configuration::IsTerminal() const {
  return next_ > num_tokens_ && stack_.size() == 1;
}

int Configuration::token_of(int node) const {
  return node >= 0 ? token_[node] : 0;
}

int Configuration::depth(int node) const {
  return node >= 0 ? depth_[node] : 0;
}

int Configuration::num_children(int node) const {
  return node >= 0 ? static_cast<int>(graph_.out_edges(node).size()) : 0;
}

int Configuration::num_parents(int node) const {
  if (node < 0) return 0;
  return static_cast<int>(graph_.in_edges(node).size()) +
         (node == top_node_ ? 1 : 0);
}

int Configuration::leftmost_parent(int node) const {
  return node >= 0 ? left_parent_[node] : kNoNode;
}

int Configuration::leftmost_child(int node) const {
  return node >= 0 ? left_child_[node] : kNoNode;
}

int Configuration::leftmost_grandchild(int node) const {
  return node >= 0 ? left_grandchild_[node] : kNoNode;
}

int Configuration::Better(int a, int b) const {
  if (a == kNoNode) return b;
  if (b == kNoNode) return a;
  if (token_[a] != token_[b]) return token_[a] < token_[b] ? a : b;
  return std::min(a, b);
}

int Configuration::AddEdge(int src, const std::string &label, int dst) {
  if (!graph_.AddEdge(src, label, dst)) return -1;
  const int index = graph_.num_edges() - 1;
  left_parent_[dst] = Better(left_parent_[dst], src);
  left_child_[src] = Better(left_child_[src], dst);
  left_grandchild_[src] = Better(left_grandchild_[src], left_child_[dst]);
  for (int e : graph_.in_edges(src)) {
    const int p = graph_.edges()[e].src;
    left_grandchild_[p] = Better(left_grandchild_[p], dst);
  }
  prev_child_edge_[src] = last_child_edge_[src];
  last_child_edge_[src] = index;
  return index;
}

bool Configuration::Reaches(int from, int to, int limit) const {
  std::vector<int> todo = {from};
  std::vector<int> seen = {from};
  while (!todo.empty()) {
    const int u = todo.back();
    todo.pop_back();
    if (u == to) return true;
    for (int e : graph_.out_edges(u)) {
      const int v = graph_.edges()[e].dst;
      if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
      // Beyond the search limit assume the worst.
      if (static_cast<int>(seen.size()) >= limit) return true;
      seen.push_back(v);
      todo.push_back(v);
    }
  }
  return false;
}

int Configuration::ReentrancyCandidate(int node) const {
  if (node < 0 || (tags_[node] & kReduceParent)) return kNoNode;
  int best_edge = -1;
  for (int e : graph_.in_edges(node)) {
    const int p = graph_.edges()[e].src;
    int candidate_edge = last_child_edge_[p];
    if (candidate_edge >= 0 && graph_.edges()[candidate_edge].dst == node) {
      candidate_edge = prev_child_edge_[p];
    }
    if (candidate_edge > best_edge) best_edge = candidate_edge;
  }
  if (best_edge < 0) return kNoNode;
  const int w = graph_.edges()[best_edge].dst;
  if (w == node || graph_.node(w).is_constant) return kNoNode;
  if (graph_.HasAnyEdge(w, node) || graph_.HasAnyEdge(node, w)) return kNoNode;
  if (Reaches(node, w, 64)) return kNoNode;
  return w;
}

bool Configuration::CanShift() const { return next_ <= num_tokens_; }

bool Configuration::CanLArc() const {
  if (stack_size() < 3) return false;
  const int s0 = Stack(0), s1 = Stack(1);
  if (graph_.node(s0).is_constant) return false;
  if (tags_[s1] & kLArcParent) return false;
  return !graph_.HasAnyEdge(s0, s1) && !graph_.HasAnyEdge(s1, s0);
}

bool Configuration::CanRArc() const {
  if (stack_size() < 2) return false;
  const int s0 = Stack(0), s1 = Stack(1);
  if (tags_[s0] & kRArcParent) return false;
  if (s1 == kRootNode) {
    return top_node_ == kNoNode && !graph_.node(s0).is_constant;
  }
  if (graph_.node(s1).is_constant) return false;
  return !graph_.HasAnyEdge(s0, s1) && !graph_.HasAnyEdge(s1, s0);
}

bool Configuration::CanReduce() const { return stack_size() >= 2; }

bool Configuration::IsLegal(Action a) const {
  switch (a) {
    case Action::kShift:
      return CanShift();
    case Action::kLArc:
      return CanLArc();
    case Action::kRArc:
      return CanRArc();
    case Action::kReduce:
      return CanReduce();
  }
  return false;
}

std::string Configuration::WhyIllegal(const Transition &t) const {
  if (!IsLegal(t.action)) {
    return std::string(ActionName(t.action)) + " is not legal here";
  }
  if (t.action == Action::kLArc || t.action == Action::kRArc) {
    if (t.label.size() < 2 || t.label[0] != ':') {
      return "label '" + t.label + "' must begin with ':'";
    }
    const bool from_root = t.action == Action::kRArc && Stack(1) == kRootNode;
    if (from_root != (t.label == kTopLabel)) {
      return ":top is used exactly for arcs from the root";
    }
  }
  if (t.action == Action::kReduce && t.reentrancy) {
    if (t.reentrancy->label.size() < 2 || t.reentrancy->label[0] != ':' ||
        t.reentrancy->label == kTopLabel) {
      return "bad reentrancy label '" + t.reentrancy->label + "'";
    }
    if (t.reentrancy->sibling != ReentrancyCandidate(Stack(0))) {
      return "reentrancy target is not the most recent sibling";
    }
  }
  return "";
}

void Configuration::Apply(const Transition &t) {
  const std::string why = WhyIllegal(t);
  if (!why.empty()) throw AmrError("illegal transition " + t.ToString() + ": " + why);
  last_edge_ = -1;
  switch (t.action) {
    case Action::kShift: {
      const int token = next_++;
      if (t.fragment.empty()) break;
      const int offset = graph_.num_nodes();
      const AmrGraph &f = t.fragment.graph;
      for (int v = 0; v < f.num_nodes(); ++v) {
        graph_.AddNode(f.node(v).label, f.node(v).is_constant);
        token_.push_back(token);
        depth_.push_back(0);
        tags_.push_back(0);
        origin_.push_back(v < static_cast<int>(t.fragment.source_nodes.size())
                              ? t.fragment.source_nodes[v]
                              : v);
        left_parent_.push_back(kNoNode);
        left_child_.push_back(kNoNode);
        left_grandchild_.push_back(kNoNode);
        last_child_edge_.push_back(-1);
        prev_child_edge_.push_back(-1);
      }
      for (const Edge &e : f.edges()) {
        AddEdge(e.src + offset, e.label, e.dst + offset);
      }
      const int root = t.fragment.root + offset;
      depth_[root] = FragmentDepth(t.fragment);
      stack_.push_back(root);
      if (first_pushed_ == kNoNode) first_pushed_ = root;
      break;
    }
    case Action::kLArc: {
      const int s0 = Stack(0), s1 = Stack(1);
      last_edge_ = AddEdge(s0, t.label, s1);
      arcs_.push_back(last_edge_);
      tags_[s1] |= kLArcParent;
      stack_.erase(stack_.end() - 2);
      break;
    }
    case Action::kRArc: {
      const int s0 = Stack(0), s1 = Stack(1);
      if (s1 == kRootNode) {
        top_node_ = s0;
      } else {
        last_edge_ = AddEdge(s1, t.label, s0);
        arcs_.push_back(last_edge_);
      }
      tags_[s0] |= kRArcParent;
      break;
    }
    case Action::kReduce: {
      const int s0 = Stack(0);
      if (t.reentrancy) {
        last_edge_ = AddEdge(t.reentrancy->sibling, t.reentrancy->label, s0);
        arcs_.push_back(last_edge_);
        tags_[s0] |= kReduceParent;
      }
      stack_.pop_back();
      break;
    }
  }
}

Configuration Apply(const Configuration &c, const Transition &t) {
  Configuration next = c;
  next.Apply(t);
  return next;
}

std::string Configuration::NodeName(int node) const {
  if (node == kRootNode) return "\xE2\x88\x98";  // U+2218
  if (node < 0 || node >= graph_.num_nodes()) return "?";
  return graph_.node(node).label;
}

std::string Configuration::DebugString() const {
  std::ostringstream out;
  out << "stack=[";
  for (size_t k = 0; k < stack_.size(); ++k) {
    out << (k ? "," : "") << NodeName(stack_[k]) << "#" << stack_[k];
  }
  out << "] next=" << next_ << "/" << num_tokens_ << " top=" << top_node_
      << " edges=[";
  for (int e = 0; e < graph_.num_edges(); ++e) {
    const Edge &edge = graph_.edges()[e];
    out << (e ? "," : "") << edge.src << edge.label << edge.dst;
  }
  out << "] tags=[";
  for (size_t v = 0; v < tags_.size(); ++v) {
    out << (v ? "," : "") << static_cast<int>(tags_[v]);
  }
  out << "]";
  return out.str();
}

int TransitionBudget(int num_tokens, int max_fragment_size) {
  return 1 + num_tokens + 3 * num_tokens * max_fragment_size;
}

AmrGraph FinalizeGraph(const Configuration &c) {
  AmrGraph g = c.graph();
  if (g.empty()) return g;
  int top = c.top_node();
  if (top == kNoNode) top = c.first_pushed();
  if (top == kNoNode || g.node(top).is_constant) {
    top = kNoNode;
    for (int v = 0; v < g.num_nodes() && top == kNoNode; ++v) {
      if (!g.node(v).is_constant) top = v;
    }
  }
  if (top == kNoNode) {
    // Only constants: wrap them under a placeholder concept.
    top = g.AddNode("multi-sentence");
  }
  g.set_top(top);
  // Weakly connected components not containing top hang off it.
  std::vector<bool> seen(g.num_nodes(), false);
  auto flood = [&](int start) {
    std::vector<int> todo = {start};
    seen[start] = true;
    while (!todo.empty()) {
      const int u = todo.back();
      todo.pop_back();
      for (int e : g.out_edges(u)) {
        const int v = g.edges()[e].dst;
        if (!seen[v]) seen[v] = true, todo.push_back(v);
      }
      for (int e : g.in_edges(u)) {
        const int v = g.edges()[e].src;
        if (!seen[v]) seen[v] = true, todo.push_back(v);
      }
    }
  };
  flood(top);
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (seen[v] || !g.in_edges(v).empty()) continue;
    g.AddEdge(top, ":mod", v);
    flood(v);
  }
  return g;
}

ParseResult GreedyParse(int num_tokens, const Policy &policy,
                        const ParseOptions &options) {
  ParseResult result;
  Configuration c = Configuration::Initial(num_tokens);
  result.budget = TransitionBudget(num_tokens, options.max_fragment_size);
  auto record = [&](const Transition &t, bool forced) {
    LogEntry entry;
    entry.step = result.transitions;
    entry.transition.action = t.action;
    entry.transition.label = t.label;
    entry.transition.reentrancy = t.reentrancy;
    entry.forced = forced;
    if (options.record_states) {
      entry.stack = c.stack();
      for (int k = 0; k < c.buffer_size(); ++k) entry.buffer.push_back(c.Buffer(k));
    }
    if (c.last_edge() >= 0) {
      entry.new_edge = c.graph().edges()[c.last_edge()];
    } else if (t.action == Action::kRArc && c.Stack(1) == kRootNode) {
      entry.new_edge = Edge{kRootNode, kTopLabel, c.Stack(0)};
    }
    result.log.push_back(std::move(entry));
  };
  while (!c.IsTerminal()) {
    // Stop early enough for the drain to fit in the budget.
    const int drain = c.stack_size() - 1 + c.buffer_size();
    if (result.transitions + drain >= result.budget) {
      result.budget_exhausted = true;
      break;
    }
    const Transition t = policy(c);
    c.Apply(t);
    ++result.transitions;
    record(t, false);
  }
  if (result.budget_exhausted) {
    while (!c.IsTerminal()) {
      const Transition t = c.CanReduce() ? Transition::Reduce()
                                         : Transition::Shift();
      c.Apply(t);
      ++result.transitions;
      record(t, true);
    }
  }
  result.graph = FinalizeGraph(c);
  result.final_config = std::move(c);
  return result;
}

nlohmann::json LogEntryToJson(const LogEntry &e, const Configuration &c) {
  nlohmann::json j;
  j["step"] = e.step;
  j["action"] = ActionName(e.transition.action);
  if (!e.transition.label.empty()) j["label"] = e.transition.label;
  if (e.transition.reentrancy) {
    j["reentrancy"] = {c.NodeName(e.transition.reentrancy->sibling),
                       e.transition.reentrancy->label};
  }
  nlohmann::json stack = nlohmann::json::array();
  for (int v : e.stack) stack.push_back(c.NodeName(v));
  j["stack"] = stack;
  j["buffer"] = e.buffer;
  if (e.new_edge) {
    j["new_edge"] = {c.NodeName(e.new_edge->src), e.new_edge->label,
                     c.NodeName(e.new_edge->dst)};
  }
  if (e.forced) j["forced"] = true;
  return j;
}

}  // namespace amreager
