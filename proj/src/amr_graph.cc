#include "amreager/amr_graph.h"

#include <algorithm>
#include <unordered_set>

namespace amreager {

int AmrGraph::AddNode(const std::string &label, bool is_constant,
                      const std::string &variable) {
  Node n;
  n.id = num_nodes();
  n.label = label;
  n.is_constant = is_constant;
  n.variable = variable;
  nodes_.push_back(std::move(n));
  out_.emplace_back();
  in_.emplace_back();
  return nodes_.back().id;
}

bool AmrGraph::AddEdge(int src, const std::string &label, int dst,
                       bool reference) {
  if (src < 0 || src >= num_nodes() || dst < 0 || dst >= num_nodes()) {
    throw AmrError("edge endpoint out of range");
  }
  if (nodes_[src].is_constant) {
    throw AmrError("constant node '" + nodes_[src].label +
                   "' cannot have outgoing edges");
  }
  if (HasEdge(src, label, dst)) return false;
  const int index = num_edges();
  edges_.push_back(Edge{src, label, dst, reference});
  out_[src].push_back(index);
  in_[dst].push_back(index);
  return true;
}

bool AmrGraph::HasEdge(int src, const std::string &label, int dst) const {
  for (int e : out_[src]) {
    if (edges_[e].dst == dst && edges_[e].label == label) return true;
  }
  return false;
}

bool AmrGraph::HasAnyEdge(int src, int dst) const {
  for (int e : out_[src]) {
    if (edges_[e].dst == dst) return true;
  }
  return false;
}

int AmrGraph::FindVariable(const std::string &variable) const {
  for (const Node &n : nodes_) {
    if (!n.is_constant && n.variable == variable) return n.id;
  }
  return kNone;
}

std::vector<bool> AmrGraph::ReachableFromTop() const {
  std::vector<bool> seen(nodes_.size(), false);
  if (top_ == kNone) return seen;
  std::vector<int> todo = {top_};
  seen[top_] = true;
  while (!todo.empty()) {
    const int u = todo.back();
    todo.pop_back();
    for (int e : out_[u]) {
      const int v = edges_[e].dst;
      if (!seen[v]) {
        seen[v] = true;
        todo.push_back(v);
      }
    }
  }
  return seen;
}

bool AmrGraph::HasCycle() const {
  // Iterative three-color DFS.
  std::vector<int> color(nodes_.size(), 0);
  for (int start = 0; start < num_nodes(); ++start) {
    if (color[start] != 0) continue;
    std::vector<std::pair<int, size_t>> stack = {{start, 0}};
    color[start] = 1;
    while (!stack.empty()) {
      auto &[u, next] = stack.back();
      if (next < out_[u].size()) {
        const int v = edges_[out_[u][next++]].dst;
        if (color[v] == 1) return true;
        if (color[v] == 0) {
          color[v] = 1;
          stack.push_back({v, 0});
        }
      } else {
        color[u] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

void AmrGraph::Validate() const {
  std::unordered_set<std::string> variables;
  for (const Node &n : nodes_) {
    if (n.is_constant) {
      if (!out_[n.id].empty()) {
        throw AmrError("constant '" + n.label + "' has outgoing edges");
      }
      continue;
    }
    if (!n.variable.empty() && !variables.insert(n.variable).second) {
      throw AmrError("duplicate variable '" + n.variable + "'");
    }
  }
  for (const Edge &e : edges_) {
    if (e.label.empty() || e.label[0] != ':') {
      throw AmrError("edge label '" + e.label + "' must begin with ':'");
    }
  }
  if (top_ != kNone && (top_ < 0 || top_ >= num_nodes())) {
    throw AmrError("top out of range");
  }
  if (HasCycle()) throw AmrError("graph contains a directed cycle");
}

AmrGraph InducedSubgraph(const AmrGraph &g, const std::vector<int> &node_ids,
                         std::vector<int> *old_to_new) {
  std::vector<int> map(g.num_nodes(), AmrGraph::kNone);
  std::vector<int> sorted = node_ids;
  std::sort(sorted.begin(), sorted.end());
  AmrGraph sub;
  for (int id : sorted) {
    const Node &n = g.node(id);
    map[id] = sub.AddNode(n.label, n.is_constant, n.variable);
  }
  for (const Edge &e : g.edges()) {
    if (map[e.src] != AmrGraph::kNone && map[e.dst] != AmrGraph::kNone) {
      sub.AddEdge(map[e.src], e.label, map[e.dst], e.reference);
    }
  }
  if (g.top() != AmrGraph::kNone && map[g.top()] != AmrGraph::kNone) {
    sub.set_top(map[g.top()]);
  }
  if (old_to_new != nullptr) *old_to_new = std::move(map);
  return sub;
}

bool IsQuoted(const std::string &s) {
  return s.size() >= 2 && s.front() == '"' && s.back() == '"';
}

std::string Unquote(const std::string &s) {
  return IsQuoted(s) ? s.substr(1, s.size() - 2) : s;
}

}  // namespace amreager
