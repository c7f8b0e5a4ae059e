#ifndef AMREAGER_AMR_GRAPH_H_
#define AMREAGER_AMR_GRAPH_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace amreager {

class AmrError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Node {
  int id = -1;
  std::string variable;  // empty for constants and unnamed nodes
  std::string label;     // concept, or the literal text of a constant
  bool is_constant = false;
};

struct Edge {
  int src = -1;
  std::string label;  // begins with ':'
  int dst = -1;
  bool reference = false;  // target written as a bare variable in the text

  bool operator==(const Edge &other) const {
    return src == other.src && dst == other.dst && label == other.label;
  }
};

// Labeled directed graph. Node ids are dense indices into nodes().
class AmrGraph {
 public:
  static constexpr int kNone = -1;

  int AddNode(const std::string &label, bool is_constant = false,
              const std::string &variable = "");

  // Returns false when the identical edge already exists. Throws when the
  // source is a constant or an endpoint is out of range.
  bool AddEdge(int src, const std::string &label, int dst,
               bool reference = false);

  bool HasEdge(int src, const std::string &label, int dst) const;
  bool HasAnyEdge(int src, int dst) const;

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return nodes_.empty(); }

  const Node &node(int id) const { return nodes_[id]; }
  Node &mutable_node(int id) { return nodes_[id]; }
  const std::vector<Node> &nodes() const { return nodes_; }
  const std::vector<Edge> &edges() const { return edges_; }

  // Edge indices, in insertion order.
  const std::vector<int> &out_edges(int id) const { return out_[id]; }
  const std::vector<int> &in_edges(int id) const { return in_[id]; }

  int top() const { return top_; }
  void set_top(int id) { top_ = id; }

  int FindVariable(const std::string &variable) const;

  // Nodes reachable from top along edge direction.
  std::vector<bool> ReachableFromTop() const;

  // True when the non-constant part contains a directed cycle.
  bool HasCycle() const;

  // Throws AmrError describing the first violated invariant.
  void Validate() const;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  int top_ = kNone;
};

// Sub-graph induced by a node subset; node order follows the source graph.
// old_to_new receives kNone for excluded nodes when not null.
AmrGraph InducedSubgraph(const AmrGraph &g, const std::vector<int> &node_ids,
                         std::vector<int> *old_to_new = nullptr);

bool IsQuoted(const std::string &s);
std::string Unquote(const std::string &s);

}  // namespace amreager

#endif  // AMREAGER_AMR_GRAPH_H_
