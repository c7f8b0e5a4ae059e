#ifndef AMREAGER_ALIGNMENT_H_
#define AMREAGER_ALIGNMENT_H_

#include <string>
#include <vector>

#include "amreager/amr_graph.h"

namespace amreager {

// pi: node id -> 1-based token index; 0 means unaligned.
class Alignment {
 public:
  Alignment() = default;
  explicit Alignment(int num_nodes) : token_(num_nodes, 0) {}

  int token(int node) const {
    return node < static_cast<int>(token_.size()) ? token_[node] : 0;
  }
  bool aligned(int node) const { return token(node) > 0; }
  void Set(int node, int token);
  void Resize(int num_nodes) { token_.resize(num_nodes, 0); }
  int num_nodes() const { return static_cast<int>(token_.size()); }
  int num_aligned() const;

  // Pre-image of token i, in node order.
  std::vector<int> Preimage(int i) const;

 private:
  std::vector<int> token_;
};

// JAMR-style node addresses: "0" for top, "0.k" for the k-th child
// introduced by the top, counting only edges that first reach a node.
std::vector<std::string> NodeAddresses(const AmrGraph &g);

// Reads "start-end|addr(+addr)*" items separated by whitespace; token
// indices are 0-based and end-exclusive, each span maps to start + 1.
// Unknown addresses and repeated nodes are reported in warnings.
Alignment ParseJamrAlignment(const std::string &text, const AmrGraph &g,
                             std::vector<std::string> *warnings = nullptr);

std::string FormatJamrAlignment(const Alignment &a, const AmrGraph &g);

}  // namespace amreager

#endif  // AMREAGER_ALIGNMENT_H_
