#include "amreager/alignment.h"

#include <map>
#include <sstream>

namespace amreager {

void Alignment::Set(int node, int token) {
  if (node >= static_cast<int>(token_.size())) token_.resize(node + 1, 0);
  token_[node] = token;
}

int Alignment::num_aligned() const {
  int count = 0;
  for (int t : token_) count += t > 0;
  return count;
}

std::vector<int> Alignment::Preimage(int i) const {
  std::vector<int> nodes;
  for (int v = 0; v < num_nodes(); ++v) {
    if (token_[v] == i) nodes.push_back(v);
  }
  return nodes;
}

std::vector<std::string> NodeAddresses(const AmrGraph &g) {
  std::vector<std::string> address(g.num_nodes());
  if (g.top() == AmrGraph::kNone) return address;
  std::vector<bool> seen(g.num_nodes(), false);
  seen[g.top()] = true;
  address[g.top()] = "0";
  // Pre-order matches the textual order of the annotation.
  std::vector<std::pair<int, size_t>> stack = {{g.top(), 0}};
  std::vector<int> child_count(g.num_nodes(), 0);
  while (!stack.empty()) {
    auto &[u, next] = stack.back();
    if (next >= g.out_edges(u).size()) {
      stack.pop_back();
      continue;
    }
    const int v = g.edges()[g.out_edges(u)[next++]].dst;
    if (seen[v]) continue;
    seen[v] = true;
    address[v] = address[u] + "." + std::to_string(child_count[u]++);
    stack.push_back({v, 0});
  }
  return address;
}

Alignment ParseJamrAlignment(const std::string &text, const AmrGraph &g,
                             std::vector<std::string> *warnings) {
  std::map<std::string, int> by_address;
  const std::vector<std::string> addresses = NodeAddresses(g);
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (!addresses[v].empty()) by_address[addresses[v]] = v;
  }
  Alignment a(g.num_nodes());
  std::istringstream in(text);
  std::string item;
  while (in >> item) {
    const size_t bar = item.find('|');
    const size_t dash = item.find('-');
    if (bar == std::string::npos || dash == std::string::npos || dash > bar) {
      throw AmrError("malformed alignment item '" + item + "'");
    }
    int start;
    try {
      start = std::stoi(item.substr(0, dash));
      std::stoi(item.substr(dash + 1, bar - dash - 1));
    } catch (const std::exception &) {
      throw AmrError("malformed alignment span in '" + item + "'");
    }
    std::string rest = item.substr(bar + 1);
    size_t begin = 0;
    while (begin <= rest.size()) {
      size_t plus = rest.find('+', begin);
      if (plus == std::string::npos) plus = rest.size();
      const std::string addr = rest.substr(begin, plus - begin);
      begin = plus + 1;
      auto it = by_address.find(addr);
      if (it == by_address.end()) {
        if (warnings) warnings->push_back("unknown node address " + addr);
        continue;
      }
      if (a.aligned(it->second)) {
        if (warnings) warnings->push_back("node " + addr + " aligned twice");
        continue;
      }
      a.Set(it->second, start + 1);
    }
  }
  return a;
}

std::string FormatJamrAlignment(const Alignment &a, const AmrGraph &g) {
  const std::vector<std::string> addresses = NodeAddresses(g);
  std::map<int, std::vector<std::string>> by_token;
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (a.aligned(v) && !addresses[v].empty()) {
      by_token[a.token(v)].push_back(addresses[v]);
    }
  }
  std::string out;
  for (const auto &[token, addrs] : by_token) {
    if (!out.empty()) out += ' ';
    out += std::to_string(token - 1) + "-" + std::to_string(token) + "|";
    for (size_t k = 0; k < addrs.size(); ++k) {
      if (k) out += '+';
      out += addrs[k];
    }
  }
  return out;
}

}  // namespace amreager
