#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "support/testing.h"

namespace amreager::testing {

namespace {

using Signature = std::tuple<std::string, bool, size_t, size_t, bool>;

Signature NodeSignature(const AmrGraph &g, int v) {
  return {g.node(v).label, g.node(v).is_constant, g.in_edges(v).size(),
          g.out_edges(v).size(), g.top() == v};
}

// Labels of edges between u and w in each direction, sorted.
std::pair<std::vector<std::string>, std::vector<std::string>> Between(
    const AmrGraph &g, int u, int w) {
  std::vector<std::string> forward, backward;
  for (int e : g.out_edges(u)) {
    if (g.edges()[e].dst == w) forward.push_back(g.edges()[e].label);
  }
  for (int e : g.in_edges(u)) {
    if (g.edges()[e].src == w) backward.push_back(g.edges()[e].label);
  }
  std::sort(forward.begin(), forward.end());
  std::sort(backward.begin(), backward.end());
  return {forward, backward};
}

}  // namespace

bool Isomorphic(const AmrGraph &a, const AmrGraph &b) {
  if (a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges()) return false;
  const int n = a.num_nodes();
  std::map<Signature, int> count;
  for (int v = 0; v < n; ++v) ++count[NodeSignature(a, v)];
  for (int v = 0; v < n; ++v) {
    if (--count[NodeSignature(b, v)] < 0) return false;
  }
  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) order[v] = v;
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> search = [&](int k) {
    if (k == n) return true;
    const int u = order[k];
    for (int x = 0; x < n; ++x) {
      if (used[x] || NodeSignature(a, u) != NodeSignature(b, x)) continue;
      bool ok = Between(a, u, u) == Between(b, x, x);
      for (int j = 0; j < k && ok; ++j) {
        ok = Between(a, u, order[j]) == Between(b, x, map[order[j]]);
      }
      if (!ok) continue;
      map[u] = x;
      used[x] = true;
      if (search(k + 1)) return true;
      used[x] = false;
    }
    map[u] = -1;
    return false;
  };
  return search(0);
}

}  // namespace amreager::testing
