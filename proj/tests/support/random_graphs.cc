#include <algorithm>
#include <functional>

#include "support/testing.h"

namespace amreager::testing {

namespace {

const std::vector<std::string> kConcepts = {
    "boy", "girl", "want-01", "go-02", "and", "city", "person", "see-01",
    "believe-01", "tree"};
const std::vector<std::string> kRoles = {":ARG0", ":ARG1", ":ARG2", ":mod",
                                         ":op1",  ":op2",  ":time", ":poss",
                                         ":domain"};
const std::vector<std::pair<std::string, std::string>> kAttributes = {
    {":polarity", "-"}, {":quant", "5"}, {":op1", "\"Foo\""},
    {":mode", "interrogative"}};

template <typename T>
const T &Pick(const std::vector<T> &items, std::mt19937_64 &rng) {
  return items[std::uniform_int_distribution<size_t>(0, items.size() - 1)(rng)];
}

int Uniform(std::mt19937_64 &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool Coin(std::mt19937_64 &rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

}  // namespace

AmrGraph RandomDag(std::mt19937_64 &rng, int max_nodes) {
  AmrGraph g;
  const int n = Uniform(rng, 1, max_nodes);
  for (int i = 0; i < n; ++i) g.AddNode(Pick(kConcepts, rng));
  for (int i = 1; i < n; ++i) g.AddEdge(Uniform(rng, 0, i - 1), Pick(kRoles, rng), i);
  const int extra = Uniform(rng, 0, n / 2);
  for (int k = 0; k < extra && n > 2; ++k) {
    const int dst = Uniform(rng, 1, n - 1);
    const int src = Uniform(rng, 0, dst - 1);
    if (!g.HasAnyEdge(src, dst)) g.AddEdge(src, Pick(kRoles, rng), dst);
  }
  const int constants = Uniform(rng, 0, 2);
  for (int k = 0; k < constants; ++k) {
    const auto &[role, value] = Pick(kAttributes, rng);
    const int c = g.AddNode(value, true);
    g.AddEdge(Uniform(rng, 0, n - 1), role, c);
  }
  g.set_top(0);
  return g;
}

AlignedSample RandomAlignedGraph(std::mt19937_64 &rng, int max_nodes) {
  AlignedSample s;
  s.graph = RandomDag(rng, max_nodes);
  const int tokens = s.graph.num_nodes() + Uniform(rng, 0, 3);
  std::vector<std::string> words;
  for (int i = 1; i <= tokens; ++i) words.push_back("w" + std::to_string(i));
  s.sentence = Sentence::FromTokens(words);
  s.alignment = Alignment(s.graph.num_nodes());
  for (int v = 0; v < s.graph.num_nodes(); ++v) {
    if (Coin(rng, 0.85)) s.alignment.Set(v, Uniform(rng, 1, tokens));
  }
  return s;
}

AlignedSample ProjectiveSiblingGraph(std::mt19937_64 &rng, int max_nodes) {
  AlignedSample s;
  const int n = Uniform(rng, 1, max_nodes);
  std::vector<std::string> words;
  for (int i = 1; i <= n; ++i) {
    words.push_back("w" + std::to_string(i));
    s.graph.AddNode(Pick(kConcepts, rng));
  }
  s.sentence = Sentence::FromTokens(words);
  s.alignment = Alignment(n);
  for (int v = 0; v < n; ++v) s.alignment.Set(v, v + 1);

  // Node of token t is t - 1. Spans are inclusive and 1-based.
  std::function<int(int, int)> build = [&](int lo, int hi) {
    const int head = Uniform(rng, lo, hi);
    std::vector<int> left, right;
    for (int a = lo; a < head;) {
      const int b = Uniform(rng, a, head - 1);
      left.push_back(build(a, b));
      a = b + 1;
    }
    for (int a = head + 1; a <= hi;) {
      const int b = Uniform(rng, a, hi);
      right.push_back(build(a, b));
      a = b + 1;
    }
    const int h = head - 1;
    for (int c : left) s.graph.AddEdge(h, Pick(kRoles, rng), c);
    for (int c : right) s.graph.AddEdge(h, Pick(kRoles, rng), c);
    if (!left.empty() && !right.empty() && Coin(rng, 0.5)) {
      s.graph.AddEdge(left.front(), Pick(kRoles, rng), right.front());
    }
    return h;
  };
  s.graph.set_top(build(1, n));
  return s;
}

Fragment RandomFragment(std::mt19937_64 &rng) {
  Fragment f;
  const int kind = Uniform(rng, 0, 9);
  if (kind < 2) return f;
  f.root = f.graph.AddNode(Pick(kConcepts, rng));
  if (kind == 8) {
    const auto &[role, value] = Pick(kAttributes, rng);
    f.graph.AddEdge(f.root, role, f.graph.AddNode(value, true));
  } else if (kind == 9) {
    f.graph.AddEdge(f.root, Pick(kRoles, rng), f.graph.AddNode(Pick(kConcepts, rng)));
  }
  f.graph.set_top(f.root);
  return f;
}

Transition RandomLegalTransition(const Configuration &c, std::mt19937_64 &rng) {
  std::vector<Action> legal;
  for (int a = 0; a < kNumActions; ++a) {
    if (c.IsLegal(static_cast<Action>(a))) legal.push_back(static_cast<Action>(a));
  }
  switch (Pick(legal, rng)) {
    case Action::kShift:
      return Transition::Shift(RandomFragment(rng));
    case Action::kLArc:
      return Transition::LArc(Pick(kRoles, rng));
    case Action::kRArc:
      return Transition::RArc(c.Stack(1) == kRootNode ? std::string(kTopLabel)
                                                      : Pick(kRoles, rng));
    case Action::kReduce: {
      const int w = c.ReentrancyCandidate(c.Stack(0));
      if (w >= 0 && Coin(rng, 0.5)) return Transition::Reduce(w, Pick(kRoles, rng));
      return Transition::Reduce();
    }
  }
  return Transition::Reduce();
}

}  // namespace amreager::testing
