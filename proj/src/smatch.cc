#include "amreager/smatch.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <regex>
#include <unordered_map>

namespace amreager {

namespace {

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string RoleName(const std::string &label) {
  return Lower(label.size() > 1 && label[0] == ':' ? label.substr(1) : label);
}

bool Invertible(const std::string &role) {
  static const char *lexical[] = {"consist-of", "prep-out-of", "prep-on-behalf-of"};
  if (role.size() <= 3 || role.compare(role.size() - 3, 3, "-of") != 0) return false;
  return std::none_of(std::begin(lexical), std::end(lexical),
                      [&](const char *r) { return role == r; });
}

// Unary and pairwise match weights between pred and gold variables.
struct Weights {
  int n1 = 0, n2 = 0;
  std::vector<int> unary;  // n1 x n2
  struct Link {
    int k, l, w;
  };
  std::unordered_map<long, std::vector<Link>> pairs;  // key i * n2 + j

  int U(int i, int j) const { return unary[static_cast<size_t>(i) * n2 + j]; }
  const std::vector<Link> *P(int i, int j) const {
    auto it = pairs.find(static_cast<long>(i) * n2 + j);
    return it == pairs.end() ? nullptr : &it->second;
  }
};

Weights BuildWeights(const TripleSet &a, const TripleSet &b) {
  Weights w;
  w.n1 = a.num_variables();
  w.n2 = b.num_variables();
  w.unary.assign(static_cast<size_t>(w.n1) * w.n2, 0);
  for (int i = 0; i < w.n1; ++i) {
    for (int j = 0; j < w.n2; ++j) {
      if (a.concepts[i] == b.concepts[j]) ++w.unary[static_cast<size_t>(i) * w.n2 + j];
    }
  }
  std::map<std::pair<std::string, std::string>, std::vector<int>> attrs;
  for (const auto &t : b.attributes) attrs[{t.label, t.value}].push_back(t.var);
  for (const auto &t : a.attributes) {
    auto it = attrs.find({t.label, t.value});
    if (it == attrs.end()) continue;
    for (int j : it->second) ++w.unary[static_cast<size_t>(t.var) * w.n2 + j];
  }
  std::map<std::string, std::vector<const TripleSet::Relation *>> rels;
  for (const auto &r : b.relations) rels[r.label].push_back(&r);
  for (const auto &r1 : a.relations) {
    auto it = rels.find(r1.label);
    if (it == rels.end()) continue;
    for (const TripleSet::Relation *r2 : it->second) {
      const bool loop1 = r1.src == r1.dst, loop2 = r2->src == r2->dst;
      if (loop1 != loop2) continue;
      if (loop1) {
        ++w.unary[static_cast<size_t>(r1.src) * w.n2 + r2->src];
        continue;
      }
      w.pairs[static_cast<long>(r1.src) * w.n2 + r2->src].push_back({r1.dst, r2->dst, 1});
      w.pairs[static_cast<long>(r1.dst) * w.n2 + r2->dst].push_back({r1.src, r2->src, 1});
    }
  }
  return w;
}

class HillClimber {
 public:
  explicit HillClimber(const Weights &w) : w_(w) {}

  long Climb(std::vector<int> m) {
    used_.assign(w_.n2, -1);
    for (int i = 0; i < w_.n1; ++i) {
      if (m[i] >= 0) used_[m[i]] = i;
    }
    m_ = std::move(m);
    while (true) {
      long best = 0;
      int bi = -1, bk = -1, bj = -1;  // move: (bi, bj); swap: (bi, bk)
      for (int i = 0; i < w_.n1; ++i) {
        const long current = Local(i, m_[i]);
        for (int j = 0; j < w_.n2; ++j) {
          if (used_[j] >= 0) continue;
          const long delta = Local(i, j) - current;
          if (delta > best) best = delta, bi = i, bj = j, bk = -1;
        }
      }
      for (int i = 0; i < w_.n1; ++i) {
        for (int k = i + 1; k < w_.n1; ++k) {
          if (m_[i] == m_[k]) continue;  // both unmapped
          const long before = Local(i, m_[i]) + Local(k, m_[k]) - Pair(i, k);
          std::swap(m_[i], m_[k]);
          const long after = Local(i, m_[i]) + Local(k, m_[k]) - Pair(i, k);
          std::swap(m_[i], m_[k]);
          if (after - before > best) best = after - before, bi = i, bk = k, bj = -1;
        }
      }
      if (best <= 0) break;
      if (bk >= 0) {
        std::swap(m_[bi], m_[bk]);
        if (m_[bi] >= 0) used_[m_[bi]] = bi;
        if (m_[bk] >= 0) used_[m_[bk]] = bk;
      } else {
        if (m_[bi] >= 0) used_[m_[bi]] = -1;
        m_[bi] = bj;
        used_[bj] = bi;
      }
    }
    return Total();
  }

  long Total() const {
    long total = 0;
    for (int i = 0; i < w_.n1; ++i) {
      if (m_[i] < 0) continue;
      total += w_.U(i, m_[i]);
      if (const auto *links = w_.P(i, m_[i])) {
        for (const auto &l : *links) {
          if (l.k > i && m_[l.k] == l.l) total += l.w;
        }
      }
    }
    return total;
  }

 private:
  long Local(int i, int j) const {
    if (j < 0) return 0;
    long s = w_.U(i, j);
    if (const auto *links = w_.P(i, j)) {
      for (const auto &l : *links) {
        if (l.k != i && m_[l.k] == l.l) s += l.w;
      }
    }
    return s;
  }

  long Pair(int i, int k) const {
    if (m_[i] < 0 || m_[k] < 0) return 0;
    long s = 0;
    if (const auto *links = w_.P(i, m_[i])) {
      for (const auto &l : *links) {
        if (l.k == k && l.l == m_[k]) s += l.w;
      }
    }
    return s;
  }

  const Weights &w_;
  std::vector<int> m_;
  std::vector<int> used_;
};

MatchCounts Counts(long matched, const TripleSet &pred, const TripleSet &gold) {
  MatchCounts c;
  c.matched = matched;
  c.pred_total = pred.size();
  c.gold_total = gold.size();
  return c;
}

}  // namespace

TripleSet ToTriples(const AmrGraph &g, const TripleOptions &options) {
  TripleSet t;
  std::vector<int> var(g.num_nodes(), -1);
  static const std::regex sense("-[0-9]+$");
  for (const Node &n : g.nodes()) {
    if (n.is_constant) continue;
    var[n.id] = t.num_variables();
    std::string c = Lower(n.label);
    if (options.strip_senses) c = std::regex_replace(c, sense, "");
    t.concepts.push_back(c);
  }
  // Per source variable: dst -> label and label -> value, last wins.
  std::vector<std::vector<std::pair<int, std::string>>> rel(t.num_variables());
  std::vector<std::vector<std::pair<std::string, std::string>>> att(t.num_variables());
  auto put = [](auto &list, const auto &key, const std::string &value) {
    for (auto &entry : list) {
      if (entry.first == key) {
        entry.second = value;
        return;
      }
    }
    list.emplace_back(key, value);
  };
  // Nested children before re-used variables, as the reference reader does.
  std::vector<int> order(g.num_edges());
  for (int k = 0; k < g.num_edges(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return !g.edges()[a].reference && g.edges()[b].reference;
  });
  for (int k : order) {
    const Edge &e = g.edges()[k];
    std::string role = options.unlabeled ? "label" : RoleName(e.label);
    const Node &dst = g.node(e.dst);
    if (dst.is_constant) {
      put(att[var[e.src]], role, Lower(Unquote(dst.label)));
      continue;
    }
    int a = var[e.src], b = var[e.dst];
    if (!options.unlabeled && Invertible(role)) {
      role.resize(role.size() - 3);
      std::swap(a, b);
    }
    put(rel[a], b, role);
  }
  if (options.top && g.top() >= 0 && !g.node(g.top()).is_constant) {
    const int v = var[g.top()];
    put(att[v], std::string("top"), t.concepts[v]);
  }
  for (int v = 0; v < t.num_variables(); ++v) {
    for (const auto &[label, value] : att[v]) t.attributes.push_back({v, label, value});
    for (const auto &[dst, label] : rel[v]) t.relations.push_back({v, label, dst});
  }
  return t;
}

double MatchCounts::precision() const {
  return pred_total == 0 ? 0.0 : static_cast<double>(matched) / pred_total;
}

double MatchCounts::recall() const {
  return gold_total == 0 ? 0.0 : static_cast<double>(matched) / gold_total;
}

double MatchCounts::f1() const {
  const double p = precision(), r = recall();
  return p + r == 0 ? 0.0 : 2 * p * r / (p + r);
}

MatchCounts &MatchCounts::operator+=(const MatchCounts &o) {
  matched += o.matched;
  pred_total += o.pred_total;
  gold_total += o.gold_total;
  return *this;
}

MatchCounts Smatch(const TripleSet &pred, const TripleSet &gold, int restarts,
                   uint64_t seed) {
  if (restarts < 1) throw AmrError("smatch needs at least one restart");
  if (pred.num_variables() == 0 || gold.num_variables() == 0) {
    return Counts(0, pred, gold);
  }
  const Weights w = BuildWeights(pred, gold);
  HillClimber climber(w);
  std::mt19937_64 rng(seed);
  long best = 0;
  // Gold variables sharing at least one potential triple with each pred variable.
  std::vector<std::vector<int>> candidates(w.n1);
  for (int i = 0; i < w.n1; ++i) {
    for (int j = 0; j < w.n2; ++j) {
      if (w.U(i, j) > 0 || w.P(i, j)) candidates[i].push_back(j);
    }
  }
  for (int r = 0; r < restarts; ++r) {
    std::vector<int> m(w.n1, -1);
    std::vector<bool> used(w.n2, false);
    if (r == 0) {
      for (int i = 0; i < w.n1; ++i) {
        for (int j = 0; j < w.n2; ++j) {
          if (!used[j] && pred.concepts[i] == gold.concepts[j]) {
            m[i] = j;
            used[j] = true;
            break;
          }
        }
      }
    }
    std::vector<int> order(w.n1);
    for (int i = 0; i < w.n1; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (int i : order) {
      if (m[i] >= 0) continue;
      std::vector<int> open;
      for (int j : candidates[i]) {
        if (!used[j]) open.push_back(j);
      }
      if (open.empty()) continue;
      m[i] = open[std::uniform_int_distribution<size_t>(0, open.size() - 1)(rng)];
      used[m[i]] = true;
    }
    best = std::max(best, climber.Climb(std::move(m)));
  }
  return Counts(best, pred, gold);
}

MatchCounts Smatch(const AmrGraph &pred, const AmrGraph &gold, int restarts,
                   uint64_t seed) {
  return Smatch(ToTriples(pred), ToTriples(gold), restarts, seed);
}

MatchCounts SmatchBruteForce(const TripleSet &pred, const TripleSet &gold) {
  const bool flip = pred.num_variables() > gold.num_variables();
  const TripleSet &a = flip ? gold : pred;
  const TripleSet &b = flip ? pred : gold;
  const int n1 = a.num_variables(), n2 = b.num_variables();
  if (n1 > kBruteForceMaxVariables) {
    throw AmrError("brute-force smatch limited to " +
                   std::to_string(kBruteForceMaxVariables) + " variables");
  }
  double space = 1;
  for (int i = 0; i < n1; ++i) space *= n2 - i;
  if (space > 5e7) throw AmrError("brute-force smatch search space too large");
  if (n1 == 0) return Counts(0, pred, gold);

  const Weights w = BuildWeights(a, b);
  std::vector<int> m(n1, -1);
  std::vector<bool> used(n2, false);
  long best = 0;
  auto gain = [&](int i, int j) {
    long s = w.U(i, j);
    if (const auto *links = w.P(i, j)) {
      for (const auto &l : *links) {
        if (l.k < i && m[l.k] == l.l) s += l.w;
      }
    }
    return s;
  };
  auto search = [&](auto &&self, int i, long score) -> void {
    if (i == n1) {
      best = std::max(best, score);
      return;
    }
    for (int j = 0; j < n2; ++j) {
      if (used[j]) continue;
      used[j] = true;
      m[i] = j;
      self(self, i + 1, score + gain(i, j));
      m[i] = -1;
      used[j] = false;
    }
  };
  search(search, 0, 0);
  return Counts(best, pred, gold);
}

MatchCounts SmatchBruteForce(const AmrGraph &pred, const AmrGraph &gold) {
  return SmatchBruteForce(ToTriples(pred), ToTriples(gold));
}

long MatchedTriples(const TripleSet &pred, const TripleSet &gold,
                    const std::vector<int> &mapping) {
  long matched = 0;
  for (int i = 0; i < pred.num_variables(); ++i) {
    const int j = mapping[i];
    if (j >= 0 && pred.concepts[i] == gold.concepts[j]) ++matched;
  }
  for (const auto &t : pred.attributes) {
    const int j = mapping[t.var];
    if (j < 0) continue;
    for (const auto &u : gold.attributes) {
      if (u.var == j && u.label == t.label && u.value == t.value) ++matched;
    }
  }
  for (const auto &r : pred.relations) {
    const int s = mapping[r.src], d = mapping[r.dst];
    if (s < 0 || d < 0) continue;
    for (const auto &u : gold.relations) {
      if (u.src == s && u.dst == d && u.label == r.label) ++matched;
    }
  }
  return matched;
}

}  // namespace amreager
