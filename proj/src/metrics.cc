#include "amreager/metrics.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <tuple>

#include "amreager/workers.h"

namespace amreager {

namespace {

struct Kept {
  int src;
  std::string label;
  int dst;  // variable, or -1 for a constant target
};

// Endpoint instances, the kept relations (one per ordered pair) and one
// (label, source, target concept) attribute per source and label.
TripleSet SubTriples(const TripleSet &base, const std::vector<Kept> &kept) {
  TripleSet t;
  std::vector<int> local(base.num_variables(), -1);
  auto add = [&](int v) {
    if (v < 0 || local[v] >= 0) return;
    local[v] = t.num_variables();
    t.concepts.push_back(base.concepts[v]);
  };
  for (const Kept &k : kept) {
    add(k.src);
    add(k.dst);
  }
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
  for (const Kept &k : kept) {
    if (k.dst < 0) continue;
    put(rel[local[k.src]], local[k.dst], k.label);
    put(att[local[k.src]], k.label, base.concepts[k.dst]);
  }
  for (int v = 0; v < t.num_variables(); ++v) {
    for (const auto &[label, value] : att[v]) t.attributes.push_back({v, label, value});
    for (const auto &[dst, label] : rel[v]) t.relations.push_back({v, label, dst});
  }
  return t;
}

std::string Join(const std::vector<std::string> &parts, const char *sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

TripleSet ReentrancyTriples(const AmrGraph &g) {
  const TripleSet base = ToTriples(g);
  std::vector<int> indegree(base.num_variables(), 0);
  for (const auto &r : base.relations) ++indegree[r.dst];
  std::vector<Kept> kept;
  for (int v = 0; v < base.num_variables(); ++v) {
    if (indegree[v] < 2) continue;
    for (const auto &r : base.relations) {
      if (r.dst == v) kept.push_back({r.src, r.label, r.dst});
    }
  }
  return SubTriples(base, kept);
}

TripleSet SrlTriples(const AmrGraph &g) {
  const TripleSet base = ToTriples(g);
  static const std::regex arg("^arg[0-9]+$");
  std::vector<Kept> kept;
  for (const auto &a : base.attributes) {
    if (std::regex_match(a.label, arg)) kept.push_back({a.var, a.label, -1});
  }
  for (const auto &r : base.relations) {
    if (std::regex_match(r.label, arg)) kept.push_back({r.src, r.label, r.dst});
  }
  return SubTriples(base, kept);
}

std::vector<std::string> BagItems(BagKind kind, const AmrGraph &g) {
  std::set<std::string> items;
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
  };
  switch (kind) {
    case BagKind::kConcepts:
      for (const Node &n : g.nodes()) {
        if (!n.is_constant) items.insert(lower(n.label));
      }
      break;
    case BagKind::kNamedEnt:
      for (const Edge &e : g.edges()) {
        if (e.label != ":name") continue;
        std::vector<std::pair<std::string, std::string>> ops;
        for (int k : g.out_edges(e.dst)) {
          const Edge &op = g.edges()[k];
          if (op.label.rfind(":op", 0) == 0 && g.node(op.dst).is_constant) {
            ops.emplace_back(op.label, Unquote(g.node(op.dst).label));
          }
        }
        std::sort(ops.begin(), ops.end(), [](const auto &a, const auto &b) {
          return a.first.size() != b.first.size() ? a.first.size() < b.first.size()
                                                  : a.first < b.first;
        });
        std::vector<std::string> words;
        for (const auto &op : ops) words.push_back(lower(op.second));
        items.insert(lower(g.node(e.src).label) + "|" + Join(words, " "));
      }
      break;
    case BagKind::kWikification:
      for (const Edge &e : g.edges()) {
        if (e.label == ":wiki") items.insert(Unquote(g.node(e.dst).label));
      }
      break;
    case BagKind::kNegations:
      for (const Edge &e : g.edges()) {
        if (e.label == ":polarity" && g.node(e.dst).label == "-") {
          items.insert(lower(g.node(e.src).label));
        }
      }
      break;
  }
  return {items.begin(), items.end()};
}

MatchCounts FscoreBags(BagKind kind, const AmrGraph &pred, const AmrGraph &gold) {
  const auto p = BagItems(kind, pred), g = BagItems(kind, gold);
  std::vector<std::string> common;
  std::set_intersection(p.begin(), p.end(), g.begin(), g.end(),
                        std::back_inserter(common));
  MatchCounts c;
  c.matched = static_cast<long>(common.size());
  c.pred_total = static_cast<long>(p.size());
  c.gold_total = static_cast<long>(g.size());
  return c;
}

int Percent(double x) { return static_cast<int>(std::lround(100.0 * x)); }

std::vector<std::tuple<std::string, std::string, const MatchCounts *>>
MetricReport::Rows() const {
  std::vector<std::tuple<std::string, std::string, const MatchCounts *>> rows = {
      {"smatch", "Smatch", &smatch},
      {"unlabeled", "Unlabeled", &unlabeled},
      {"no_wsd", "No WSD", &no_wsd}};
  if (np_only) rows.emplace_back("np_only", "NP-only", &*np_only);
  rows.insert(rows.end(), {{"reentrancy", "Reentrancy", &reentrancy},
                           {"concepts", "Concepts", &concepts},
                           {"named_ent", "Named Ent.", &named_ent},
                           {"wikification", "Wikification", &wikification},
                           {"negations", "Negations", &negations},
                           {"srl", "SRL", &srl}});
  return rows;
}

std::string MetricReport::ToText() const {
  std::ostringstream out;
  out << std::left << std::setw(14) << "Metric" << std::right << std::setw(5)
      << "P" << std::setw(5) << "R" << std::setw(5) << "F1" << '\n';
  for (const auto &[key, name, c] : Rows()) {
    out << std::left << std::setw(14) << name << std::right << std::setw(5)
        << Percent(c->precision()) << std::setw(5) << Percent(c->recall())
        << std::setw(5) << Percent(c->f1()) << '\n';
  }
  return out.str();
}

nlohmann::json MetricReport::ToJson() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto &[key, name, c] : Rows()) {
    j[key] = {{"p", c->precision()},
              {"r", c->recall()},
              {"f1", c->f1()},
              {"matched", c->matched},
              {"pred_total", c->pred_total},
              {"gold_total", c->gold_total}};
  }
  return j;
}

uint64_t SentenceSeed(uint64_t seed, size_t index) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(index), static_cast<uint32_t>(index >> 32)};
  uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<uint64_t>(words[0]) << 32) | words[1];
}

MetricReport EvaluateSuite(const std::vector<AmrGraph> &pred,
                           const std::vector<AmrGraph> &gold,
                           const EvalOptions &options,
                           const std::vector<AmrGraph> *np_pred,
                           const std::vector<AmrGraph> *np_gold) {
  if (pred.size() != gold.size()) {
    throw AmrError("corpus length mismatch: " + std::to_string(pred.size()) +
                   " predicted vs " + std::to_string(gold.size()) + " gold");
  }
  struct PerSentence {
    MatchCounts v[10];
  };
  std::vector<PerSentence> rows(pred.size());
  ParallelFor(pred.size(), options.threads, [&](size_t i) {
    const AmrGraph &p = pred[i], &g = gold[i];
    const uint64_t seed = SentenceSeed(options.seed, i);
    MatchCounts *v = rows[i].v;
    v[0] = Smatch(ToTriples(p), ToTriples(g), options.restarts, seed);
    TripleOptions unlabeled;
    unlabeled.unlabeled = true;
    v[1] = Smatch(ToTriples(p, unlabeled), ToTriples(g, unlabeled),
                  options.restarts, seed);
    TripleOptions senses;
    senses.strip_senses = true;
    v[2] = Smatch(ToTriples(p, senses), ToTriples(g, senses), options.restarts,
                  seed);
    v[3] = Smatch(ReentrancyTriples(p), ReentrancyTriples(g), options.restarts,
                  seed);
    v[4] = FscoreBags(BagKind::kConcepts, p, g);
    v[5] = FscoreBags(BagKind::kNamedEnt, p, g);
    v[6] = FscoreBags(BagKind::kWikification, p, g);
    v[7] = FscoreBags(BagKind::kNegations, p, g);
    v[8] = Smatch(SrlTriples(p), SrlTriples(g), options.restarts, seed);
  });

  MetricReport report;
  MatchCounts *fields[] = {&report.smatch,       &report.unlabeled,
                           &report.no_wsd,       &report.reentrancy,
                           &report.concepts,     &report.named_ent,
                           &report.wikification, &report.negations,
                           &report.srl};
  for (const PerSentence &row : rows) {
    for (int k = 0; k < 9; ++k) *fields[k] += row.v[k];
  }
  if (np_pred && np_gold) {
    if (np_pred->size() != np_gold->size()) {
      throw AmrError("NP corpus length mismatch");
    }
    MatchCounts np;
    for (size_t i = 0; i < np_pred->size(); ++i) {
      np += Smatch(ToTriples((*np_pred)[i]), ToTriples((*np_gold)[i]),
                   options.restarts, SentenceSeed(options.seed, i));
    }
    report.np_only = np;
  }
  return report;
}

}  // namespace amreager
