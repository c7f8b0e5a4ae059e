#ifndef AMREAGER_METRICS_H_
#define AMREAGER_METRICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amreager/amr_graph.h"
#include "amreager/smatch.h"
#include "json.hpp"

namespace amreager {

// Relation triples whose target has several parents, with their endpoints.
TripleSet ReentrancyTriples(const AmrGraph &g);
// Relation triples labeled :ARGn, with their endpoints.
TripleSet SrlTriples(const AmrGraph &g);

enum class BagKind { kConcepts, kNamedEnt, kWikification, kNegations };

// Distinct items compared by the bag metrics.
std::vector<std::string> BagItems(BagKind kind, const AmrGraph &g);
MatchCounts FscoreBags(BagKind kind, const AmrGraph &pred, const AmrGraph &gold);

struct MetricReport {
  MatchCounts smatch, unlabeled, no_wsd;
  std::optional<MatchCounts> np_only;
  MatchCounts reentrancy, concepts, named_ent, wikification, negations, srl;

  // (json key, display name, counts) in report order.
  std::vector<std::tuple<std::string, std::string, const MatchCounts *>> Rows() const;
  std::string ToText() const;
  nlohmann::json ToJson() const;
};

int Percent(double x);

struct EvalOptions {
  int restarts = 4;
  uint64_t seed = 42;
  int threads = 0;
};

// Micro-averaged over sentence pairs. Throws AmrError when the lengths differ.
MetricReport EvaluateSuite(const std::vector<AmrGraph> &pred,
                           const std::vector<AmrGraph> &gold,
                           const EvalOptions &options = {},
                           const std::vector<AmrGraph> *np_pred = nullptr,
                           const std::vector<AmrGraph> *np_gold = nullptr);

// Seed of the i-th sentence's matcher.
uint64_t SentenceSeed(uint64_t seed, size_t index);

}  // namespace amreager

#endif  // AMREAGER_METRICS_H_
