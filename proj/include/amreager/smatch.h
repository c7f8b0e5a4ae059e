#ifndef AMREAGER_SMATCH_H_
#define AMREAGER_SMATCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "amreager/amr_graph.h"

namespace amreager {

// Instance, attribute and relation triples over local variables 0..n-1.
// Symbols are lowercased and unquoted.
struct TripleSet {
  struct Attribute {
    int var;
    std::string label;
    std::string value;
  };
  struct Relation {
    int src;
    std::string label;
    int dst;
  };

  std::vector<std::string> concepts;  // instance triple per variable
  std::vector<Attribute> attributes;
  std::vector<Relation> relations;

  int num_variables() const { return static_cast<int>(concepts.size()); }
  int size() const {
    return static_cast<int>(concepts.size() + attributes.size() + relations.size());
  }
};

struct TripleOptions {
  bool unlabeled = false;     // every role becomes one dummy label
  bool strip_senses = false;  // "beg-01" -> "beg"
  bool top = true;            // TOP attribute valued with the top concept
};

// Inverse roles are flipped (except for a few lexical "-of" roles) unless
// unlabeled. One relation is kept per ordered variable pair and one
// attribute per (variable, label), the last one in edge order.
TripleSet ToTriples(const AmrGraph &g, const TripleOptions &options = {});

struct MatchCounts {
  long matched = 0;
  long pred_total = 0;
  long gold_total = 0;

  double precision() const;
  double recall() const;
  double f1() const;  // 0 when either side is empty
  MatchCounts &operator+=(const MatchCounts &o);
};

// Best one-to-one variable mapping by hill-climbing from `restarts`
// initial mappings: the first matches equal concepts, the rest are random.
// Variables left over are mapped to a random free candidate, a gold variable
// with at least one potentially matching triple.
MatchCounts Smatch(const TripleSet &pred, const TripleSet &gold, int restarts,
                   uint64_t seed);
MatchCounts Smatch(const AmrGraph &pred, const AmrGraph &gold, int restarts = 4,
                   uint64_t seed = 42);

constexpr int kBruteForceMaxVariables = 8;

// Exhaustive search; throws AmrError when the smaller side has more than
// kBruteForceMaxVariables variables or the search space is too large.
MatchCounts SmatchBruteForce(const TripleSet &pred, const TripleSet &gold);
MatchCounts SmatchBruteForce(const AmrGraph &pred, const AmrGraph &gold);

// Matched triples of a given mapping (pred variable -> gold variable or -1).
long MatchedTriples(const TripleSet &pred, const TripleSet &gold,
                    const std::vector<int> &mapping);

}  // namespace amreager

#endif  // AMREAGER_SMATCH_H_
