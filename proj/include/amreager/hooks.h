#ifndef AMREAGER_HOOKS_H_
#define AMREAGER_HOOKS_H_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "amreager/graph_analysis.h"

namespace amreager {

struct HookOutcome {
  std::optional<Fragment> fragment;
  std::string hook;     // "name", "date", "ordinal", "percentage", "money"
  std::string warning;  // e.g. unparseable date, defaulted entity type
};

// Deterministic fragments triggered by the token's entity tag. The token is
// expected to be entity-collapsed ("New_York").
HookOutcome ApplyHooks(const std::string &token, const std::string &ner);

// Root concept for a named-entity tag, or "" when no name hook applies.
// defaulted is set when a coarse location tag falls back to country.
std::string EntityConcept(const std::string &ner, bool *defaulted = nullptr);

// date-entity fragment for the supported date formats.
std::optional<Fragment> ParseDate(const std::string &token);
std::optional<Fragment> ParseOrdinal(const std::string &token);
std::optional<Fragment> ParsePercentage(const std::string &token);
std::optional<Fragment> ParseMoney(const std::string &token);

// Words bearing negative polarity.
class NegationLexicon {
 public:
  NegationLexicon();  // seed list
  void AddFile(const std::string &path);
  void Add(const std::string &word);
  bool Contains(const std::string &word) const;
  size_t size() const { return words_.size(); }

 private:
  std::set<std::string> words_;
};

}  // namespace amreager

#endif  // AMREAGER_HOOKS_H_
