#ifndef AMREAGER_LABEL_RULES_H_
#define AMREAGER_LABEL_RULES_H_

#include <map>
#include <set>
#include <string>
#include <vector>

namespace amreager {

// Stands for the artificial root as an edge source.
extern const char kRootSymbol[];

struct LabelRule {
  std::string label;
  bool exclusive = false;
  std::string start_pattern;  // concept regex; kRootSymbol; empty = any
  std::string end_pattern;    // concept or constant regex; empty = any
};

const std::vector<LabelRule> &LabelRules();

// The full relation inventory used as the starting point for masking.
const std::vector<std::string> &LabelInventory();

// Frame -> allowed ARG numbers, read from "frame<TAB>0,1,2" lines.
class ArityTable {
 public:
  static ArityTable Load(const std::string &path);
  void Save(const std::string &path) const;
  void Set(const std::string &frame, std::set<int> args);
  bool Has(const std::string &frame) const { return table_.count(frame) > 0; }
  bool Allows(const std::string &frame, int arg) const;
  size_t size() const { return table_.size(); }

 private:
  std::map<std::string, std::set<int>> table_;
};

// src is a concept or kRootSymbol; dst is a concept or a constant as written
// (quoted strings keep their quotes).
bool LabelAllowed(const std::string &label, const std::string &src,
                  const std::string &dst, const ArityTable *arity = nullptr);

std::set<std::string> AllowedLabels(const std::string &src,
                                    const std::string &dst,
                                    const ArityTable *arity = nullptr);

}  // namespace amreager

#endif  // AMREAGER_LABEL_RULES_H_
