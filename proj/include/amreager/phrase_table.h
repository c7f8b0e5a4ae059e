#ifndef AMREAGER_PHRASE_TABLE_H_
#define AMREAGER_PHRASE_TABLE_H_

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "amreager/graph_analysis.h"

namespace amreager {

extern const char kEmptyFragment[];  // canonical form of the empty fragment

// Variable-independent form: children sorted, variables numbered in
// traversal order. Nodes not connected to the root are dropped.
std::string CanonicalFragment(const Fragment &f);
Fragment FragmentFromCanonical(const std::string &canonical);

// Single concept from the lemma ("-01" for verbs), a constant for numbers,
// empty for punctuation.
Fragment FallbackFragment(const std::string &token, const std::string &lemma,
                          const std::string &pos);

class PhraseTable {
 public:
  struct Entry {
    std::string canonical;
    int count = 0;
  };

  static std::string Key(const std::string &token);

  void Add(const std::string &token, const Fragment &f, int count = 1);
  void AddCanonical(const std::string &token, const std::string &canonical,
                    int count);

  // Entries by count descending, then canonical ascending.
  const std::vector<Entry> *Entries(const std::string &token) const;
  bool Contains(const std::string &token) const;
  size_t size() const { return table_.size(); }

  // Most frequent fragment, or the fallback for unseen tokens.
  Fragment Lookup(const std::string &token, const std::string &lemma = "",
                  const std::string &pos = "") const;

  void Save(const std::string &path) const;
  static PhraseTable Load(const std::string &path);

 private:
  std::map<std::string, std::vector<Entry>> table_;
  mutable std::map<std::string, Fragment> cache_;
  std::shared_ptr<std::mutex> cache_mu_ = std::make_shared<std::mutex>();
};

PhraseTable BuildPhraseTable(
    const std::vector<std::pair<std::string, Fragment>> &shifts);

}  // namespace amreager

#endif  // AMREAGER_PHRASE_TABLE_H_
