#ifndef AMREAGER_SENTENCE_H_
#define AMREAGER_SENTENCE_H_

#include <string>
#include <vector>

#include "json.hpp"

namespace amreager {

struct Dependency {
  int head = 0;  // 0 is the artificial root
  int dependent = 0;
  std::string label;
};

// Tokens are 1-based in every public accessor taking an index.
class Sentence {
 public:
  Sentence() = default;
  Sentence(std::vector<std::string> tokens, std::vector<std::string> lemmas,
           std::vector<std::string> pos, std::vector<std::string> ner,
           std::vector<Dependency> deps);

  // Tokens only; lemmas are lowercased tokens, tags are empty.
  static Sentence FromTokens(const std::vector<std::string> &tokens);

  int size() const { return static_cast<int>(tokens_.size()); }
  const std::string &token(int i) const { return tokens_[i - 1]; }
  const std::string &lemma(int i) const { return lemmas_[i - 1]; }
  const std::string &pos(int i) const { return pos_[i - 1]; }
  const std::string &ner(int i) const { return ner_[i - 1]; }

  const std::vector<std::string> &tokens() const { return tokens_; }
  const std::vector<std::string> &lemmas() const { return lemmas_; }
  const std::vector<std::string> &pos_tags() const { return pos_; }
  const std::vector<std::string> &ner_tags() const { return ner_; }
  const std::vector<Dependency> &deps() const { return deps_; }

  // Label of the arc head -> dependent, or nullptr.
  const std::string *DepLabel(int head, int dependent) const;

  // Throws AmrError on length mismatch or out-of-range arcs.
  void Validate() const;

  nlohmann::json ToJson() const;
  static Sentence FromJson(const nlohmann::json &j);

 private:
  void Index();

  std::vector<std::string> tokens_;
  std::vector<std::string> lemmas_;
  std::vector<std::string> pos_;
  std::vector<std::string> ner_;
  std::vector<Dependency> deps_;
  std::vector<std::vector<int>> arcs_into_;  // dependent -> deps_ indices
};

// Entity type of a tag: "B-PER" -> "PER", "O" and "" -> "".
std::string EntityType(const std::string &tag);

// Merges maximal runs of same-entity tokens into one token joined by '_'.
// old_to_new receives the 1-based new index of every old token (index 0
// maps root to root).
Sentence CollapseEntities(const Sentence &s,
                          std::vector<int> *old_to_new = nullptr);

}  // namespace amreager

#endif  // AMREAGER_SENTENCE_H_
