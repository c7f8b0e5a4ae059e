#include "amreager/sentence.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

#include "amreager/amr_graph.h"

namespace amreager {

Sentence::Sentence(std::vector<std::string> tokens,
                   std::vector<std::string> lemmas,
                   std::vector<std::string> pos, std::vector<std::string> ner,
                   std::vector<Dependency> deps)
    : tokens_(std::move(tokens)),
      lemmas_(std::move(lemmas)),
      pos_(std::move(pos)),
      ner_(std::move(ner)),
      deps_(std::move(deps)) {
  Validate();
  Index();
}

Sentence Sentence::FromTokens(const std::vector<std::string> &tokens) {
  std::vector<std::string> lemmas;
  for (const std::string &t : tokens) {
    std::string lower = t;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    lemmas.push_back(lower);
  }
  const std::vector<std::string> empty(tokens.size());
  return Sentence(tokens, lemmas, empty, empty, {});
}

void Sentence::Index() {
  arcs_into_.assign(tokens_.size() + 1, {});
  for (size_t k = 0; k < deps_.size(); ++k) {
    arcs_into_[deps_[k].dependent].push_back(static_cast<int>(k));
  }
}

const std::string *Sentence::DepLabel(int head, int dependent) const {
  if (dependent < 1 || dependent > size() || head < 0 || head > size()) {
    return nullptr;
  }
  for (int k : arcs_into_[dependent]) {
    if (deps_[k].head == head) return &deps_[k].label;
  }
  return nullptr;
}

void Sentence::Validate() const {
  const size_t n = tokens_.size();
  if (n == 0) throw AmrError("sentence has no tokens");
  if (lemmas_.size() != n || pos_.size() != n || ner_.size() != n) {
    throw AmrError("annotation lists differ in length from tokens");
  }
  for (const Dependency &d : deps_) {
    if (d.head < 0 || d.head > static_cast<int>(n) || d.dependent < 1 ||
        d.dependent > static_cast<int>(n)) {
      throw AmrError("dependency index out of range");
    }
  }
}

nlohmann::json Sentence::ToJson() const {
  nlohmann::json deps = nlohmann::json::array();
  for (const Dependency &d : deps_) {
    deps.push_back({d.head, d.dependent, d.label});
  }
  return {{"tokens", tokens_}, {"lemmas", lemmas_}, {"pos", pos_},
          {"ner", ner_},       {"deps", deps}};
}

Sentence Sentence::FromJson(const nlohmann::json &j) {
  std::vector<std::string> tokens = j.at("tokens").get<std::vector<std::string>>();
  auto list = [&](const char *key) {
    if (j.contains(key)) return j.at(key).get<std::vector<std::string>>();
    return std::vector<std::string>(tokens.size());
  };
  std::vector<std::string> lemmas =
      j.contains("lemmas") ? list("lemmas") : FromTokens(tokens).lemmas();
  std::vector<Dependency> deps;
  if (j.contains("deps")) {
    for (const auto &d : j.at("deps")) {
      deps.push_back({d.at(0).get<int>(), d.at(1).get<int>(),
                      d.at(2).get<std::string>()});
    }
  }
  return Sentence(tokens, lemmas, list("pos"), list("ner"), deps);
}

std::string EntityType(const std::string &tag) {
  if (tag.empty() || tag == "O") return "";
  if (tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') {
    return tag.substr(2);
  }
  return tag;
}

Sentence CollapseEntities(const Sentence &s, std::vector<int> *old_to_new) {
  const int n = s.size();
  std::vector<int> map(n + 1, 0);
  std::vector<std::string> tokens, lemmas, pos, ner;
  int i = 1;
  while (i <= n) {
    const std::string type = EntityType(s.ner(i));
    int j = i;
    if (!type.empty()) {
      while (j + 1 <= n && EntityType(s.ner(j + 1)) == type &&
             s.ner(j + 1).rfind("B-", 0) != 0) {
        ++j;
      }
    }
    std::string token = s.token(i), lemma = s.lemma(i);
    for (int k = i + 1; k <= j; ++k) {
      token += "_" + s.token(k);
      lemma += "_" + s.lemma(k);
    }
    tokens.push_back(token);
    lemmas.push_back(lemma);
    pos.push_back(s.pos(j));
    ner.push_back(j > i ? type : s.ner(i));
    for (int k = i; k <= j; ++k) map[k] = static_cast<int>(tokens.size());
    i = j + 1;
  }
  std::vector<Dependency> deps;
  std::set<std::tuple<int, int, std::string>> seen;
  for (const Dependency &d : s.deps()) {
    const int head = map[d.head];
    const int dep = map[d.dependent];
    if (head == dep) continue;
    if (seen.insert({head, dep, d.label}).second) {
      deps.push_back({head, dep, d.label});
    }
  }
  if (old_to_new) *old_to_new = map;
  return Sentence(tokens, lemmas, pos, ner, deps);
}

}  // namespace amreager
