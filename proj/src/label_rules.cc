#include "amreager/label_rules.h"

#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include "amreager/amr_graph.h"

namespace amreager {

const char kRootSymbol[] = "<ROOT>";

namespace {

const char kDateEntity[] = "date-entity";
const char kNumber[] = "[0-9]+";

struct CompiledRule {
  LabelRule rule;
  std::regex start;
  std::regex end;
  bool end_on_raw;  // match quoted constants with their quotes
};

const std::map<std::string, CompiledRule> &CompiledRules() {
  static const std::map<std::string, CompiledRule> *rules = [] {
    auto *m = new std::map<std::string, CompiledRule>();
    for (const LabelRule &r : LabelRules()) {
      CompiledRule c{r, std::regex(r.start_pattern.empty() ? ".*" : r.start_pattern),
                     std::regex(r.end_pattern.empty() ? ".*" : r.end_pattern),
                     r.label == ":value"};
      m->emplace(r.label, std::move(c));
    }
    return m;
  }();
  return *rules;
}

}  // namespace

const std::vector<LabelRule> &LabelRules() {
  static const std::vector<LabelRule> rules = {
      {":top", true, kRootSymbol, ""},
      {":polarity", true, "", "-"},
      {":mode", true, "", "interrogative|expressive|imperative"},
      {":value", false, kDateEntity, "\"[^\"]+\"|[0-9]+"},
      {":day", false, kDateEntity, "[1-9]|[12][0-9]|3[01]"},
      {":month", false, kDateEntity, "[1-9]|1[0-2]"},
      {":year", false, kDateEntity, kNumber},
      {":decade", false, kDateEntity, kNumber},
      {":century", false, kDateEntity, kNumber},
      {":weekday", true, kDateEntity,
       "monday|tuesday|wednesday|thursday|friday|saturday|sunday"},
      {":quarter", false, kDateEntity, "[1-4]"},
      {":season", true, kDateEntity, "winter|fall|spring|summer"},
      {":timezone", true, kDateEntity, "[A-Z]{3}"},
  };
  return rules;
}

const std::vector<std::string> &LabelInventory() {
  static const std::vector<std::string> *inventory = [] {
    auto *v = new std::vector<std::string>();
    const char *relations[] = {
        "accompanier", "age", "beneficiary", "cause", "compared-to",
        "concession", "condition", "consist", "degree", "destination",
        "direction", "domain", "duration", "example", "extent", "frequency",
        "instrument", "location", "manner", "medium", "mod", "name", "ord",
        "part", "path", "poss", "purpose", "quant", "range", "scale", "source",
        "subevent", "time", "topic", "unit", "polarity", "mode", "value",
        "wiki", "li", "day", "month", "year", "weekday", "timezone", "quarter",
        "dayperiod", "season", "decade", "century", "calendar", "era",
        "subset", "superset", "conj-as-if"};
    for (const char *r : relations) v->push_back(std::string(":") + r);
    const char *invertible[] = {
        "accompanier", "beneficiary", "cause", "compared-to", "concession",
        "condition", "consist", "degree", "destination", "direction", "domain",
        "duration", "example", "extent", "frequency", "instrument",
        "location", "manner", "medium", "mod", "name", "part", "path", "poss",
        "purpose", "quant", "source", "subevent", "time", "topic", "subset"};
    for (const char *r : invertible) v->push_back(std::string(":") + r + "-of");
    for (int k = 0; k <= 9; ++k) {
      v->push_back(":ARG" + std::to_string(k));
      v->push_back(":ARG" + std::to_string(k) + "-of");
    }
    for (int k = 1; k <= 10; ++k) {
      v->push_back(":op" + std::to_string(k));
      v->push_back(":snt" + std::to_string(k));
    }
    const char *preps[] = {"against", "along-with", "amid", "among", "as",
                           "at", "by", "for", "from", "in", "in-addition-to",
                           "into", "on", "on-behalf-of", "out-of", "to",
                           "toward", "under", "with", "without"};
    for (const char *p : preps) v->push_back(std::string(":prep-") + p);
    v->push_back(":top");
    return v;
  }();
  return *inventory;
}

void ArityTable::Save(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw AmrError("cannot write " + path);
  for (const auto &[frame, args] : table_) {
    out << frame << '\t';
    bool first = true;
    for (int a : args) {
      out << (first ? "" : ",") << a;
      first = false;
    }
    out << '\n';
  }
}

ArityTable ArityTable::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw AmrError("cannot open arity table " + path);
  ArityTable t;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw AmrError(path + ":" + std::to_string(number) + ": expected a tab");
    }
    std::set<int> args;
    std::stringstream list(line.substr(tab + 1));
    std::string item;
    while (std::getline(list, item, ',')) {
      if (item.empty()) continue;
      try {
        args.insert(std::stoi(item));
      } catch (const std::exception &) {
        throw AmrError(path + ":" + std::to_string(number) +
                       ": bad argument number '" + item + "'");
      }
    }
    t.Set(line.substr(0, tab), std::move(args));
  }
  return t;
}

void ArityTable::Set(const std::string &frame, std::set<int> args) {
  table_[frame] = std::move(args);
}

bool ArityTable::Allows(const std::string &frame, int arg) const {
  auto it = table_.find(frame);
  return it == table_.end() || it->second.count(arg) > 0;
}

bool LabelAllowed(const std::string &label, const std::string &src,
                  const std::string &dst, const ArityTable *arity) {
  const bool from_root = src == kRootSymbol;
  if (from_root || label == ":top") return from_root && label == ":top";
  const auto &rules = CompiledRules();
  auto it = rules.find(label);
  if (it != rules.end()) {
    const CompiledRule &r = it->second;
    const bool start_ok = std::regex_match(src, r.start);
    const std::string &target = r.end_on_raw ? dst : Unquote(dst);
    const bool end_ok = std::regex_match(target, r.end);
    if (r.rule.exclusive && !(start_ok && end_ok)) return false;
    if (!r.rule.exclusive && start_ok && !end_ok) return false;
  }
  if (arity && label.rfind(":ARG", 0) == 0 && label.size() >= 5 &&
      std::isdigit(static_cast<unsigned char>(label[4])) &&
      (label.size() == 5 || label.substr(5) == "-of") && arity->Has(src)) {
    return arity->Allows(src, label[4] - '0');
  }
  return true;
}

std::set<std::string> AllowedLabels(const std::string &src,
                                    const std::string &dst,
                                    const ArityTable *arity) {
  std::set<std::string> out;
  for (const std::string &label : LabelInventory()) {
    if (LabelAllowed(label, src, dst, arity)) out.insert(label);
  }
  return out;
}

}  // namespace amreager
