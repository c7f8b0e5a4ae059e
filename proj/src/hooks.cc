#include "amreager/hooks.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "amreager/sentence.h"

namespace amreager {

namespace {

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Lowercase, underscores to spaces, commas dropped, trailing dots trimmed.
std::string Normalize(const std::string &token) {
  std::string out;
  for (char c : token) {
    if (c == '_') {
      out.push_back(' ');
    } else if (c != ',') {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  while (!out.empty() && (out.back() == '.' || out.back() == ' ')) out.pop_back();
  std::string squeezed;
  for (char c : out) {
    if (c == ' ' && (squeezed.empty() || squeezed.back() == ' ')) continue;
    squeezed.push_back(c);
  }
  return squeezed;
}

const char kMonthRe[] =
    "(january|february|march|april|may|june|july|august|september|october|"
    "november|december|jan|feb|mar|apr|jun|jul|aug|sept|sep|oct|nov|dec)\\.?";
const char kWeekdayRe[] =
    "(monday|tuesday|wednesday|thursday|friday|saturday|sunday)";
const char kSeasonRe[] = "(winter|spring|summer|fall)";
const char kSuffixRe[] = "(?:st|nd|rd|th)?";

int MonthNumber(const std::string &m) {
  static const char *names[] = {"jan", "feb", "mar", "apr", "may", "jun",
                                "jul", "aug", "sep", "oct", "nov", "dec"};
  for (int k = 0; k < 12; ++k) {
    if (m.rfind(names[k], 0) == 0) return k + 1;
  }
  return 0;
}

struct DateFields {
  int year = -1, month = -1, day = -1, quarter = -1, decade = -1, century = -1;
  std::string weekday, season;
};

bool Valid(const DateFields &d) {
  if (d.month != -1 && (d.month < 1 || d.month > 12)) return false;
  if (d.day != -1 && (d.day < 1 || d.day > 31)) return false;
  return true;
}

Fragment BuildDate(const DateFields &d) {
  Fragment f;
  AmrGraph &g = f.graph;
  f.root = g.AddNode("date-entity");
  auto number = [&](const char *label, int value) {
    if (value >= 0) g.AddEdge(f.root, label, g.AddNode(std::to_string(value), true));
  };
  number(":year", d.year);
  number(":quarter", d.quarter);
  number(":month", d.month);
  number(":day", d.day);
  if (!d.weekday.empty()) g.AddEdge(f.root, ":weekday", g.AddNode(d.weekday));
  if (!d.season.empty()) g.AddEdge(f.root, ":season", g.AddNode(d.season));
  number(":decade", d.decade);
  number(":century", d.century);
  g.set_top(f.root);
  return f;
}

std::optional<DateFields> MatchDate(const std::string &s) {
  const std::string M = kMonthRe, W = kWeekdayRe, S = kSeasonRe, X = kSuffixRe;
  std::smatch m;
  auto re = [](const std::string &p) { return std::regex("^" + p + "$"); };
  auto num = [&](int k) { return std::stoi(m[k].str()); };
  DateFields d;

  if (std::regex_match(s, m, re("(\\d{4})-(\\d{1,2})-(\\d{1,2})")) ||
      std::regex_match(s, m, re("(\\d{4})/(\\d{1,2})/(\\d{1,2})")) ||
      std::regex_match(s, m, re("(\\d{4})(\\d{2})(\\d{2})"))) {
    d.year = num(1), d.month = num(2), d.day = num(3);
  } else if (std::regex_match(s, m, re("(\\d{1,2})/(\\d{1,2})/(\\d{4})"))) {
    d.month = num(1), d.day = num(2), d.year = num(3);
  } else if (std::regex_match(s, m, re("(\\d{1,2})/(\\d{4})"))) {
    d.month = num(1), d.year = num(2);
  } else if (std::regex_match(s, m, re("(\\d{4})-(\\d{2})"))) {
    d.year = num(1), d.month = num(2);
  } else if (std::regex_match(s, m, re("(\\d{4})"))) {
    d.year = num(1);
  } else if (std::regex_match(s, m, re("(?:the )?(\\d{3}0)s"))) {
    d.decade = num(1);
  } else if (std::regex_match(s, m, re("(?:the )?(\\d{1,2})" + X + " century"))) {
    d.century = num(1);
  } else if (std::regex_match(s, m, re(M + " (\\d{4})"))) {
    d.month = MonthNumber(m[1]), d.year = num(2);
  } else if (std::regex_match(s, m, re(M + " (\\d{1,2})" + X + " (\\d{4})"))) {
    d.month = MonthNumber(m[1]), d.day = num(2), d.year = num(3);
  } else if (std::regex_match(s, m, re("(\\d{1,2})" + X + " (?:of )?" + M + " (\\d{4})"))) {
    d.day = num(1), d.month = MonthNumber(m[2]), d.year = num(3);
  } else if (std::regex_match(s, m, re(M + " (\\d{1,2})" + X))) {
    d.month = MonthNumber(m[1]), d.day = num(2);
  } else if (std::regex_match(s, m, re("(\\d{1,2})" + X + " (?:of )?" + M))) {
    d.day = num(1), d.month = MonthNumber(m[2]);
  } else if (std::regex_match(s, m, re(M))) {
    d.month = MonthNumber(m[1]);
  } else if (std::regex_match(s, m, re(W))) {
    d.weekday = m[1];
  } else if (std::regex_match(s, m, re(W + " (.+)"))) {
    const std::string weekday = m[1];
    auto rest = MatchDate(m[2]);
    if (!rest || !rest->weekday.empty()) return std::nullopt;
    d = *rest;
    d.weekday = weekday;
  } else if (std::regex_match(s, m, re(S))) {
    d.season = m[1];
  } else if (std::regex_match(s, m, re(S + " (?:of )?(\\d{4})"))) {
    d.season = m[1], d.year = num(2);
  } else if (std::regex_match(s, m, re("q([1-4]) (\\d{4})"))) {
    d.quarter = num(1), d.year = num(2);
  } else if (std::regex_match(
                 s, m, re("(first|second|third|fourth) quarter (?:of )?(\\d{4})"))) {
    static const std::map<std::string, int> q = {
        {"first", 1}, {"second", 2}, {"third", 3}, {"fourth", 4}};
    d.quarter = q.at(m[1]), d.year = num(2);
  } else {
    return std::nullopt;
  }
  if (!Valid(d)) return std::nullopt;
  return d;
}

const std::map<std::string, int> &WordNumbers() {
  static const std::map<std::string, int> words = {
      {"one", 1},    {"two", 2},     {"three", 3},  {"four", 4},
      {"five", 5},   {"six", 6},     {"seven", 7},  {"eight", 8},
      {"nine", 9},   {"ten", 10},    {"eleven", 11}, {"twelve", 12},
      {"twenty", 20}, {"thirty", 30}, {"fifty", 50}, {"hundred", 100}};
  return words;
}

// "5", "5.5", "five", optionally followed by a scale word.
std::optional<std::string> ParseQuantity(const std::string &s) {
  std::smatch m;
  static const std::regex pattern(
      "^([0-9]+(?:\\.[0-9]+)?|[a-z]+)(?: (thousand|million|billion|trillion))?$");
  if (!std::regex_match(s, m, pattern)) return std::nullopt;
  double value;
  const std::string base = m[1];
  if (std::isdigit(static_cast<unsigned char>(base[0]))) {
    value = std::stod(base);
  } else {
    auto it = WordNumbers().find(base);
    if (it == WordNumbers().end()) return std::nullopt;
    value = it->second;
  }
  static const std::map<std::string, double> scale = {
      {"thousand", 1e3}, {"million", 1e6}, {"billion", 1e9}, {"trillion", 1e12}};
  if (m[2].matched) value *= scale.at(m[2]);
  std::ostringstream out;
  if (value == std::floor(value) && value < 1e15) {
    out << static_cast<long long>(value);
  } else {
    out << value;
  }
  return out.str();
}

Fragment ValueEntity(const std::string &concept_label, const std::string &value) {
  Fragment f;
  f.root = f.graph.AddNode(concept_label);
  f.graph.AddEdge(f.root, ":value", f.graph.AddNode(value, true));
  f.graph.set_top(f.root);
  return f;
}

}  // namespace

std::optional<Fragment> ParseDate(const std::string &token) {
  auto d = MatchDate(Normalize(token));
  if (!d) return std::nullopt;
  return BuildDate(*d);
}

std::optional<Fragment> ParseOrdinal(const std::string &token) {
  const std::string s = Normalize(token);
  static const std::map<std::string, int> words = {
      {"first", 1},   {"second", 2},  {"third", 3},     {"fourth", 4},
      {"fifth", 5},   {"sixth", 6},   {"seventh", 7},   {"eighth", 8},
      {"ninth", 9},   {"tenth", 10},  {"eleventh", 11}, {"twelfth", 12},
      {"twentieth", 20}, {"last", -1}};
  std::smatch m;
  static const std::regex digits("^([0-9]+)(?:st|nd|rd|th)$");
  if (std::regex_match(s, m, digits)) return ValueEntity("ordinal-entity", m[1]);
  auto it = words.find(s);
  if (it == words.end() || it->second < 0) return std::nullopt;
  return ValueEntity("ordinal-entity", std::to_string(it->second));
}

std::optional<Fragment> ParsePercentage(const std::string &token) {
  std::string s = Normalize(token);
  static const std::regex pattern("^(.+?) ?(?:%|percent|per cent)$");
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) return std::nullopt;
  auto value = ParseQuantity(m[1]);
  if (!value) return std::nullopt;
  return ValueEntity("percentage-entity", *value);
}

std::optional<Fragment> ParseMoney(const std::string &token) {
  const std::string s = Normalize(token);
  static const std::vector<std::pair<std::string, std::string>> symbols = {
      {"$", "dollar"}, {"us$", "dollar"}, {"\xE2\x82\xAC", "euro"},
      {"\xC2\xA3", "pound"}, {"\xC2\xA5", "yen"}};
  static const std::vector<std::pair<std::string, std::string>> words = {
      {"dollars", "dollar"}, {"dollar", "dollar"}, {"euros", "euro"},
      {"euro", "euro"},      {"pounds", "pound"},  {"pound", "pound"},
      {"yen", "yen"},        {"cents", "cent"}};
  std::string unit, amount;
  for (const auto &[sym, name] : symbols) {
    if (s.rfind(sym, 0) == 0) {
      unit = name;
      amount = s.substr(sym.size());
      while (!amount.empty() && amount[0] == ' ') amount.erase(0, 1);
      break;
    }
  }
  if (unit.empty()) {
    for (const auto &[word, name] : words) {
      const std::string suffix = " " + word;
      if (s.size() > suffix.size() &&
          s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
        unit = name;
        amount = s.substr(0, s.size() - suffix.size());
        break;
      }
    }
  }
  if (unit.empty()) return std::nullopt;
  auto value = ParseQuantity(amount);
  if (!value) return std::nullopt;
  Fragment f;
  f.root = f.graph.AddNode("monetary-quantity");
  f.graph.AddEdge(f.root, ":quant", f.graph.AddNode(*value, true));
  f.graph.AddEdge(f.root, ":unit", f.graph.AddNode(unit));
  f.graph.set_top(f.root);
  return f;
}

std::string EntityConcept(const std::string &ner, bool *defaulted) {
  static const std::map<std::string, std::string> types = {
      {"PERSON", "person"},          {"PER", "person"},
      {"CITY", "city"},              {"STATE_OR_PROVINCE", "state"},
      {"STATE", "state"},            {"COUNTRY", "country"},
      {"ORGANIZATION", "organization"}, {"ORG", "organization"}};
  if (defaulted) *defaulted = false;
  const std::string type = EntityType(ner);
  auto it = types.find(type);
  if (it != types.end()) return it->second;
  if (type == "LOCATION" || type == "LOC" || type == "GPE") {
    if (defaulted) *defaulted = true;
    return "country";
  }
  return "";
}

HookOutcome ApplyHooks(const std::string &token, const std::string &ner) {
  HookOutcome out;
  const std::string type = EntityType(ner);
  if (type.empty()) return out;
  bool defaulted = false;
  const std::string root = EntityConcept(ner, &defaulted);
  if (!root.empty()) {
    Fragment f;
    AmrGraph &g = f.graph;
    f.root = g.AddNode(root);
    g.AddEdge(f.root, ":wiki", g.AddNode("\"" + token + "\"", true));
    const int name = g.AddNode("name");
    g.AddEdge(f.root, ":name", name);
    std::stringstream words(token);
    std::string word;
    int k = 0;
    while (std::getline(words, word, '_')) {
      if (word.empty()) continue;
      g.AddEdge(name, ":op" + std::to_string(++k), g.AddNode("\"" + word + "\"", true));
    }
    g.set_top(f.root);
    out.fragment = std::move(f);
    out.hook = "name";
    if (defaulted) out.warning = "entity type " + type + " mapped to country";
    return out;
  }
  if (type == "DATE") {
    out.fragment = ParseDate(token);
    out.hook = "date";
    if (!out.fragment) out.warning = "unparseable date '" + token + "'";
  } else if (type == "ORDINAL") {
    out.fragment = ParseOrdinal(token);
    out.hook = "ordinal";
  } else if (type == "PERCENT") {
    out.fragment = ParsePercentage(token);
    out.hook = "percentage";
  } else if (type == "MONEY") {
    out.fragment = ParseMoney(token);
    out.hook = "money";
  }
  if (!out.fragment) out.hook.clear();
  return out;
}

NegationLexicon::NegationLexicon() {
  for (const char *w : {"not", "n't", "no", "never", "none", "nobody",
                        "nothing", "nowhere", "neither", "nor", "without",
                        "cannot", "illegitimate", "asymmetry", "unable",
                        "impossible", "unlikely", "unknown", "unclear",
                        "unfair", "illegal", "inability", "lack"}) {
    words_.insert(w);
  }
}

void NegationLexicon::AddFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw AmrError("cannot open negation lexicon " + path);
  std::string word;
  while (in >> word) Add(word);
}

void NegationLexicon::Add(const std::string &word) { words_.insert(Lower(word)); }

bool NegationLexicon::Contains(const std::string &word) const {
  return words_.count(Lower(word)) > 0;
}

}  // namespace amreager
