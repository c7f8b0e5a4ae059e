#include "amreager/phrase_table.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <regex>

#include "amreager/penman.h"

namespace amreager {

const char kEmptyFragment[] = "<empty>";

namespace {

const char kConstantPrefix[] = "<const> ";

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

std::string CanonicalFragment(const Fragment &f) {
  if (f.empty()) return kEmptyFragment;
  const AmrGraph &g = f.graph;
  // A constant root has no children: the fragment is that constant alone.
  if (g.node(f.root).is_constant) return kConstantPrefix + g.node(f.root).label;
  // Sort keys: variable-free rendering of each forward subtree.
  std::vector<std::string> key(g.num_nodes());
  std::vector<int> state(g.num_nodes(), 0);
  std::function<const std::string &(int)> key_of = [&](int v) -> const std::string & {
    if (state[v] == 2) return key[v];
    if (state[v] == 1) {
      key[v] = g.node(v).label;  // reentrant while in progress
      return key[v];
    }
    state[v] = 1;
    std::vector<std::string> parts;
    for (int e : g.out_edges(v)) {
      parts.push_back(g.edges()[e].label + " " + key_of(g.edges()[e].dst));
    }
    std::sort(parts.begin(), parts.end());
    std::string k = g.node(v).is_constant ? g.node(v).label : "(" + g.node(v).label;
    for (const std::string &p : parts) k += " " + p;
    if (!g.node(v).is_constant) k += ")";
    key[v] = k;
    state[v] = 2;
    return key[v];
  };
  // Weakly connected part containing the root.
  std::vector<bool> keep(g.num_nodes(), false);
  std::vector<int> todo = {f.root};
  keep[f.root] = true;
  while (!todo.empty()) {
    const int u = todo.back();
    todo.pop_back();
    for (int e : g.out_edges(u)) {
      const int v = g.edges()[e].dst;
      if (!keep[v]) keep[v] = true, todo.push_back(v);
    }
    for (int e : g.in_edges(u)) {
      const int v = g.edges()[e].src;
      if (!keep[v]) keep[v] = true, todo.push_back(v);
    }
  }
  AmrGraph sorted;
  std::vector<int> map(g.num_nodes(), AmrGraph::kNone);
  std::vector<std::pair<int, int>> pending;  // edges in emission order
  std::function<void(int)> visit = [&](int v) {
    map[v] = sorted.AddNode(g.node(v).label, g.node(v).is_constant);
    std::vector<int> out = g.out_edges(v);
    std::sort(out.begin(), out.end(), [&](int a, int b) {
      const Edge &ea = g.edges()[a], &eb = g.edges()[b];
      if (ea.label != eb.label) return ea.label < eb.label;
      return key_of(ea.dst) < key_of(eb.dst);
    });
    for (int e : out) {
      const int d = g.edges()[e].dst;
      if (map[d] == AmrGraph::kNone) visit(d);
      pending.push_back({e, 0});
    }
  };
  visit(f.root);
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (keep[v] && map[v] == AmrGraph::kNone) visit(v);
  }
  for (const auto &[e, unused] : pending) {
    const Edge &edge = g.edges()[e];
    sorted.AddEdge(map[edge.src], edge.label, map[edge.dst]);
  }
  sorted.set_top(map[f.root]);
  return CanonicalPenman(sorted);
}

Fragment FragmentFromCanonical(const std::string &canonical) {
  Fragment f;
  if (canonical == kEmptyFragment) return f;
  if (canonical.rfind(kConstantPrefix, 0) == 0) {
    f.root = f.graph.AddNode(canonical.substr(sizeof(kConstantPrefix) - 1), true);
    f.graph.set_top(f.root);
    return f;
  }
  f.graph = ParsePenman(canonical);
  for (int v = 0; v < f.graph.num_nodes(); ++v) {
    f.graph.mutable_node(v).variable.clear();
  }
  f.root = f.graph.top();
  return f;
}

Fragment FallbackFragment(const std::string &token, const std::string &lemma,
                          const std::string &pos) {
  Fragment f;
  const bool has_alnum = std::any_of(token.begin(), token.end(), [](unsigned char c) {
    return std::isalnum(c);
  });
  if (!has_alnum) return f;
  static const std::regex number("^[0-9][0-9,]*(\\.[0-9]+)?$");
  if (std::regex_match(token, number)) {
    std::string digits;
    for (char c : token) {
      if (c != ',') digits.push_back(c);
    }
    f.root = f.graph.AddNode(digits, true);
  } else {
    std::string concept_label = Lower(lemma.empty() ? token : lemma);
    if (pos.rfind("VB", 0) == 0) concept_label += "-01";
    f.root = f.graph.AddNode(concept_label);
  }
  f.graph.set_top(f.root);
  return f;
}

std::string PhraseTable::Key(const std::string &token) { return Lower(token); }

void PhraseTable::Add(const std::string &token, const Fragment &f, int count) {
  AddCanonical(token, CanonicalFragment(f), count);
}

void PhraseTable::AddCanonical(const std::string &token,
                               const std::string &canonical, int count) {
  std::vector<Entry> &entries = table_[Key(token)];
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const Entry &e) { return e.canonical == canonical; });
  if (it == entries.end()) {
    entries.push_back({canonical, count});
  } else {
    it->count += count;
  }
  std::sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) {
    if (a.count != b.count) return a.count > b.count;
    return a.canonical < b.canonical;
  });
  std::lock_guard<std::mutex> lock(*cache_mu_);
  cache_.erase(Key(token));
}

const std::vector<PhraseTable::Entry> *PhraseTable::Entries(
    const std::string &token) const {
  auto it = table_.find(Key(token));
  return it == table_.end() ? nullptr : &it->second;
}

bool PhraseTable::Contains(const std::string &token) const {
  return table_.count(Key(token)) > 0;
}

Fragment PhraseTable::Lookup(const std::string &token, const std::string &lemma,
                             const std::string &pos) const {
  const std::string key = Key(token);
  auto it = table_.find(key);
  if (it == table_.end()) return FallbackFragment(token, lemma, pos);
  std::lock_guard<std::mutex> lock(*cache_mu_);
  auto cached = cache_.find(key);
  if (cached != cache_.end()) return cached->second;
  Fragment f = FragmentFromCanonical(it->second.front().canonical);
  cache_[key] = f;
  return f;
}

void PhraseTable::Save(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw AmrError("cannot write " + path);
  for (const auto &[token, entries] : table_) {
    for (const Entry &e : entries) {
      out << token << '\t' << e.count << '\t' << e.canonical << '\n';
    }
  }
}

PhraseTable PhraseTable::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw AmrError("cannot open " + path);
  PhraseTable t;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const size_t a = line.find('\t');
    const size_t b = a == std::string::npos ? a : line.find('\t', a + 1);
    if (b == std::string::npos) {
      throw AmrError(path + ":" + std::to_string(number) + ": expected 3 columns");
    }
    t.AddCanonical(line.substr(0, a), line.substr(b + 1),
                   std::stoi(line.substr(a + 1, b - a - 1)));
  }
  return t;
}

PhraseTable BuildPhraseTable(
    const std::vector<std::pair<std::string, Fragment>> &shifts) {
  PhraseTable t;
  for (const auto &[token, fragment] : shifts) t.Add(token, fragment);
  return t;
}

}  // namespace amreager
