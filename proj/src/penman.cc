#include "amreager/penman.h"

#include <cctype>
#include <map>
#include <memory>
#include <regex>
#include <set>
#include <sstream>
#include <variant>

namespace amreager {

PenmanError::PenmanError(const std::string &message, int line, int column)
    : AmrError(message + " at line " + std::to_string(line) + ", column " +
               std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

struct Position {
  int line = 1;
  int column = 1;
};

struct TreeNode;

struct Symbol {
  std::string text;
  bool quoted = false;
  Position pos;
};

struct Branch {
  std::string role;
  std::variant<std::unique_ptr<TreeNode>, Symbol> target;
};

struct TreeNode {
  std::string variable;
  std::string concept_label;
  Position pos;
  std::vector<Branch> branches;
};

class Reader {
 public:
  explicit Reader(const std::string &text) : text_(text) {}

  std::unique_ptr<TreeNode> ReadTop() {
    SkipSpace();
    if (AtEnd()) Fail("empty annotation");
    if (Peek() != '(') Fail("expected '('");
    auto node = ReadNode();
    SkipSpace();
    if (!AtEnd()) Fail("unexpected content after annotation");
    return node;
  }

 private:
  bool AtEnd() const { return i_ >= text_.size(); }
  char Peek() const { return text_[i_]; }

  char Next() {
    const char c = text_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }

  [[noreturn]] void Fail(const std::string &message) const {
    throw PenmanError(message, pos_.line, pos_.column);
  }

  void SkipSpace() {
    while (!AtEnd()) {
      const char c = Peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        Next();
      } else if (c == '#') {
        while (!AtEnd() && Peek() != '\n') Next();
      } else {
        break;
      }
    }
  }

  static bool IsDelimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' ||
           c == ')' || c == '"';
  }

  std::string ReadBare(bool stop_at_slash) {
    std::string out;
    while (!AtEnd() && !IsDelimiter(Peek()) &&
           !(stop_at_slash && Peek() == '/')) {
      out.push_back(Next());
    }
    return out;
  }

  std::string ReadQuoted() {
    std::string out = "\"";
    Next();
    while (true) {
      if (AtEnd()) Fail("unterminated string");
      const char c = Next();
      if (c == '\\' && !AtEnd()) {
        out.push_back(c);
        out.push_back(Next());
        continue;
      }
      out.push_back(c);
      if (c == '"') break;
    }
    return out;
  }

  static std::string StripAlignment(const std::string &s) {
    static const std::regex marker("~[a-zA-Z]*\\.?[0-9][0-9,.]*$");
    if (IsQuoted(s)) return s;
    return std::regex_replace(s, marker, "");
  }

  std::unique_ptr<TreeNode> ReadNode() {
    auto node = std::make_unique<TreeNode>();
    node->pos = pos_;
    Next();  // '('
    SkipSpace();
    node->variable = ReadBare(true);
    if (node->variable.empty()) Fail("expected variable");
    SkipSpace();
    if (AtEnd() || Peek() != '/') Fail("expected '/' after variable");
    Next();
    SkipSpace();
    if (!AtEnd() && Peek() == '"') {
      node->concept_label = ReadQuoted();
      if (!AtEnd() && Peek() == '~') ReadBare(false);
    } else {
      node->concept_label = StripAlignment(ReadBare(false));
    }
    if (node->concept_label.empty()) Fail("expected concept");
    while (true) {
      SkipSpace();
      if (AtEnd()) Fail("unbalanced parentheses: missing ')'");
      if (Peek() == ')') {
        Next();
        return node;
      }
      if (Peek() != ':') Fail("expected role or ')'");
      Branch branch;
      branch.role = ReadBare(false);
      if (branch.role.size() < 2) Fail("empty role");
      SkipSpace();
      if (AtEnd()) Fail("missing target for role " + branch.role);
      if (Peek() == '(') {
        branch.target = ReadNode();
      } else {
        Symbol sym;
        sym.pos = pos_;
        if (Peek() == '"') {
          sym.text = ReadQuoted();
          sym.quoted = true;
          if (!AtEnd() && Peek() == '~') ReadBare(false);
        } else if (Peek() == ')' || Peek() == ':') {
          Fail("missing target for role " + branch.role);
        } else {
          sym.text = StripAlignment(ReadBare(false));
        }
        branch.target = std::move(sym);
      }
      node->branches.push_back(std::move(branch));
    }
  }

  const std::string &text_;
  size_t i_ = 0;
  Position pos_;
};

bool LooksLikeVariable(const std::string &s) {
  static const std::regex shape("^[a-zA-Z][0-9]*$");
  return std::regex_match(s, shape);
}

class Builder {
 public:
  AmrGraph Build(const TreeNode &root) {
    Define(root);
    const int top = Emit(root);
    graph_.set_top(top);
    return std::move(graph_);
  }

 private:
  // First pass: create variable nodes in pre-order.
  void Define(const TreeNode &n) {
    if (variables_.count(n.variable)) {
      throw PenmanError("duplicate variable '" + n.variable + "'",
                        n.pos.line, n.pos.column);
    }
    variables_[n.variable] = graph_.AddNode(n.concept_label, false, n.variable);
    for (const Branch &b : n.branches) {
      if (auto *child = std::get_if<std::unique_ptr<TreeNode>>(&b.target)) {
        Define(**child);
      }
    }
  }

  // Second pass: edges in textual order; constants created on the way.
  int Emit(const TreeNode &n) {
    const int id = variables_.at(n.variable);
    for (const Branch &b : n.branches) {
      int dst;
      bool reference = false;
      if (auto *child = std::get_if<std::unique_ptr<TreeNode>>(&b.target)) {
        dst = Emit(**child);
      } else {
        const Symbol &sym = std::get<Symbol>(b.target);
        auto it = sym.quoted ? variables_.end() : variables_.find(sym.text);
        if (it != variables_.end()) {
          dst = it->second;
          reference = true;
        } else if (!sym.quoted && LooksLikeVariable(sym.text)) {
          throw PenmanError("undefined variable '" + sym.text + "'",
                            sym.pos.line, sym.pos.column);
        } else {
          dst = graph_.AddNode(sym.text, true);
        }
      }
      graph_.AddEdge(id, b.role, dst, reference);
    }
    return id;
  }

  AmrGraph graph_;
  std::map<std::string, int> variables_;
};

}  // namespace

AmrGraph ParsePenman(const std::string &text) {
  Reader reader(text);
  auto root = reader.ReadTop();
  AmrGraph g = Builder().Build(*root);
  if (g.HasCycle()) throw PenmanError("cyclic graph is not supported", 1, 1);
  return g;
}

bool IsInverseRole(const std::string &label) {
  return label.size() > 3 && label.compare(label.size() - 3, 3, "-of") == 0;
}

std::string InvertRole(const std::string &label) {
  if (IsInverseRole(label)) return label.substr(0, label.size() - 3);
  return label + "-of";
}

namespace {

class Writer {
 public:
  Writer(const AmrGraph &g, const PenmanOptions &options, bool canonical)
      : g_(g), options_(options), canonical_(canonical) {}

  std::string Write() {
    if (g_.empty()) throw AmrError("cannot serialize an empty graph");
    if (g_.top() == AmrGraph::kNone) throw AmrError("graph has no top node");
    if (g_.node(g_.top()).is_constant) {
      throw AmrError("top node '" + g_.node(g_.top()).label +
                     "' is a constant");
    }
    forward_ = g_.ReachableFromTop();
    visited_.assign(g_.num_nodes(), false);
    emitted_.assign(g_.num_edges(), false);
    names_.assign(g_.num_nodes(), "");
    if (!canonical_ && options_.keep_variables) ReserveVariables();
    WriteNode(g_.top(), 0);
    for (int id = 0; id < g_.num_nodes(); ++id) {
      if (!visited_[id] && !g_.node(id).is_constant) {
        throw AmrError("node " + std::to_string(id) + " ('" +
                       g_.node(id).label + "') is unreachable from top");
      }
    }
    return out_.str();
  }

 private:
  void ReserveVariables() {
    std::map<std::string, int> count;
    for (const Node &n : g_.nodes()) {
      if (!n.is_constant && !n.variable.empty()) ++count[n.variable];
    }
    for (const Node &n : g_.nodes()) {
      if (!n.is_constant && !n.variable.empty() && count[n.variable] == 1) {
        names_[n.id] = n.variable;
        used_.insert(n.variable);
      }
    }
  }

  const std::string &Name(int id) {
    if (!names_[id].empty()) return names_[id];
    if (canonical_) {
      names_[id] = "v" + std::to_string(next_canonical_++);
      return names_[id];
    }
    const std::string &label = g_.node(id).label;
    char first = 'x';
    for (char c : label) {
      if (std::isalpha(static_cast<unsigned char>(c))) {
        first = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        break;
      }
    }
    std::string name(1, first);
    for (int k = 2; used_.count(name); ++k) {
      name = std::string(1, first) + std::to_string(k);
    }
    used_.insert(name);
    names_[id] = name;
    return names_[id];
  }

  void Break(int depth) {
    if (options_.pretty) {
      out_ << '\n' << std::string(depth * options_.indent, ' ');
    } else {
      out_ << ' ';
    }
  }

  void WriteTarget(int id, int depth) {
    const Node &n = g_.node(id);
    if (n.is_constant) {
      out_ << n.label;
    } else if (visited_[id]) {
      out_ << Name(id);
    } else {
      WriteNode(id, depth);
    }
  }

  void WriteNode(int id, int depth) {
    visited_[id] = true;
    out_ << '(' << Name(id) << " / " << g_.node(id).label;
    for (int e : g_.out_edges(id)) {
      if (emitted_[e]) continue;
      emitted_[e] = true;
      const Edge &edge = g_.edges()[e];
      Break(depth + 1);
      out_ << edge.label << ' ';
      WriteTarget(edge.dst, depth + 1);
    }
    for (int e : g_.in_edges(id)) {
      if (emitted_[e]) continue;
      const Edge &edge = g_.edges()[e];
      if (forward_[edge.src]) continue;
      emitted_[e] = true;
      Break(depth + 1);
      out_ << InvertRole(edge.label) << ' ';
      WriteTarget(edge.src, depth + 1);
    }
    out_ << ')';
  }

  const AmrGraph &g_;
  PenmanOptions options_;
  bool canonical_;
  std::vector<bool> forward_;
  std::vector<bool> visited_;
  std::vector<bool> emitted_;
  std::vector<std::string> names_;
  std::set<std::string> used_;
  int next_canonical_ = 0;
  std::ostringstream out_;
};

}  // namespace

std::string SerializePenman(const AmrGraph &g, const PenmanOptions &options) {
  return Writer(g, options, false).Write();
}

std::string CanonicalPenman(const AmrGraph &g) {
  return Writer(g, PenmanOptions{}, true).Write();
}

}  // namespace amreager
