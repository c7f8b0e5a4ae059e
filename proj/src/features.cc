#include "amreager/features.h"

#include <algorithm>
#include <cctype>

namespace amreager {

const char kNullSymbol[] = "<NULL>";
const char kUnkSymbol[] = "<UNK>";
const char kRootToken[] = "<ROOT>";

namespace {

constexpr int kNoToken = -1;

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

int Clip(int v) { return std::clamp(v, 0, kScalarBuckets - 1); }

// Token position of a stack node: 0 for the root, kNoToken when absent.
int NodeToken(const Configuration &c, int node) {
  if (node == kRootNode) return 0;
  if (node == kNoNode) return kNoToken;
  return c.token_of(node);
}

int BufferToken(const Configuration &c, int k) {
  const int b = c.Buffer(k);
  return b == 0 ? kNoToken : b;
}

std::string Word(const Sentence &s, int t) {
  if (t == kNoToken) return kNullSymbol;
  if (t == 0) return kRootToken;
  return Lower(s.token(t));
}

std::string Pos(const Sentence &s, int t) {
  if (t == kNoToken) return kNullSymbol;
  if (t == 0) return kRootToken;
  return s.pos(t).empty() ? kNullSymbol : s.pos(t);
}

std::string Ner(const Sentence &s, int t) {
  if (t == kNoToken) return kNullSymbol;
  if (t == 0) return kRootToken;
  const std::string type = EntityType(s.ner(t));
  return type.empty() ? "O" : type;
}

std::string Dep(const Sentence &s, int head, int dependent) {
  if (head == kNoToken || dependent == kNoToken || dependent == 0) {
    return kNullSymbol;
  }
  const std::string *label = s.DepLabel(head, dependent);
  return label ? *label : kNullSymbol;
}

// Word of a node reached through p, c or cc.
std::string RelativeWord(const Configuration &c, const Sentence &s, int node) {
  return Word(s, node == kNoNode ? kNoToken : NodeToken(c, node));
}

void AddScalars(FeatureVector &f, const Configuration &c, int a, int b) {
  f.scalars = {Clip(c.depth(a)),        Clip(c.depth(b)),
               Clip(c.num_children(a)), Clip(c.num_children(b)),
               Clip(c.num_parents(a)),  Clip(c.num_parents(b))};
}

void AddNodeWords(FeatureVector &f, const Configuration &c, const Sentence &s,
                  int node) {
  f.words.push_back(RelativeWord(c, s, c.leftmost_parent(node)));
  f.words.push_back(RelativeWord(c, s, c.leftmost_child(node)));
  f.words.push_back(RelativeWord(c, s, c.leftmost_grandchild(node)));
}

FeatureVector Start(const FeatureTemplate &t) {
  FeatureVector f;
  f.template_name = t.name;
  f.template_version = t.version;
  return f;
}

}  // namespace

nlohmann::json FeatureVector::ToJson() const {
  return {{"template", template_name}, {"version", template_version},
          {"scalars", scalars},        {"words", words},
          {"pos", pos},                {"ner", ner},
          {"deps", deps},              {"sparse", sparse}};
}

FeatureVector FeatureVector::FromJson(const nlohmann::json &j) {
  FeatureVector f;
  f.template_name = j.at("template").get<std::string>();
  f.template_version = j.at("version").get<int>();
  f.scalars = j.at("scalars").get<std::vector<int>>();
  f.words = j.at("words").get<std::vector<std::string>>();
  f.pos = j.at("pos").get<std::vector<std::string>>();
  f.ner = j.at("ner").get<std::vector<std::string>>();
  f.deps = j.at("deps").get<std::vector<std::string>>();
  f.sparse = j.at("sparse").get<std::vector<float>>();
  return f;
}

bool FeatureTemplate::Matches(const FeatureVector &f) const {
  return f.template_name == name && f.template_version == version &&
         static_cast<int>(f.scalars.size()) == scalars &&
         static_cast<int>(f.words.size()) == words &&
         static_cast<int>(f.pos.size()) == pos &&
         static_cast<int>(f.ner.size()) == ner &&
         static_cast<int>(f.deps.size()) == deps &&
         static_cast<int>(f.sparse.size()) == sparse;
}

const FeatureTemplate &TransitionTemplate() {
  static const FeatureTemplate t{"transition", 1, 6, 10, 4, 4, 18, 3};
  return t;
}

const FeatureTemplate &LabelTemplate() {
  static const FeatureTemplate t{"label", 1, 6, 8, 2, 2, 2, 3};
  return t;
}

const FeatureTemplate &ReentrancyTemplate() {
  static const FeatureTemplate t{"reentrancy", 1, 0, 3, 3, 0, 6, 0};
  return t;
}

FeatureVector ExtractTransitionFeatures(const Configuration &c,
                                        const Sentence &s) {
  FeatureVector f = Start(TransitionTemplate());
  const int s0 = c.Stack(0), s1 = c.Stack(1);
  const int t0 = NodeToken(c, s0), t1 = NodeToken(c, s1);
  int b[4];
  for (int k = 0; k < 4; ++k) b[k] = BufferToken(c, k);

  AddScalars(f, c, s0, s1);
  f.words = {Word(s, t0), Word(s, t1), Word(s, b[0]), Word(s, b[1])};
  AddNodeWords(f, c, s, s0);
  AddNodeWords(f, c, s, s1);
  f.pos = {Pos(s, t0), Pos(s, t1), Pos(s, b[0]), Pos(s, b[1])};
  f.ner = {Ner(s, t0), Ner(s, t1), Ner(s, b[0]), Ner(s, b[1])};

  f.deps = {Dep(s, t0, t1), Dep(s, t1, t0)};
  for (int t : {t0, t1}) {
    f.deps.push_back(Dep(s, t, b[0]));
    f.deps.push_back(Dep(s, b[0], t));
  }
  for (int k = 1; k <= 3; ++k) {
    f.deps.push_back(Dep(s, b[0], b[k]));
    f.deps.push_back(Dep(s, b[k], b[0]));
  }
  for (int k = 1; k <= 3; ++k) {
    f.deps.push_back(Dep(s, t0, b[k]));
    f.deps.push_back(Dep(s, b[k], t0));
  }

  f.sparse = {s0 == kRootNode ? 1.0f : 0.0f,
              c.buffer_size() == 0 ? 1.0f : 0.0f,
              t0 > 0 && t0 == b[0] ? 1.0f : 0.0f};
  return f;
}

FeatureVector ExtractLabelFeatures(const Configuration &c, const Sentence &s,
                                   Action kind) {
  return ExtractLabelFeatures(c, s, c.Stack(0), c.Stack(1), kind);
}

FeatureVector ExtractLabelFeatures(const Configuration &c, const Sentence &s,
                                   int first, int second, Action kind) {
  FeatureVector f = Start(LabelTemplate());
  const int t0 = NodeToken(c, first), t1 = NodeToken(c, second);
  const int b0 = BufferToken(c, 0);
  AddScalars(f, c, first, second);
  f.words = {Word(s, t0), Word(s, t1)};
  AddNodeWords(f, c, s, first);
  AddNodeWords(f, c, s, second);
  f.pos = {Pos(s, t0), Pos(s, t1)};
  f.ner = {Ner(s, t0), Ner(s, t1)};
  f.deps = {Dep(s, t0, b0), Dep(s, b0, t0)};
  f.sparse = {kind == Action::kLArc ? 1.0f : 0.0f,
              kind == Action::kRArc ? 1.0f : 0.0f,
              kind == Action::kReduce ? 1.0f : 0.0f};
  return f;
}

FeatureVector ExtractReentrancyFeatures(const Configuration &c,
                                        const Sentence &s, int w) {
  FeatureVector f = Start(ReentrancyTemplate());
  const int x = c.Stack(0);
  int p = kNoNode;
  if (x >= 0 && w >= 0) {
    for (int e : c.graph().in_edges(x)) {
      const int src = c.graph().edges()[e].src;
      if (c.graph().HasAnyEdge(src, w)) {
        p = src;
        break;
      }
    }
    if (p == kNoNode) p = c.leftmost_parent(x);
  }
  const int tx = NodeToken(c, x), tw = NodeToken(c, w), tp = NodeToken(c, p);
  f.words = {Word(s, tx), Word(s, tw), Word(s, tp)};
  f.pos = {Pos(s, tx), Pos(s, tw), Pos(s, tp)};
  f.deps = {Dep(s, tx, tw), Dep(s, tw, tx), Dep(s, tp, tx),
            Dep(s, tx, tp), Dep(s, tp, tw), Dep(s, tw, tp)};
  return f;
}

}  // namespace amreager
