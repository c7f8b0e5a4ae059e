#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "amreager/penman.h"
#include "support/testing.h"

namespace amreager::testing {

namespace {

struct Word {
  const char *form;
  const char *lemma;
  const char *concept_label;
};

const std::vector<std::string> kNouns = {"boy", "girl", "cat", "dog",
                                         "teacher", "student", "man", "woman"};
const std::vector<Word> kIntransitive = {{"sleeps", "sleep", "sleep-01"},
                                         {"runs", "run", "run-02"},
                                         {"laughs", "laugh", "laugh-01"},
                                         {"cries", "cry", "cry-01"},
                                         {"smiles", "smile", "smile-01"}};
const std::vector<Word> kTransitive = {{"sees", "see", "see-01"},
                                       {"likes", "like", "like-01"},
                                       {"helps", "help", "help-01"},
                                       {"calls", "call", "call-02"},
                                       {"finds", "find", "find-01"}};
const std::vector<Word> kControl = {{"wants", "want", "want-01"},
                                    {"tries", "try", "try-01"}};
const std::vector<Word> kBare = {{"go", "go", "go-02"},
                                 {"leave", "leave", "leave-11"},
                                 {"sleep", "sleep", "sleep-01"},
                                 {"run", "run", "run-02"},
                                 {"laugh", "laugh", "laugh-01"}};
const std::vector<std::string> kNames = {"John", "Mary", "Anna",
                                         "Peter", "David", "Susan"};

class ItemBuilder {
 public:
  ItemBuilder(std::string id, std::vector<std::string> tokens,
              std::vector<std::string> lemmas, std::vector<std::string> pos,
              std::vector<Dependency> deps,
              std::vector<std::string> ner = {})
      : id_(std::move(id)) {
    if (ner.empty()) ner.assign(tokens.size(), "O");
    sentence_ = Sentence(std::move(tokens), std::move(lemmas), std::move(pos),
                         std::move(ner), std::move(deps));
  }

  int Concept(const std::string &label, int token) {
    const int v = graph_.AddNode(label);
    aligned_.push_back({v, token});
    return v;
  }

  int Constant(const std::string &label, int token) {
    const int v = graph_.AddNode(label, true);
    aligned_.push_back({v, token});
    return v;
  }

  void Link(int src, const std::string &label, int dst) {
    graph_.AddEdge(src, label, dst);
  }

  ToyItem Finish(int top) {
    graph_.set_top(top);
    ToyItem item{id_, sentence_, graph_, Alignment(graph_.num_nodes())};
    for (auto [v, t] : aligned_) item.alignment.Set(v, t);
    return item;
  }

 private:
  std::string id_;
  Sentence sentence_;
  AmrGraph graph_;
  std::vector<std::pair<int, int>> aligned_;
};

std::string Id(int k) { return "toy-" + std::to_string(k + 1); }

ToyItem Coordination(int k, const std::string &x, const std::string &y) {
  ItemBuilder b(Id(k), {"The", x, "and", "the", y}, {"the", x, "and", "the", y},
                {"DT", "NN", "CC", "DT", "NN"},
                {{2, 1, "det"}, {0, 2, "root"}, {2, 3, "cc"}, {5, 4, "det"},
                 {2, 5, "conj"}});
  const int a = b.Concept("and", 3);
  b.Link(a, ":op1", b.Concept(x, 2));
  b.Link(a, ":op2", b.Concept(y, 5));
  return b.Finish(a);
}

ToyItem Intransitive(int k, const std::string &x, const Word &v) {
  ItemBuilder b(Id(k), {"The", x, v.form}, {"the", x, v.lemma},
                {"DT", "NN", "VBZ"}, {{2, 1, "det"}, {3, 2, "nsubj"}, {0, 3, "root"}});
  const int p = b.Concept(v.concept_label, 3);
  b.Link(p, ":ARG0", b.Concept(x, 2));
  return b.Finish(p);
}

ToyItem Transitive(int k, const std::string &x, const Word &v,
                   const std::string &y) {
  ItemBuilder b(Id(k), {"The", x, v.form, "the", y},
                {"the", x, v.lemma, "the", y}, {"DT", "NN", "VBZ", "DT", "NN"},
                {{2, 1, "det"}, {3, 2, "nsubj"}, {0, 3, "root"}, {5, 4, "det"},
                 {3, 5, "dobj"}});
  const int p = b.Concept(v.concept_label, 3);
  b.Link(p, ":ARG0", b.Concept(x, 2));
  b.Link(p, ":ARG1", b.Concept(y, 5));
  return b.Finish(p);
}

ToyItem Negated(int k, const std::string &x, const Word &v) {
  ItemBuilder b(Id(k), {"The", x, "does", "not", v.form},
                {"the", x, "do", "not", v.lemma},
                {"DT", "NN", "VBZ", "RB", "VB"},
                {{2, 1, "det"}, {5, 2, "nsubj"}, {5, 3, "aux"}, {5, 4, "neg"},
                 {0, 5, "root"}});
  const int p = b.Concept(v.concept_label, 5);
  b.Link(p, ":ARG0", b.Concept(x, 2));
  b.Link(p, ":polarity", b.Constant("-", 4));
  return b.Finish(p);
}

ToyItem Control(int k, const std::string &x, const Word &c, const Word &v) {
  ItemBuilder b(Id(k), {"The", x, c.form, "to", v.form},
                {"the", x, c.lemma, "to", v.lemma},
                {"DT", "NN", "VBZ", "TO", "VB"},
                {{2, 1, "det"}, {3, 2, "nsubj"}, {0, 3, "root"}, {5, 4, "aux"},
                 {3, 5, "xcomp"}});
  const int p = b.Concept(c.concept_label, 3);
  const int subj = b.Concept(x, 2);
  const int q = b.Concept(v.concept_label, 5);
  b.Link(p, ":ARG0", subj);
  b.Link(p, ":ARG1", q);
  b.Link(q, ":ARG0", subj);
  return b.Finish(p);
}

ToyItem Named(int k, const std::string &name, const Word &v,
              const std::string &y) {
  ItemBuilder b(Id(k), {name, v.form, "the", y}, {name, v.lemma, "the", y},
                {"NNP", "VBZ", "DT", "NN"},
                {{2, 1, "nsubj"}, {0, 2, "root"}, {4, 3, "det"}, {2, 4, "dobj"}},
                {"B-PER", "O", "O", "O"});
  const int p = b.Concept(v.concept_label, 2);
  const int person = b.Concept("person", 1);
  b.Link(p, ":ARG0", person);
  b.Link(person, ":wiki", b.Constant("\"" + name + "\"", 1));
  const int n = b.Concept("name", 1);
  b.Link(person, ":name", n);
  b.Link(n, ":op1", b.Constant("\"" + name + "\"", 1));
  b.Link(p, ":ARG1", b.Concept(y, 4));
  return b.Finish(p);
}

std::vector<ToyItem> BuildCorpus() {
  std::vector<ToyItem> items;
  auto noun = [](int i) { return kNouns[i % kNouns.size()]; };
  items.push_back(Coordination(0, "boy", "girl"));
  for (int i = 1; i < 8; ++i) {
    items.push_back(Coordination(items.size(), noun(i + 1), noun(i + 4)));
  }
  for (int i = 0; i < 10; ++i) {
    items.push_back(Intransitive(items.size(), noun(i * 3),
                                 kIntransitive[i % kIntransitive.size()]));
  }
  for (int i = 0; i < 12; ++i) {
    items.push_back(Transitive(items.size(), noun(i), kTransitive[i % kTransitive.size()],
                               noun(i * 5 + 3)));
  }
  for (int i = 0; i < 6; ++i) {
    items.push_back(Negated(items.size(), noun(i * 3 + 1), kBare[i % kBare.size()]));
  }
  for (int i = 0; i < 8; ++i) {
    items.push_back(Control(items.size(), noun(i * 5), kControl[i % kControl.size()],
                            kBare[i % kBare.size()]));
  }
  for (int i = 0; i < 6; ++i) {
    items.push_back(Named(items.size(), kNames[i], kTransitive[(i + 2) % kTransitive.size()],
                          noun(i + 2)));
  }
  return items;
}

std::string JoinTokens(const Sentence &s) {
  std::string out;
  for (const std::string &t : s.tokens()) out += (out.empty() ? "" : " ") + t;
  return out;
}

}  // namespace

const std::vector<ToyItem> &ToyCorpus() {
  static const std::vector<ToyItem> corpus = BuildCorpus();
  return corpus;
}

ToyItem BoyAndGirl() { return ToyCorpus().front(); }

std::vector<AmrBlock> ToyBlocks(bool embed_annotations) {
  std::vector<AmrBlock> blocks;
  PenmanOptions pretty;
  pretty.pretty = true;
  for (const ToyItem &item : ToyCorpus()) {
    AmrBlock b;
    b.id = item.id;
    b.snt = JoinTokens(item.sentence);
    b.tok = b.snt;
    b.alignments = FormatJamrAlignment(item.alignment, item.graph);
    if (embed_annotations) b.annotation = item.sentence.ToJson();
    b.penman = SerializePenman(item.graph, pretty);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

std::vector<Instance> ToyInstances() {
  LoadResult r = BuildInstances(ToyBlocks(true), nullptr);
  if (!r.errors.empty()) throw AmrError("toy corpus: " + r.errors.front());
  return std::move(r.instances);
}

void WriteToyCorpus(const std::string &amr_path, const std::string &sidecar_path) {
  const bool sidecar = !sidecar_path.empty();
  std::ofstream out(amr_path);
  for (const AmrBlock &b : ToyBlocks(!sidecar)) WriteAmrBlock(out, b);
  if (!sidecar) return;
  std::ofstream side(sidecar_path);
  for (const ToyItem &item : ToyCorpus()) {
    nlohmann::json j = item.sentence.ToJson();
    j["id"] = item.id;
    side << j.dump() << '\n';
  }
}

TempDir::TempDir(const std::string &prefix) {
  std::string pattern =
      (std::filesystem::temp_directory_path() / (prefix + "-XXXXXX")).string();
  if (!mkdtemp(pattern.data())) throw AmrError("mkdtemp failed");
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string TempDir::File(const std::string &name) const {
  return (std::filesystem::path(path_) / name).string();
}

std::string ReadText(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteText(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string FixturePath(const std::string &name) {
  return (std::filesystem::path(AMREAGER_FIXTURE_DIR) / name).string();
}

AmrGraph FixtureGraph(const std::string &name) {
  const std::vector<AmrBlock> blocks = ReadAmrFile(FixturePath(name));
  if (blocks.size() != 1) throw AmrError(name + ": expected one graph");
  return ParsePenman(blocks.front().penman);
}

}  // namespace amreager::testing
