#include <random>
#include <set>
#include <sstream>

#include "amreager/alignment.h"
#include "amreager/corpus.h"
#include "amreager/graph_analysis.h"
#include "amreager/penman.h"
#include "amreager/sentence.h"
#include "doctest.h"
#include "support/testing.h"

using namespace amreager;
using amreager::testing::Isomorphic;

namespace {

const char kBeg[] = R"((b / beg-01
    :ARG0 (i / i)
    :ARG1 (y / you)
    :ARG2 (e / excuse-01
        :ARG0 y
        :ARG1 i)))";

int Find(const AmrGraph &g, const std::string &label) {
  for (const Node &n : g.nodes()) {
    if (n.label == label) return n.id;
  }
  return -1;
}

Sentence Tagged(const std::vector<std::string> &tokens,
               const std::vector<std::string> &ner) {
  const std::vector<std::string> blank(tokens.size(), "X");
  return Sentence(tokens, tokens, blank, ner, {});
}

}  // namespace

TEST_CASE("parse_penman reads the beg example with its reentrancies") {
  const AmrGraph g = ParsePenman(kBeg);
  CHECK(g.num_nodes() == 4);
  CHECK(g.num_edges() == 5);
  CHECK(g.node(g.top()).label == "beg-01");
  CHECK(g.in_edges(Find(g, "i")).size() == 2);
  CHECK(g.in_edges(Find(g, "you")).size() == 2);
  CHECK(g.in_edges(Find(g, "excuse-01")).size() == 1);
}

TEST_CASE("parse_penman minimal graph") {
  const AmrGraph g = ParsePenman("(h / hello)");
  CHECK(g.num_nodes() == 1);
  CHECK(g.num_edges() == 0);
  CHECK(g.top() == 0);
  CHECK(SerializePenman(g) == "(h / hello)");
}

TEST_CASE("parse_penman constants, quotes and alignment markers") {
  const AmrGraph g = ParsePenman(
      R"((p / person~e.1 :name (n / name :op1 "New York"~e.2) :polarity - :quant 5))");
  CHECK(g.num_nodes() == 5);
  CHECK(g.node(Find(g, "person")).label == "person");
  CHECK(Find(g, "\"New York\"") >= 0);
  CHECK(g.node(Find(g, "-")).is_constant);
  CHECK(g.node(Find(g, "5")).is_constant);
}

TEST_CASE("parse_penman errors carry positions") {
  auto fails = [](const std::string &text) {
    try {
      ParsePenman(text);
    } catch (const PenmanError &e) {
      CHECK(e.line() >= 1);
      CHECK(e.column() >= 1);
      return true;
    }
    return false;
  };
  CHECK(fails("(a / and :op1 (b / boy)"));
  CHECK(fails("(a / and :op1 (b / boy)))"));
  CHECK(fails("(a / and :op1 x2)"));
  CHECK(fails("(a / and :op1 (a / boy))"));
  CHECK(fails(""));
  CHECK(fails("(a and)"));
  CHECK(fails("(a / and :op1)"));
}

TEST_CASE("parse_penman accepts forward references") {
  const AmrGraph g = ParsePenman("(a / and :op1 b :op2 (b / boy))");
  CHECK(g.num_nodes() == 2);
  CHECK(g.num_edges() == 2);
  CHECK(g.in_edges(Find(g, "boy")).size() == 2);
}

TEST_CASE("inverse roles are kept as written") {
  const AmrGraph g = ParsePenman("(b / boy :ARG0-of (w / want-01))");
  REQUIRE(g.num_edges() == 1);
  CHECK(g.edges()[0].label == ":ARG0-of");
  CHECK(InvertRole(":ARG0-of") == ":ARG0");
  CHECK(InvertRole(":ARG0") == ":ARG0-of");
  CHECK(IsInverseRole(":part-of"));
  CHECK_FALSE(IsInverseRole(":mod"));
}

TEST_CASE("serialize_penman reproduces the beg annotation up to whitespace") {
  const AmrGraph g = ParsePenman(kBeg);
  PenmanOptions pretty;
  pretty.pretty = true;
  CHECK(SerializePenman(g, pretty) == kBeg);
}

TEST_CASE("serialize_penman writes nodes reachable only backwards as inverse roles") {
  AmrGraph g;
  const int b = g.AddNode("boy");
  const int w = g.AddNode("want-01");
  g.AddEdge(w, ":ARG0", b);
  g.set_top(b);
  const std::string text = SerializePenman(g);
  CHECK(text == "(b / boy :ARG0-of (w / want-01))");
}

TEST_CASE("serialize_penman errors") {
  AmrGraph g;
  CHECK_THROWS_AS(SerializePenman(g), AmrError);
  g.AddNode("a");
  CHECK_THROWS_AS(SerializePenman(g), AmrError);  // no top
  g.set_top(0);
  g.AddNode("b");
  CHECK_THROWS_WITH_AS(SerializePenman(g), doctest::Contains("unreachable"), AmrError);
}

TEST_CASE("penman round trip on random DAGs") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 300; ++k) {
    const AmrGraph g = testing::RandomDag(rng, 8);
    const std::string text = SerializePenman(g);
    const AmrGraph back = ParsePenman(text);
    INFO(text);
    CHECK(Isomorphic(g, back));
    CHECK(SerializePenman(back) == text);
  }
}

TEST_CASE("graph invariants") {
  AmrGraph g;
  const int a = g.AddNode("a");
  const int b = g.AddNode("b");
  const int c = g.AddNode("-", true);
  CHECK(g.AddEdge(a, ":ARG0", b));
  CHECK_FALSE(g.AddEdge(a, ":ARG0", b));
  CHECK_THROWS_AS(g.AddEdge(c, ":mod", a), AmrError);
  CHECK_THROWS_AS(g.AddEdge(a, ":mod", 7), AmrError);
  g.AddEdge(b, ":ARG1", a);
  CHECK(g.HasCycle());
  CHECK_THROWS_AS(ParsePenman("(a / a :ARG0 (b / b :ARG1 a))"), AmrError);
}

TEST_CASE("alignment addresses round-trip") {
  const AmrGraph g = ParsePenman(kBeg);
  const std::vector<std::string> addr = NodeAddresses(g);
  CHECK(addr[Find(g, "beg-01")] == "0");
  CHECK(addr[Find(g, "i")] == "0.0");
  CHECK(addr[Find(g, "you")] == "0.1");
  CHECK(addr[Find(g, "excuse-01")] == "0.2");
  std::vector<std::string> warnings;
  const Alignment a = ParseJamrAlignment("0-1|0.0 1-2|0 2-3|0.1 4-5|0.2 5-6|0.9", g, &warnings);
  CHECK(a.token(Find(g, "i")) == 1);
  CHECK(a.token(Find(g, "beg-01")) == 2);
  CHECK(a.token(Find(g, "excuse-01")) == 5);
  CHECK(warnings.size() == 1);
  CHECK(FormatJamrAlignment(a, g) == "0-1|0.0 1-2|0 2-3|0.1 4-5|0.2");
  CHECK_THROWS_AS(ParseJamrAlignment("0:1|0", g), AmrError);
  CHECK_THROWS_AS(ParseJamrAlignment("x-1|0", g), AmrError);
}

TEST_CASE("alignment spans and multi-node items") {
  const AmrGraph g = ParsePenman(
      "(c / country :name (n / name :op1 \"United\" :op2 \"Kingdom\"))");
  const Alignment a = ParseJamrAlignment("3-5|0+0.0+0.0.0+0.0.1", g);
  for (int v = 0; v < g.num_nodes(); ++v) CHECK(a.token(v) == 4);
  CHECK(a.Preimage(4).size() == 4);
  CHECK(a.num_aligned() == 4);
}

TEST_CASE("token_fragment") {
  const AmrGraph g = ParsePenman(
      "(s / say-01 :ARG0 (p / person :ARG0-of (t / teach-01)) :ARG1 (g / good))");
  Alignment a(g.num_nodes());
  a.Set(Find(g, "person"), 2);
  a.Set(Find(g, "teach-01"), 2);
  a.Set(Find(g, "say-01"), 3);
  const Fragment f = TokenFragment(g, a, 2);
  REQUIRE(f.graph.num_nodes() == 2);
  CHECK(f.graph.num_edges() == 1);
  CHECK(f.graph.node(f.root).label == "person");
  CHECK_FALSE(f.forest);
  CHECK(TokenFragment(g, a, 1).empty());
  CHECK(FragmentDepth(f) == 1);
}

TEST_CASE("token_fragment agrees with a brute-force node filter") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto s = testing::RandomAlignedGraph(rng, 8);
    int total = 0;
    std::set<int> seen;
    for (int i = 1; i <= s.sentence.size(); ++i) {
      const Fragment f = TokenFragment(s.graph, s.alignment, i);
      std::set<int> expected;
      for (int v = 0; v < s.graph.num_nodes(); ++v) {
        if (s.alignment.token(v) == i) expected.insert(v);
      }
      const std::set<int> got(f.source_nodes.begin(), f.source_nodes.end());
      CHECK(got == expected);
      for (int v : got) CHECK(seen.insert(v).second);
      total += static_cast<int>(got.size());
    }
    CHECK(total == s.alignment.num_aligned());
  }
}

TEST_CASE("edge_projective on the beg alignment") {
  const AmrGraph g = ParsePenman(kBeg);
  Alignment a(g.num_nodes());
  // I beg you to excuse me: "me" carries no node, i sits at token 1.
  a.Set(Find(g, "i"), 1);
  a.Set(Find(g, "beg-01"), 2);
  a.Set(Find(g, "you"), 3);
  a.Set(Find(g, "excuse-01"), 5);
  for (const Edge &e : g.edges()) {
    const bool excuse_i = g.node(e.src).label == "excuse-01" && g.node(e.dst).label == "i";
    CHECK((EdgeProjective(g, a, e) == Projectivity::kNonProjective) == excuse_i);
  }
}

TEST_CASE("edge_projective trivial and skipped cases") {
  const AmrGraph g = ParsePenman("(a / a :ARG0 (b / b))");
  Alignment a(2);
  a.Set(0, 1);
  CHECK(EdgeProjective(g, a, g.edges()[0]) == Projectivity::kSkipped);
  a.Set(1, 2);
  CHECK(EdgeProjective(g, a, g.edges()[0]) == Projectivity::kProjective);
}

TEST_CASE("edge_projective agrees with the crossing-pair oracle") {
  std::mt19937_64 rng(13);
  int checked = 0;
  for (int k = 0; k < 500; ++k) {
    const auto s = testing::RandomAlignedGraph(rng, 8);
    for (const Edge &e : s.graph.edges()) {
      const Projectivity p = EdgeProjective(s.graph, s.alignment, e);
      if (p == Projectivity::kSkipped) continue;
      ++checked;
      CHECK((p == Projectivity::kNonProjective) == testing::CrossingOracle(s.graph, s.alignment, e));
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("corpus_stats") {
  const AmrGraph chain = ParsePenman("(a / a :ARG0 (b / b :ARG0 (c / c)))");
  Alignment a(3);
  for (int v = 0; v < 3; ++v) a.Set(v, v + 1);
  const StatsReport r = CorpusStats({{&chain, &a}});
  CHECK(r.NonProjectiveEdgePct() == 0);
  CHECK(r.NonProjectiveGraphPct() == 0);
  CHECK(r.ReentrantEdgePct() == 0);
  CHECK(r.ReentrantGraphPct() == 0);
  CHECK_THROWS_AS(CorpusStats({}), AmrError);
}

TEST_CASE("corpus_stats equals a per-graph recount") {
  std::mt19937_64 rng(17);
  std::vector<testing::AlignedSample> samples;
  for (int k = 0; k < 100; ++k) samples.push_back(testing::RandomAlignedGraph(rng, 8));
  std::vector<AlignedGraph> corpus;
  for (const auto &s : samples) corpus.push_back({&s.graph, &s.alignment});
  const StatsReport r = CorpusStats(corpus);
  const StatsReport want = testing::RecountStats(samples);
  CHECK(r.graphs == want.graphs);
  CHECK(r.edges == want.edges);
  CHECK(r.checked_edges == want.checked_edges);
  CHECK(r.reentrant_edges == want.reentrant_edges);
  CHECK(r.reentrant_graphs == want.reentrant_graphs);
  CHECK(r.nonprojective_edges == want.nonprojective_edges);
  CHECK(r.nonprojective_graphs == want.nonprojective_graphs);
  for (double p : {r.NonProjectiveEdgePct(), r.NonProjectiveGraphPct(),
                   r.ReentrantEdgePct(), r.ReentrantGraphPct()}) {
    CHECK(p >= 0);
    CHECK(p <= 100);
  }
}

TEST_CASE("collapse_entities") {
  const Sentence s({"He", "left", "the", "United", "Kingdom", "today"},
                   {"he", "leave", "the", "United", "Kingdom", "today"},
                   {"PRP", "VBD", "DT", "NNP", "NNP", "NN"},
                   {"O", "O", "O", "LOC", "LOC", "DATE"},
                   {{2, 1, "nsubj"}, {0, 2, "root"}, {5, 3, "det"},
                    {5, 4, "compound"}, {2, 5, "dobj"}, {2, 6, "tmod"}});
  std::vector<int> map;
  const Sentence c = CollapseEntities(s, &map);
  CHECK(c.tokens() == std::vector<std::string>{"He", "left", "the", "United_Kingdom", "today"});
  CHECK(map == std::vector<int>{0, 1, 2, 3, 4, 4, 5});
  CHECK(c.ner(4) == "LOC");
  REQUIRE(c.DepLabel(2, 4) != nullptr);
  CHECK(*c.DepLabel(2, 4) == "dobj");
  CHECK(c.DepLabel(4, 4) == nullptr);
  CHECK_NOTHROW(c.Validate());
}

TEST_CASE("collapse_entities with BIO tags and no entities") {
  const Sentence bio = Tagged({"John", "Smith", "Mary", "Jones", "ran"},
                              {"B-PER", "I-PER", "B-PER", "I-PER", "O"});
  CHECK(CollapseEntities(bio).tokens() ==
        std::vector<std::string>{"John_Smith", "Mary_Jones", "ran"});
  const Sentence plain = Sentence::FromTokens({"the", "boy", "runs"});
  CHECK(CollapseEntities(plain).tokens() == plain.tokens());
}

TEST_CASE("collapse_entities token count matches the span count") {
  std::mt19937_64 rng(19);
  const std::vector<std::string> tags = {"O", "PER", "LOC", "B-ORG", "I-ORG"};
  for (int k = 0; k < 200; ++k) {
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    std::vector<std::string> tokens, ner;
    for (int i = 0; i < n; ++i) {
      tokens.push_back("t" + std::to_string(i));
      ner.push_back(tags[std::uniform_int_distribution<int>(0, 4)(rng)]);
    }
    int entity_tokens = 0, spans = 0;
    for (int i = 0; i < n; ++i) {
      const std::string type = EntityType(ner[i]);
      if (type.empty()) continue;
      ++entity_tokens;
      const bool continues = i > 0 && EntityType(ner[i - 1]) == type &&
                             ner[i].rfind("B-", 0) != 0;
      if (!continues) ++spans;
    }
    const Sentence s = Tagged(tokens, ner);
    CHECK(CollapseEntities(s).size() == n - (entity_tokens - spans));
  }
}

TEST_CASE("sentence validation and json") {
  const Sentence s({"a", "b"}, {"a", "b"}, {"DT", "NN"}, {"O", "O"}, {{2, 1, "det"}, {0, 2, "root"}});
  CHECK_NOTHROW(s.Validate());
  const Sentence back = Sentence::FromJson(s.ToJson());
  CHECK(back.tokens() == s.tokens());
  CHECK(back.pos_tags() == s.pos_tags());
  CHECK(back.deps().size() == 2);
  CHECK(EntityType("B-PER") == "PER");
  CHECK(EntityType("O").empty());
  CHECK_THROWS_AS(Sentence({"a"}, {"a"}, {"DT"}, {"O"}, {{3, 1, "det"}}), AmrError);
  CHECK_THROWS_AS(Sentence({"a"}, {}, {"DT"}, {"O"}, {}), AmrError);
}

TEST_CASE("corpus blocks round-trip and auto ids") {
  std::istringstream in(
      "# ::snt The boy\n# ::tok The boy\n(b / boy)\n\n"
      "# ::id x7 ::date 2015\n# a free comment\n(g / girl)\n");
  const auto blocks = ReadAmrBlocks(in);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].id == "1");
  CHECK(blocks[1].id == "x7");
  CHECK(blocks[1].extra.size() == 1);
  CHECK(blocks[1].comments.size() == 1);
  std::ostringstream out;
  for (const auto &b : blocks) WriteAmrBlock(out, b);
  std::istringstream again(out.str());
  const auto reread = ReadAmrBlocks(again);
  REQUIRE(reread.size() == 2);
  CHECK(reread[0].tok == "The boy");
  CHECK(reread[1].penman == "(g / girl)");
}

TEST_CASE("BuildInstances reports broken blocks and keeps the rest") {
  std::istringstream in(
      "# ::id ok\n# ::tok The boy\n# ::alignments 1-2|0\n(b / boy)\n\n"
      "# ::id broken\n# ::tok x\n(b / boy\n\n"
      "# ::id far\n# ::tok x\n# ::alignments 5-6|0\n(b / boy)\n");
  const LoadResult r = BuildInstances(ReadAmrBlocks(in), nullptr);
  REQUIRE(r.instances.size() == 1);
  CHECK(r.instances[0].alignment->token(0) == 2);
  CHECK(r.errors.size() == 2);
}

TEST_CASE("toy corpus blocks reparse to their graphs") {
  const auto instances = testing::ToyInstances();
  const auto &items = testing::ToyCorpus();
  REQUIRE(instances.size() == 50);
  for (size_t k = 0; k < items.size(); ++k) {
    CHECK(Isomorphic(*instances[k].graph, items[k].graph));
    CHECK(instances[k].alignment->num_aligned() == items[k].graph.num_nodes());
  }
}
