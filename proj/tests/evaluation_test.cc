#include <random>
#include <regex>
#include <set>

#include "amreager/metrics.h"
#include "amreager/penman.h"
#include "amreager/smatch.h"
#include "doctest.h"
#include "support/testing.h"

using namespace amreager;

namespace {

const char kBeg[] = "(b / beg-01 :ARG0 (i / i) :ARG1 (y / you) :ARG2 (e / excuse-01 :ARG0 y :ARG1 i))";

std::vector<int> Row(const MetricReport &r) {
  std::vector<int> out;
  for (const auto &[key, name, counts] : r.Rows()) out.push_back(Percent(counts->f1()));
  return out;
}

// Concept labels read straight off the PENMAN text.
std::set<std::string> ConceptsFromText(const std::string &penman) {
  std::set<std::string> out;
  static const std::regex instance("/\\s*([^\\s()]+)");
  for (auto it = std::sregex_iterator(penman.begin(), penman.end(), instance);
       it != std::sregex_iterator(); ++it) {
    std::string c = (*it)[1];
    for (char &ch : c) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    out.insert(c);
  }
  return out;
}

}  // namespace

TEST_CASE("component scores of two parses of one sentence") {
  const AmrGraph gold = testing::FixtureGraph("berlusconi_gold.amr");
  const AmrGraph parse1 = testing::FixtureGraph("berlusconi_parse1.amr");
  const AmrGraph parse2 = testing::FixtureGraph("berlusconi_parse2.amr");
  const MetricReport r1 = EvaluateSuite({parse1}, {gold});
  const MetricReport r2 = EvaluateSuite({parse2}, {gold});
  CHECK(Row(r1) == std::vector<int>{56, 65, 56, 69, 56, 0, 0, 0, 69});
  CHECK(Row(r2) == std::vector<int>{78, 100, 78, 46, 100, 100, 100, 0, 54});
  // Neither side has a negation, so the score is 0 rather than undefined.
  CHECK(r1.negations.pred_total == 0);
  CHECK(r1.negations.gold_total == 0);
}

TEST_CASE("report rendering") {
  const AmrGraph gold = testing::FixtureGraph("berlusconi_gold.amr");
  const MetricReport r = EvaluateSuite({gold}, {gold});
  for (const auto &[key, name, counts] : r.Rows()) {
    if (key != "negations") CHECK(counts->f1() == 1.0);
  }
  const nlohmann::json j = r.ToJson();
  CHECK(j.contains("smatch"));
  CHECK(j.contains("named_ent"));
  CHECK_FALSE(j.contains("np_only"));
  CHECK(r.ToText().find("Smatch") != std::string::npos);
  const std::vector<AmrGraph> np_pred = {gold}, np_gold = {gold};
  const MetricReport np = EvaluateSuite({gold}, {gold}, {}, &np_pred, &np_gold);
  CHECK(np.np_only.has_value());
  CHECK(np.ToJson().contains("np_only"));
}

TEST_CASE("triples") {
  const AmrGraph beg = ParsePenman(kBeg);
  const TripleSet t = ToTriples(beg);
  CHECK(t.num_variables() == 4);
  CHECK(t.relations.size() == 5);
  CHECK(t.attributes.size() == 1);  // TOP
  TripleOptions no_top;
  no_top.top = false;
  CHECK(ToTriples(beg, no_top).attributes.empty());
  TripleOptions senses;
  senses.strip_senses = true;
  CHECK(ToTriples(beg, senses).concepts[0] == "beg");

  const TripleSet re = ReentrancyTriples(beg);
  CHECK(re.relations.size() == 4);
  const TripleSet srl = SrlTriples(beg);
  CHECK(srl.relations.size() == 5);

  const AmrGraph inverse = ParsePenman("(b / boy :ARG0-of (g / go-02))");
  const TripleSet inv = ToTriples(inverse);
  REQUIRE(inv.relations.size() == 1);
  CHECK(inv.concepts[inv.relations[0].src] == "go-02");
  CHECK(inv.relations[0].label == "arg0");
}

TEST_CASE("smatch identity and bounds") {
  std::mt19937_64 rng(31);
  for (int run = 0; run < 100; ++run) {
    const AmrGraph g = testing::RandomDag(rng, 8);
    const MatchCounts self = Smatch(g, g);
    CHECK(self.f1() == 1.0);
    const AmrGraph h = testing::RandomDag(rng, 8);
    const MatchCounts m = Smatch(g, h);
    CHECK(m.matched <= std::min(m.pred_total, m.gold_total));
    CHECK(m.f1() >= 0.0);
    CHECK(m.f1() <= 1.0);
  }
}

TEST_CASE("hill climbing never beats exhaustive search") {
  std::mt19937_64 rng(77);
  int equal = 0;
  const int runs = 150;
  for (int run = 0; run < runs; ++run) {
    const AmrGraph a = testing::RandomDag(rng, 6);
    const AmrGraph b = testing::RandomDag(rng, 6);
    const MatchCounts exact = SmatchBruteForce(a, b);
    const MatchCounts hill = Smatch(a, b, 4, 42);
    CHECK(hill.matched <= exact.matched);
    CHECK(hill.pred_total == exact.pred_total);
    equal += hill.matched == exact.matched;
    // Exhaustive matching is symmetric.
    CHECK(SmatchBruteForce(b, a).matched == exact.matched);
  }
  CHECK(equal >= runs * 95 / 100);
}

TEST_CASE("exhaustive search refuses large graphs") {
  std::string text = "(r / root";
  for (int k = 0; k < 10; ++k) text += " :op" + std::to_string(k + 1) + " (n" + std::to_string(k) + " / x)";
  text += ")";
  const AmrGraph big = ParsePenman(text);
  CHECK_THROWS_AS(SmatchBruteForce(big, big), AmrError);
}

TEST_CASE("matched triples of an explicit mapping") {
  const TripleSet a = ToTriples(ParsePenman("(w / want-01 :ARG0 (b / boy))"));
  const TripleSet b = ToTriples(ParsePenman("(w / want-01 :ARG0 (g / girl))"));
  CHECK(MatchedTriples(a, b, {0, 1}) == 3);  // want, TOP, ARG0
  CHECK(MatchedTriples(a, b, {0, -1}) == 2);
  CHECK(MatchedTriples(a, b, {1, 0}) == 0);
}

TEST_CASE("bag metrics against a text-level oracle") {
  std::mt19937_64 rng(8);
  for (int run = 0; run < 100; ++run) {
    const AmrGraph a = testing::RandomDag(rng, 7);
    const AmrGraph b = testing::RandomDag(rng, 7);
    const std::set<std::string> ca = ConceptsFromText(SerializePenman(a));
    const std::set<std::string> cb = ConceptsFromText(SerializePenman(b));
    long common = 0;
    for (const std::string &c : ca) common += cb.count(c);
    const MatchCounts m = FscoreBags(BagKind::kConcepts, a, b);
    CHECK(m.matched == common);
    CHECK(m.pred_total == static_cast<long>(ca.size()));
    CHECK(m.gold_total == static_cast<long>(cb.size()));
  }
  const AmrGraph gold = testing::FixtureGraph("berlusconi_gold.amr");
  CHECK(BagItems(BagKind::kNamedEnt, gold) ==
        std::vector<std::string>{"country|italy", "person|lucio stanca",
                                 "person|silvio berlusconi"});
  CHECK(BagItems(BagKind::kWikification, gold) ==
        std::vector<std::string>{"-", "Italy", "Silvio_Berlusconi"});
  const AmrGraph neg = ParsePenman("(g / go-02 :polarity - :ARG0 (b / boy :polarity -))");
  CHECK(BagItems(BagKind::kNegations, neg) == std::vector<std::string>{"boy", "go-02"});
}

TEST_CASE("suite scores are micro-averaged") {
  std::vector<AmrGraph> pred, gold;
  for (const testing::ToyItem &item : testing::ToyCorpus()) gold.push_back(item.graph);
  std::mt19937_64 rng(2);
  for (size_t i = 0; i < gold.size(); ++i) pred.push_back(testing::RandomDag(rng, 5));
  EvalOptions options;
  options.threads = 2;
  const MetricReport r = EvaluateSuite(pred, gold, options);
  MatchCounts smatch, concepts;
  for (size_t i = 0; i < gold.size(); ++i) {
    smatch += Smatch(pred[i], gold[i], options.restarts, SentenceSeed(options.seed, i));
    concepts += FscoreBags(BagKind::kConcepts, pred[i], gold[i]);
  }
  CHECK(r.smatch.matched == smatch.matched);
  CHECK(r.smatch.pred_total == smatch.pred_total);
  CHECK(r.smatch.gold_total == smatch.gold_total);
  CHECK(r.concepts.matched == concepts.matched);

  options.threads = 1;
  const MetricReport serial = EvaluateSuite(pred, gold, options);
  CHECK(serial.ToJson() == r.ToJson());
  CHECK_THROWS_AS(EvaluateSuite(pred, {gold.front()}), AmrError);
}

TEST_CASE("empty sides score zero") {
  MatchCounts m;
  CHECK(m.f1() == 0.0);
  m.gold_total = 3;
  CHECK(m.recall() == 0.0);
  CHECK(m.f1() == 0.0);
}
