#include <random>

#include "amreager/commands.h"
#include "amreager/oracle.h"
#include "amreager/parser.h"
#include "amreager/penman.h"
#include "doctest.h"
#include "support/testing.h"

using namespace amreager;

namespace {

// Counts gold edges (plus the root arc) whose endpoints are both aligned,
// mapped through the reconstruction. Independent of OracleScore.
int RecoveredEdges(const OracleResult &r, const AmrGraph &gold) {
  int found = 0;
  for (const Edge &e : gold.edges()) {
    for (const Edge &b : r.reconstructed.edges()) {
      if (r.origin[b.src] == e.src && r.origin[b.dst] == e.dst && b.label == e.label) {
        ++found;
        break;
      }
    }
  }
  const int top = r.reconstructed.top();
  if (top != AmrGraph::kNone && r.origin[top] == gold.top()) ++found;
  return found;
}

}  // namespace

TEST_CASE("oracle trace for the coordination example") {
  const testing::ToyItem item = testing::BoyAndGirl();
  const std::string root = "\xE2\x88\x98";
  const std::string op1 = "<and,:op1,boy>";
  const std::string top = "<" + root + ",:top,and>";
  const std::string op2 = "<and,:op2,girl>";
  const std::vector<std::string> expected = {
      "action\tstack\tbuffer\tedges",
      "-\t[" + root + "]\t[the,boy,and,the,girl]\t{}",
      "Shift\t[" + root + "]\t[boy,and,the,girl]\t{}",
      "Shift\t[" + root + ",boy]\t[and,the,girl]\t{}",
      "Shift\t[" + root + ",boy,and]\t[the,girl]\t{}",
      "LArc\t[" + root + ",and]\t[the,girl]\t{" + op1 + "}",
      "RArc\t[" + root + ",and]\t[the,girl]\t{" + op1 + "," + top + "}",
      "Shift\t[" + root + ",and]\t[girl]\t{" + op1 + "," + top + "}",
      "Shift\t[" + root + ",and,girl]\t[]\t{" + op1 + "," + top + "}",
      "RArc\t[" + root + ",and,girl]\t[]\t{" + op1 + "," + top + "," + op2 + "}",
      "Reduce\t[" + root + ",and]\t[]\t{" + op1 + "," + top + "," + op2 + "}",
      "Reduce\t[" + root + "]\t[]\t{" + op1 + "," + top + "," + op2 + "}",
  };
  const std::vector<std::string> rows =
      OracleTraceRows(item.sentence, item.graph, item.alignment);
  REQUIRE(rows.size() == expected.size());
  for (size_t i = 0; i < rows.size(); ++i) CHECK(rows[i] == expected[i]);

  const OracleResult r = OracleRun(item.sentence, item.graph, item.alignment);
  CHECK(r.steps.size() == 10);
  CHECK(r.score.precision() == 1.0);
  CHECK(r.score.recall() == 1.0);
  CHECK(testing::Isomorphic(r.reconstructed, item.graph));
}

TEST_CASE("single node sentence") {
  AmrGraph g;
  g.set_top(g.AddNode("hello"));
  Alignment a(1);
  a.Set(0, 1);
  const OracleResult r = OracleRun(Sentence::FromTokens({"Hello"}), g, a);
  REQUIRE(r.steps.size() == 3);
  CHECK(r.steps[0].gold_action.action == Action::kShift);
  CHECK(r.steps[1].gold_action.action == Action::kRArc);
  CHECK(r.steps[1].gold_action.label == kTopLabel);
  CHECK(r.steps[2].gold_action.action == Action::kReduce);
  CHECK(r.score.gold_edges == 1);
  CHECK(r.score.correct_edges == 1);
}

TEST_CASE("oracle on a terminal configuration throws") {
  AmrGraph g;
  g.set_top(g.AddNode("x"));
  CHECK_THROWS_AS(OracleTransition(Configuration::Initial(0), g, Alignment(1)), AmrError);
}

TEST_CASE("unaligned nodes are skipped and counted") {
  AmrGraph g;
  const int p = g.AddNode("possible-01");
  const int s = g.AddNode("sleep-01");
  g.AddEdge(p, ":ARG1", s);
  g.set_top(p);
  Alignment a(2);
  a.Set(s, 1);
  const OracleResult r = OracleRun(Sentence::FromTokens({"sleeps"}), g, a);
  CHECK(r.score.unaligned_nodes == 1);
  CHECK(r.score.gold_nodes == 2);
  CHECK(r.score.precision() == 1.0);
  CHECK(r.score.recall() < 1.0);
}

TEST_CASE("oracle precision is perfect on random aligned graphs") {
  std::mt19937_64 rng(5);
  for (int run = 0; run < 300; ++run) {
    const testing::AlignedSample s = testing::RandomAlignedGraph(rng, 9);
    const OracleResult r = OracleRun(s.sentence, s.graph, s.alignment, false);
    CAPTURE(SerializePenman(s.graph));
    CHECK(r.score.built_edges == r.score.correct_edges);
    CHECK(r.score.correct_edges == RecoveredEdges(r, s.graph));
    CHECK(r.score.gold_edges == s.graph.num_edges() + 1);
    CHECK(r.steps.size() <=
          static_cast<size_t>(TransitionBudget(s.sentence.size(), s.graph.num_nodes())));
  }
}

TEST_CASE("oracle recall is perfect on projective sibling graphs") {
  std::mt19937_64 rng(9);
  int with_reentrancy = 0;
  for (int run = 0; run < 300; ++run) {
    const testing::AlignedSample s = testing::ProjectiveSiblingGraph(rng, 10);
    const OracleResult r = OracleRun(s.sentence, s.graph, s.alignment, false);
    CAPTURE(SerializePenman(s.graph));
    CHECK(r.score.precision() == 1.0);
    CHECK(r.score.recall() == 1.0);
    CHECK(testing::Isomorphic(r.reconstructed, s.graph));
    for (const OracleStep &step : r.steps) with_reentrancy += step.reentrancy_positive;
  }
  CHECK(with_reentrancy > 20);
}

TEST_CASE("oracle over the toy corpus") {
  OracleScore total;
  for (const testing::ToyItem &item : testing::ToyCorpus()) {
    total += OracleRun(item.sentence, item.graph, item.alignment, false).score;
  }
  CHECK(total.precision() == 1.0);
  // Control subjects: the embedded verb's :ARG0 points left of its parent.
  int control_edges = 0;
  int gold_edges = 0;
  for (const testing::ToyItem &item : testing::ToyCorpus()) {
    gold_edges += item.graph.num_edges() + 1;
    for (int v = 0; v < item.graph.num_nodes(); ++v) {
      if (item.graph.in_edges(v).size() == 2) ++control_edges;
    }
  }
  CHECK(total.gold_edges == gold_edges);
  CHECK(total.correct_edges == gold_edges - control_edges);
}

TEST_CASE("training data extraction") {
  const std::vector<Instance> instances = testing::ToyInstances();
  const TrainingData d = ExtractTrainingData({instances.front()});
  CHECK(d.errors.empty());
  CHECK(d.transitions.size() == 10);
  CHECK(d.labels.size() == 2);
  CHECK(d.shifts.size() == 5);
  std::vector<std::string> actions;
  for (const Example &e : d.transitions) actions.push_back(e.label);
  CHECK(actions == std::vector<std::string>{"Shift", "Shift", "Shift", "LArc", "RArc",
                                            "Shift", "Shift", "RArc", "Reduce",
                                            "Reduce"});
  CHECK(d.labels[0].label == ":op1");
  CHECK(d.labels[1].label == ":op2");

  const TrainingData all = ExtractTrainingData(instances);
  CHECK(all.errors.empty());
  size_t steps = 0;
  for (const Instance &inst : instances) {
    steps += OracleRun(inst.sentence, *inst.graph, *inst.alignment, false).steps.size();
  }
  CHECK(all.transitions.size() == steps);
  for (const Example &e : all.reentrancies) {
    CHECK((e.label == kReentrancyYes || e.label == kReentrancyNo));
  }
}
