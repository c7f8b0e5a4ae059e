#include "amreager/parser.h"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "amreager/features.h"
#include "amreager/hooks.h"
#include "amreager/workers.h"

namespace amreager {

namespace fs = std::filesystem;

const char kReentrancyYes[] = "yes";
const char kReentrancyNo[] = "no";
const char kFallbackLabel[] = ":mod";

const std::vector<std::string> &ActionClasses() {
  static const std::vector<std::string> classes = {
      ActionName(Action::kShift), ActionName(Action::kLArc),
      ActionName(Action::kRArc), ActionName(Action::kReduce)};
  return classes;
}

void ParserModels::Save(const std::string &dir) const {
  fs::create_directories(dir);
  transition.Save((fs::path(dir) / "transition").string());
  if (label) label->Save((fs::path(dir) / "label").string());
  if (reentrancy) reentrancy->Save((fs::path(dir) / "reentrancy").string());
  phrase_table.Save((fs::path(dir) / "phrase_table.tsv").string());
  if (arity.size() > 0) arity.Save((fs::path(dir) / "arity.tsv").string());
}

ParserModels ParserModels::Load(const std::string &dir) {
  if (!fs::is_directory(dir)) throw ModelError("no model directory " + dir);
  ParserModels m;
  m.transition = FeedForwardModel::Load((fs::path(dir) / "transition").string());
  if (fs::exists(fs::path(dir) / "label")) {
    m.label = FeedForwardModel::Load((fs::path(dir) / "label").string());
  }
  if (fs::exists(fs::path(dir) / "reentrancy")) {
    m.reentrancy = FeedForwardModel::Load((fs::path(dir) / "reentrancy").string());
  }
  const fs::path table = fs::path(dir) / "phrase_table.tsv";
  if (fs::exists(table)) m.phrase_table = PhraseTable::Load(table.string());
  const fs::path arity = fs::path(dir) / "arity.tsv";
  if (fs::exists(arity)) m.arity = ArityTable::Load(arity.string());
  return m;
}

namespace {

std::string Concept(const Configuration &c, int node) {
  return node == kRootNode ? std::string(kRootSymbol) : c.graph().node(node).label;
}

Fragment ShiftFragment(const ParserModels &models, const Configuration &c,
                       const Sentence &s, std::vector<std::string> *warnings) {
  const int i = c.Buffer(0);
  if (models.use_hooks) {
    HookOutcome hook = ApplyHooks(s.token(i), s.ner(i));
    if (!hook.warning.empty() && warnings) {
      warnings->push_back("token " + std::to_string(i) + ": " + hook.warning);
    }
    if (hook.fragment) return std::move(*hook.fragment);
  }
  return models.phrase_table.Lookup(s.token(i), s.lemma(i), s.pos(i));
}

}  // namespace

std::string PredictLabel(const ParserModels &models, const Configuration &c,
                         const Sentence &s, int first, int second, Action kind,
                         int src, int dst) {
  const std::string src_concept = Concept(c, src);
  const std::string dst_concept = Concept(c, dst);
  if (src == kRootNode) return kTopLabel;
  if (models.label) {
    const FeedForwardModel &m = *models.label;
    const Eigen::VectorXd p =
        m.Forward(ExtractLabelFeatures(c, s, first, second, kind));
    int best = -1;
    for (int k = 0; k < p.size(); ++k) {
      if (best >= 0 && p[k] <= p[best]) continue;
      if (LabelAllowed(m.classes()[k], src_concept, dst_concept, &models.arity)) {
        best = k;
      }
    }
    if (best >= 0) return m.classes()[best];
  }
  return kFallbackLabel;
}

Transition PredictTransition(const ParserModels &models, const Configuration &c,
                             const Sentence &s,
                             std::vector<std::string> *warnings) {
  if (c.IsTerminal()) throw AmrError("no transition from a terminal configuration");
  const Eigen::VectorXd p = models.transition.Forward(ExtractTransitionFeatures(c, s));
  const auto &classes = models.transition.classes();
  Action best = Action::kShift;
  double best_score = -2;
  for (int a = 0; a < kNumActions; ++a) {
    const Action action = static_cast<Action>(a);
    if (!c.IsLegal(action)) continue;
    double score = -1;  // legal but unknown to the model
    auto it = std::find(classes.begin(), classes.end(), ActionName(action));
    if (it != classes.end()) score = p[it - classes.begin()];
    if (score > best_score) {
      best_score = score;
      best = action;
    }
  }
  const int s0 = c.Stack(0), s1 = c.Stack(1);
  switch (best) {
    case Action::kShift:
      return Transition::Shift(ShiftFragment(models, c, s, warnings));
    case Action::kLArc:
      return Transition::LArc(
          PredictLabel(models, c, s, s0, s1, Action::kLArc, s0, s1));
    case Action::kRArc:
      return Transition::RArc(
          PredictLabel(models, c, s, s0, s1, Action::kRArc, s1, s0));
    case Action::kReduce:
      break;
  }
  const int w = c.ReentrancyCandidate(s0);
  if (w != kNoNode && models.reentrancy) {
    const FeedForwardModel &m = *models.reentrancy;
    const int yes = m.ClassIndex(kReentrancyYes);
    if (yes >= 0 && m.Forward(ExtractReentrancyFeatures(c, s, w))[yes] >= 0.5) {
      return Transition::Reduce(
          w, PredictLabel(models, c, s, s0, w, Action::kReduce, w, s0));
    }
  }
  return Transition::Reduce();
}

SentenceParse ParseSentence(const ParserModels &models, const Sentence &s,
                            const ParseOptions &options) {
  SentenceParse out;
  out.result = GreedyParse(
      s.size(),
      [&](const Configuration &c) {
        return PredictTransition(models, c, s, &out.warnings);
      },
      options);
  if (out.result.budget_exhausted) {
    out.warnings.push_back("transition budget exhausted; stack drained");
  }
  return out;
}

std::vector<SentenceParse> ParseAll(const ParserModels &models,
                                    const std::vector<Sentence> &sentences,
                                    const ParseOptions &options, int threads) {
  std::vector<SentenceParse> out(sentences.size());
  ParallelFor(sentences.size(), threads, [&](size_t i) {
    out[i] = ParseSentence(models, sentences[i], options);
  });
  return out;
}

TrainingData ExtractTrainingData(const std::vector<Instance> &instances) {
  TrainingData data;
  for (const Instance &inst : instances) {
    if (!inst.graph || !inst.alignment) {
      data.errors.push_back(inst.id + ": no graph or alignment");
      continue;
    }
    OracleResult run;
    try {
      run = OracleRun(inst.sentence, *inst.graph, *inst.alignment, true);
    } catch (const std::exception &e) {
      data.errors.push_back(inst.id + ": " + e.what());
      continue;
    }
    data.oracle += run.score;
    const Sentence &s = inst.sentence;
    for (const OracleStep &step : run.steps) {
      const Configuration &c = step.config;
      const Action a = step.gold_action.action;
      data.transitions.push_back({ExtractTransitionFeatures(c, s), ActionName(a)});
      if (a == Action::kShift) {
        data.shifts.emplace_back(s.token(c.Buffer(0)), step.gold_action.fragment);
      } else if ((a == Action::kLArc || a == Action::kRArc) && step.edge_label) {
        data.labels.push_back({ExtractLabelFeatures(c, s, a), *step.edge_label});
      } else if (a == Action::kReduce && step.reentrancy_candidate != kNoNode) {
        const int w = step.reentrancy_candidate;
        data.reentrancies.push_back(
            {ExtractReentrancyFeatures(c, s, w),
             step.reentrancy_positive ? kReentrancyYes : kReentrancyNo});
        if (step.reentrancy_positive && step.edge_label) {
          data.labels.push_back(
              {ExtractLabelFeatures(c, s, c.Stack(0), w, Action::kReduce),
               *step.edge_label});
        }
      }
    }
  }
  return data;
}

nlohmann::json TrainReport::OracleJson() const {
  return {{"oracle_precision", oracle.precision()},
          {"oracle_recall", oracle.recall()},
          {"gold_edges", oracle.gold_edges},
          {"built_edges", oracle.built_edges},
          {"correct_edges", oracle.correct_edges},
          {"gold_nodes", oracle.gold_nodes},
          {"unaligned_nodes", oracle.unaligned_nodes},
          {"errors", errors}};
}

std::string TrainReport::LogText() const {
  std::ostringstream out;
  auto section = [&](const char *name, const std::vector<EpochLog> &log, int n) {
    out << "# " << name << " (" << n << " examples)\n";
    for (const EpochLog &e : log) {
      out << "epoch " << e.epoch << "\tloss " << e.loss << "\ttrain_acc "
          << e.train_accuracy;
      if (e.dev_accuracy) out << "\tdev_acc " << *e.dev_accuracy;
      out << '\n';
    }
  };
  section("transition", transition_log, transition_examples);
  section("label", label_log, label_examples);
  section("reentrancy", reentrancy_log, reentrancy_examples);
  return out.str();
}

ParserModels TrainParser(const std::vector<Instance> &train,
                         const std::vector<Instance> *dev,
                         const TrainConfig &config,
                         const EmbeddingTable *pretrained, TrainReport *report) {
  TrainReport local;
  TrainReport &r = report ? *report : local;
  TrainingData data = ExtractTrainingData(train);
  r.errors = data.errors;
  r.oracle = data.oracle;
  r.transition_examples = static_cast<int>(data.transitions.size());
  r.label_examples = static_cast<int>(data.labels.size());
  r.reentrancy_examples = static_cast<int>(data.reentrancies.size());
  if (data.transitions.empty()) {
    throw ModelError("no oracle transitions: supply aligned AMRs (JAMR alignments)");
  }
  TrainingData dev_data;
  if (dev) dev_data = ExtractTrainingData(*dev);

  ParserModels models;
  models.phrase_table = BuildPhraseTable(data.shifts);
  TrainResult t = Train(TransitionTemplate(), data.transitions,
                        dev ? &dev_data.transitions : nullptr, config, pretrained,
                        ActionClasses());
  models.transition = std::move(t.model);
  r.transition_log = std::move(t.log);
  if (!data.labels.empty()) {
    TrainResult l = Train(LabelTemplate(), data.labels,
                          dev ? &dev_data.labels : nullptr, config, pretrained);
    models.label = std::move(l.model);
    r.label_log = std::move(l.log);
  }
  const bool any_positive = std::any_of(
      data.reentrancies.begin(), data.reentrancies.end(),
      [](const Example &e) { return e.label == kReentrancyYes; });
  if (any_positive) {
    TrainResult re = Train(ReentrancyTemplate(), data.reentrancies,
                           dev ? &dev_data.reentrancies : nullptr, config,
                           pretrained, {kReentrancyNo, kReentrancyYes});
    models.reentrancy = std::move(re.model);
    r.reentrancy_log = std::move(re.log);
  }
  return models;
}

}  // namespace amreager
