#ifndef AMREAGER_PARSER_H_
#define AMREAGER_PARSER_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "amreager/corpus.h"
#include "amreager/embeddings.h"
#include "amreager/label_rules.h"
#include "amreager/model.h"
#include "amreager/oracle.h"
#include "amreager/phrase_table.h"
#include "amreager/transition.h"
#include "json.hpp"

namespace amreager {

extern const char kReentrancyYes[];
extern const char kReentrancyNo[];
extern const char kFallbackLabel[];  // ":mod"

// Transition classes in Action order.
const std::vector<std::string> &ActionClasses();

struct ParserModels {
  FeedForwardModel transition;
  std::optional<FeedForwardModel> label;       // absent: every arc is :mod
  std::optional<FeedForwardModel> reentrancy;  // absent: never fires
  PhraseTable phrase_table;
  ArityTable arity;
  bool use_hooks = true;

  // transition/, label/, reentrancy/, phrase_table.tsv, arity.tsv
  void Save(const std::string &dir) const;
  static ParserModels Load(const std::string &dir);
};

// Highest-scoring legal transition with its fragment or labels filled in.
// Hook warnings are appended to warnings when given.
Transition PredictTransition(const ParserModels &models, const Configuration &c,
                             const Sentence &s,
                             std::vector<std::string> *warnings = nullptr);

// Best label for src -> dst among the labeler's classes allowed by the rules;
// the fallback label when none is.
std::string PredictLabel(const ParserModels &models, const Configuration &c,
                         const Sentence &s, int first, int second, Action kind,
                         int src, int dst);

struct SentenceParse {
  ParseResult result;
  std::vector<std::string> warnings;
};

SentenceParse ParseSentence(const ParserModels &models, const Sentence &s,
                            const ParseOptions &options = {});

// Results in input order; threads as in WorkerCount.
std::vector<SentenceParse> ParseAll(const ParserModels &models,
                                    const std::vector<Sentence> &sentences,
                                    const ParseOptions &options = {},
                                    int threads = 0);

// Oracle training data for the three classifiers and the phrase table.
struct TrainingData {
  std::vector<Example> transitions;
  std::vector<Example> labels;
  std::vector<Example> reentrancies;
  std::vector<std::pair<std::string, Fragment>> shifts;  // token, gold fragment
  OracleScore oracle;
  std::vector<std::string> errors;  // "id: message"
};

// Instances without a graph or alignment are reported as errors.
TrainingData ExtractTrainingData(const std::vector<Instance> &instances);

struct TrainReport {
  std::vector<EpochLog> transition_log, label_log, reentrancy_log;
  OracleScore oracle;
  int transition_examples = 0, label_examples = 0, reentrancy_examples = 0;
  std::vector<std::string> errors;
  nlohmann::json OracleJson() const;
  std::string LogText() const;
};

ParserModels TrainParser(const std::vector<Instance> &train,
                         const std::vector<Instance> *dev,
                         const TrainConfig &config,
                         const EmbeddingTable *pretrained, TrainReport *report);

}  // namespace amreager

#endif  // AMREAGER_PARSER_H_
