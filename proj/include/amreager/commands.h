#ifndef AMREAGER_COMMANDS_H_
#define AMREAGER_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "amreager/alignment.h"
#include "amreager/amr_graph.h"
#include "amreager/hooks.h"
#include "amreager/model.h"
#include "amreager/oracle.h"
#include "amreager/sentence.h"

namespace amreager {

// Each command writes results to out and diagnostics to err, and returns
// the process exit code: 0 iff there were no per-record errors.

struct PreprocessOptions {
  std::string corpus;
  std::string annotations;  // optional sidecar
  std::string out;
  std::string negation_lexicon;  // optional, extends the seed list
};
int CmdPreprocess(const PreprocessOptions &options, std::ostream &out,
                  std::ostream &err);

struct TrainOptions {
  std::string corpus;
  std::string annotations;
  std::string dev;
  std::string embeddings;
  std::string out;  // model directory
  std::string arity_table;
  TrainConfig config;
};
int CmdTrain(const TrainOptions &options, std::ostream &out, std::ostream &err);

struct ParseCommandOptions {
  std::string model;
  std::string input;
  std::string annotations;
  std::string out;  // "-" or empty: the out stream
  int threads = 0;
};
int CmdParse(const ParseCommandOptions &options, std::ostream &out,
             std::ostream &err);

struct EvaluateOptions {
  std::string pred;
  std::string gold;
  std::string np_pred;
  std::string np_gold;
  int restarts = 4;
  uint64_t seed = 42;
  std::string json_out;
  int threads = 0;
};
int CmdEvaluate(const EvaluateOptions &options, std::ostream &out,
                std::ostream &err);

struct OracleOptions {
  std::string corpus;
  std::string annotations;
  bool trace = false;
  std::string json_out;
};
int CmdOracle(const OracleOptions &options, std::ostream &out, std::ostream &err);

struct StatsOptions {
  std::string corpus;
  std::string json_out;
};
int CmdStats(const StatsOptions &options, std::ostream &out, std::ostream &err);

// Rows "action<TAB>stack<TAB>buffer<TAB>edges" for the oracle's transitions,
// preceded by the header and the initial configuration ("-").
std::vector<std::string> OracleTraceRows(const Sentence &s, const AmrGraph &gold,
                                         const Alignment &a);

// Points every :polarity "-" constant at a lexicon word when its current
// token is not one; the candidate nearest the parent's token wins, ties to
// the left. Returns the number of nodes moved.
int RealignNegations(const AmrGraph &g, const Sentence &s,
                     const NegationLexicon &lexicon, Alignment *a);

// Alignment over the collapsed sentence; old_to_new as from CollapseEntities.
Alignment RemapAlignment(const Alignment &a, const std::vector<int> &old_to_new);

}  // namespace amreager

#endif  // AMREAGER_COMMANDS_H_
