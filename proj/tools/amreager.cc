#include <iostream>

#include "CLI11.hpp"
#include "amreager/commands.h"

int main(int argc, char **argv) {
  using namespace amreager;
  CLI::App app{"Transition-based AMR parser"};
  app.require_subcommand(1);

  PreprocessOptions pre;
  CLI::App *preprocess = app.add_subcommand("preprocess", "collapse entities and re-index alignments");
  preprocess->add_option("--corpus", pre.corpus, "AMR corpus")->required()->check(CLI::ExistingFile);
  preprocess->add_option("--annotations", pre.annotations, "annotation sidecar (JSON lines)")
      ->check(CLI::ExistingFile);
  preprocess->add_option("--out", pre.out, "output bundle")->required();
  preprocess->add_option("--negation-lexicon", pre.negation_lexicon, "extra negation words")
      ->check(CLI::ExistingFile);

  TrainOptions train;
  CLI::App *train_cmd = app.add_subcommand("train", "train the parser models");
  train_cmd->add_option("--corpus", train.corpus, "aligned training bundle")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--annotations", train.annotations, "annotation sidecar")
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--dev", train.dev, "aligned dev bundle")->check(CLI::ExistingFile);
  train_cmd->add_option("--embeddings", train.embeddings, "pretrained word vectors")
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--out", train.out, "model directory")->required();
  train_cmd->add_option("--arity-table", train.arity_table, "frame arity table")
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--epochs", train.config.epochs, "training epochs")->capture_default_str();
  train_cmd->add_option("--seed", train.config.seed, "random seed")->capture_default_str();

  ParseCommandOptions parse;
  CLI::App *parse_cmd = app.add_subcommand("parse", "parse sentences");
  parse_cmd->add_option("--model", parse.model, "model directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  parse_cmd->add_option("--corpus", parse.input, "sentences (AMR blocks or one per line)")
      ->required()
      ->check(CLI::ExistingFile);
  parse_cmd->add_option("--annotations", parse.annotations, "annotation sidecar")
      ->check(CLI::ExistingFile);
  parse_cmd->add_option("--out", parse.out, "output AMR file (default stdout)");

  EvaluateOptions eval;
  std::vector<std::string> np_pair;
  CLI::App *eval_cmd = app.add_subcommand("evaluate", "score predicted AMRs against gold");
  eval_cmd->add_option("pred", eval.pred, "predicted AMRs")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("gold", eval.gold, "gold AMRs")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--restarts", eval.restarts, "Smatch restarts")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--seed", eval.seed, "random seed")->capture_default_str();
  eval_cmd->add_option("--np-corpus", np_pair, "predicted and gold NP corpora")
      ->expected(2)
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--json", eval.json_out, "write the report as JSON");

  OracleOptions oracle;
  CLI::App *oracle_cmd = app.add_subcommand("oracle", "run the oracle on an aligned bundle");
  oracle_cmd->add_option("--corpus", oracle.corpus, "aligned bundle")
      ->required()
      ->check(CLI::ExistingFile);
  oracle_cmd->add_option("--annotations", oracle.annotations, "annotation sidecar")
      ->check(CLI::ExistingFile);
  oracle_cmd->add_flag("--trace", oracle.trace, "print the transition sequence");
  oracle_cmd->add_option("--json", oracle.json_out, "write the report as JSON");

  StatsOptions stats;
  CLI::App *stats_cmd = app.add_subcommand("stats", "projectivity and reentrancy statistics");
  stats_cmd->add_option("--corpus", stats.corpus, "aligned bundle")
      ->required()
      ->check(CLI::ExistingFile);
  stats_cmd->add_option("--json", stats.json_out, "write the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*preprocess) return CmdPreprocess(pre, std::cout, std::cerr);
    if (*train_cmd) return CmdTrain(train, std::cout, std::cerr);
    if (*parse_cmd) return CmdParse(parse, std::cout, std::cerr);
    if (*eval_cmd) {
      if (np_pair.size() == 2) {
        eval.np_pred = np_pair[0];
        eval.np_gold = np_pair[1];
      }
      return CmdEvaluate(eval, std::cout, std::cerr);
    }
    if (*oracle_cmd) return CmdOracle(oracle, std::cout, std::cerr);
    if (*stats_cmd) return CmdStats(stats, std::cout, std::cerr);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
