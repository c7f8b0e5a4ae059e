#include "amreager/commands.h"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "amreager/corpus.h"
#include "amreager/embeddings.h"
#include "amreager/graph_analysis.h"
#include "amreager/metrics.h"
#include "amreager/parser.h"
#include "amreager/penman.h"

namespace amreager {

namespace {

const char kEmptyParse[] = "(a / amr-empty)";

std::string Lower(std::string s) {
  for (char &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string Join(const std::vector<std::string> &items, const std::string &sep) {
  std::string out;
  for (size_t k = 0; k < items.size(); ++k) {
    if (k) out += sep;
    out += items[k];
  }
  return out;
}

void WriteFile(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw AmrError("cannot write " + path);
  out << text;
}

// Sidecar records keyed by "id" when any record has one, else positional.
class Sidecar {
 public:
  Sidecar() = default;
  explicit Sidecar(const std::string &path) : loaded_(!path.empty()) {
    if (!loaded_) return;
    records_ = ReadAnnotationFile(path);
    for (const auto &r : records_) {
      if (r.contains("id")) by_id_[r.at("id").get<std::string>()] = &r;
    }
  }

  bool loaded() const { return loaded_; }

  // The record for block k, or nullptr with *error set.
  const nlohmann::json *Find(const AmrBlock &b, size_t k,
                             std::string *error) const {
    if (!by_id_.empty()) {
      auto it = by_id_.find(b.id);
      if (it != by_id_.end()) return it->second;
      *error = "no annotation record with this id";
      return nullptr;
    }
    if (k < records_.size()) return &records_[k];
    *error = "annotation sidecar has fewer records than the corpus";
    return nullptr;
  }

 private:
  bool loaded_ = false;
  std::vector<nlohmann::json> records_;
  std::map<std::string, const nlohmann::json *> by_id_;
};

std::vector<std::string> BlockTokens(const AmrBlock &b) {
  return SplitWhitespace(b.tok.empty() ? b.snt : b.tok);
}

void ReportErrors(const std::vector<std::string> &errors, std::ostream &err) {
  for (const std::string &e : errors) err << "error: " << e << '\n';
}

bool IsPlainText(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const size_t b = line.find_first_not_of(" \t\r");
    if (b != std::string::npos && (line[b] == '#' || line[b] == '(')) return false;
  }
  return true;
}

// Plain input: one sentence per non-blank line.
std::vector<AmrBlock> ReadParseInput(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw AmrError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (!IsPlainText(text)) {
    std::istringstream blocks(text);
    return ReadAmrBlocks(blocks);
  }
  std::vector<AmrBlock> out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (SplitWhitespace(line).empty()) continue;
    AmrBlock b;
    b.id = std::to_string(out.size() + 1);
    b.snt = Join(SplitWhitespace(line), " ");
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<Instance> LoadInstances(const std::string &corpus,
                                    const std::string &annotations,
                                    std::vector<std::string> *errors,
                                    std::ostream &err) {
  const std::vector<AmrBlock> blocks = ReadAmrFile(corpus);
  std::vector<nlohmann::json> sidecar;
  if (!annotations.empty()) sidecar = ReadAnnotationFile(annotations);
  LoadResult loaded =
      BuildInstances(blocks, annotations.empty() ? nullptr : &sidecar);
  for (const std::string &w : loaded.warnings) err << "warning: " << w << '\n';
  errors->insert(errors->end(), loaded.errors.begin(), loaded.errors.end());
  return std::move(loaded.instances);
}

std::string Percent2(double x) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << 100.0 * x;
  return out.str();
}

}  // namespace

Alignment RemapAlignment(const Alignment &a, const std::vector<int> &old_to_new) {
  Alignment out(a.num_nodes());
  for (int v = 0; v < a.num_nodes(); ++v) {
    const int t = a.token(v);
    if (t <= 0) continue;
    if (t >= static_cast<int>(old_to_new.size())) {
      throw AmrError("alignment token " + std::to_string(t - 1) +
                     " beyond sentence length");
    }
    out.Set(v, old_to_new[t]);
  }
  return out;
}

int RealignNegations(const AmrGraph &g, const Sentence &s,
                     const NegationLexicon &lexicon, Alignment *a) {
  std::vector<int> candidates;
  for (int i = 1; i <= s.size(); ++i) {
    if (lexicon.Contains(s.token(i)) || lexicon.Contains(s.lemma(i))) {
      candidates.push_back(i);
    }
  }
  if (candidates.empty()) return 0;
  int moved = 0;
  for (const Edge &e : g.edges()) {
    if (e.label != ":polarity" || !g.node(e.dst).is_constant ||
        g.node(e.dst).label != "-") {
      continue;
    }
    const int current = a->token(e.dst);
    if (current > 0 && current <= s.size() &&
        (lexicon.Contains(s.token(current)) || lexicon.Contains(s.lemma(current)))) {
      continue;
    }
    const int anchor = a->token(e.src);
    int best = candidates.front();
    if (anchor > 0) {
      for (int i : candidates) {
        if (std::abs(i - anchor) < std::abs(best - anchor)) best = i;
      }
    }
    if (best != current) {
      a->Set(e.dst, best);
      ++moved;
    }
  }
  return moved;
}

int CmdPreprocess(const PreprocessOptions &options, std::ostream &out,
                  std::ostream &err) {
  const std::vector<AmrBlock> blocks = ReadAmrFile(options.corpus);
  const Sidecar sidecar(options.annotations);
  NegationLexicon lexicon;
  if (!options.negation_lexicon.empty()) lexicon.AddFile(options.negation_lexicon);
  std::ofstream file(options.out);
  if (!file) throw AmrError("cannot write " + options.out);
  std::vector<std::string> errors;
  int collapsed = 0, realigned = 0;
  for (size_t k = 0; k < blocks.size(); ++k) {
    AmrBlock b = blocks[k];
    try {
      const nlohmann::json *record = b.annotation ? &*b.annotation : nullptr;
      std::string missing;
      if (!record && sidecar.loaded()) {
        record = sidecar.Find(b, k, &missing);
        if (!record) throw AmrError(missing);
      }
      Sentence s = record ? Sentence::FromJson(*record)
                          : Sentence::FromTokens(BlockTokens(b));
      s.Validate();
      const std::vector<std::string> original = BlockTokens(b);
      if (record && !b.tok.empty() && original != s.tokens()) {
        throw AmrError("::tok line does not match the annotation tokens");
      }
      std::vector<int> old_to_new;
      Sentence c = CollapseEntities(s, &old_to_new);
      const bool changed = c.size() != s.size();
      collapsed += changed;
      if (changed || b.tok.empty()) b.tok = Join(c.tokens(), " ");
      if (record) b.annotation = c.ToJson();
      if (!b.penman.empty()) {
        const AmrGraph g = ParsePenman(b.penman);
        Alignment a(g.num_nodes());
        if (b.alignments) {
          std::vector<std::string> warnings;
          a = ParseJamrAlignment(*b.alignments, g, &warnings);
          for (const std::string &w : warnings) err << "warning: " << b.id << ": " << w << '\n';
        }
        Alignment remapped = RemapAlignment(a, old_to_new);
        const int moved = RealignNegations(g, c, lexicon, &remapped);
        realigned += moved;
        if (moved > 0 || (changed && b.alignments)) {
          b.alignments = FormatJamrAlignment(remapped, g);
        }
      }
    } catch (const std::exception &e) {
      errors.push_back(b.id + ": " + e.what());
      continue;
    }
    WriteAmrBlock(file, b);
  }
  ReportErrors(errors, err);
  out << "preprocessed " << blocks.size() - errors.size() << " of "
      << blocks.size() << " blocks; collapsed entities in " << collapsed
      << "; re-aligned negations " << realigned << '\n';
  return errors.empty() ? 0 : 1;
}

int CmdTrain(const TrainOptions &options, std::ostream &out, std::ostream &err) {
  options.config.Validate();
  std::vector<std::string> errors;
  std::vector<Instance> train =
      LoadInstances(options.corpus, options.annotations, &errors, err);
  const bool aligned = std::any_of(train.begin(), train.end(),
                                   [](const Instance &i) { return i.alignment.has_value(); });
  if (!aligned) {
    ReportErrors(errors, err);
    err << "error: " << options.corpus
        << " has no alignments; supply JAMR alignments (# ::alignments lines)\n";
    return 2;
  }
  std::optional<std::vector<Instance>> dev;
  if (!options.dev.empty()) {
    std::vector<std::string> dev_errors;
    dev = LoadInstances(options.dev, "", &dev_errors, err);
    for (const std::string &e : dev_errors) errors.push_back("dev " + e);
  }
  std::optional<EmbeddingTable> pretrained;
  if (!options.embeddings.empty()) {
    pretrained = LoadEmbeddings(options.embeddings, options.config.word_dim,
                                options.config.seed);
  }
  TrainReport report;
  ParserModels models = TrainParser(train, dev ? &*dev : nullptr, options.config,
                                    pretrained ? &*pretrained : nullptr, &report);
  if (!options.arity_table.empty()) {
    models.arity = ArityTable::Load(options.arity_table);
  }
  std::filesystem::create_directories(options.out);
  models.Save(options.out);
  const std::filesystem::path dir(options.out);
  WriteFile((dir / "training_log.txt").string(), report.LogText());
  WriteFile((dir / "oracle_report.json").string(), report.OracleJson().dump(2) + "\n");
  errors.insert(errors.end(), report.errors.begin(), report.errors.end());
  ReportErrors(errors, err);
  out << "trained on " << train.size() << " sentences: "
      << report.transition_examples << " transition, " << report.label_examples
      << " label, " << report.reentrancy_examples << " reentrancy examples\n";
  if (!report.transition_log.empty()) {
    out << "transition train accuracy "
        << Percent2(report.transition_log.back().train_accuracy) << "%\n";
  }
  out << "oracle precision " << Percent2(report.oracle.precision()) << "% recall "
      << Percent2(report.oracle.recall()) << "%\n";
  out << "model written to " << options.out << '\n';
  return errors.empty() ? 0 : 1;
}

int CmdParse(const ParseCommandOptions &options, std::ostream &out,
             std::ostream &err) {
  const ParserModels models = ParserModels::Load(options.model);
  const std::vector<AmrBlock> blocks = ReadParseInput(options.input);
  const Sidecar sidecar(options.annotations);
  std::vector<std::string> errors;
  std::vector<size_t> kept;
  std::vector<Sentence> sentences;
  bool warned_tokens_only = false;
  for (size_t k = 0; k < blocks.size(); ++k) {
    const AmrBlock &b = blocks[k];
    try {
      const nlohmann::json *record = b.annotation ? &*b.annotation : nullptr;
      std::string missing;
      if (!record && sidecar.loaded()) {
        record = sidecar.Find(b, k, &missing);
        if (!record) throw AmrError(missing);
      }
      Sentence s;
      if (record) {
        s = CollapseEntities(Sentence::FromJson(*record));
      } else {
        s = Sentence::FromTokens(BlockTokens(b));
        if (!warned_tokens_only) {
          err << "warning: no annotations; parsing from tokens only\n";
          warned_tokens_only = true;
        }
      }
      s.Validate();
      sentences.push_back(std::move(s));
      kept.push_back(k);
    } catch (const std::exception &e) {
      errors.push_back(b.id + ": " + e.what());
    }
  }
  const std::vector<SentenceParse> parses =
      ParseAll(models, sentences, ParseOptions{}, options.threads);

  std::ofstream file;
  const bool to_file = !options.out.empty() && options.out != "-";
  if (to_file) {
    file.open(options.out);
    if (!file) throw AmrError("cannot write " + options.out);
  }
  std::ostream &sink = to_file ? file : out;
  PenmanOptions penman;
  penman.keep_variables = false;
  for (size_t j = 0; j < kept.size(); ++j) {
    const AmrBlock &in = blocks[kept[j]];
    AmrBlock b;
    b.id = in.id;
    b.snt = in.snt.empty() ? Join(BlockTokens(in), " ") : in.snt;
    b.tok = Join(sentences[j].tokens(), " ");
    for (const std::string &w : parses[j].warnings) err << "warning: " << b.id << ": " << w << '\n';
    const AmrGraph &g = parses[j].result.graph;
    if (!g.empty()) {
      try {
        b.penman = SerializePenman(g, penman);
      } catch (const AmrError &e) {
        err << "warning: " << b.id << ": " << e.what() << '\n';
      }
    }
    if (b.penman.empty()) {
      b.penman = kEmptyParse;
      b.extra.push_back({"flags", "empty-parse"});
    }
    if (parses[j].result.budget_exhausted) b.extra.push_back({"flags", "budget-drain"});
    WriteAmrBlock(sink, b);
  }
  ReportErrors(errors, err);
  return errors.empty() ? 0 : 1;
}

int CmdEvaluate(const EvaluateOptions &options, std::ostream &out,
                std::ostream &err) {
  std::vector<std::string> errors;
  auto load_pair = [&](const std::string &pred_path, const std::string &gold_path,
                       std::vector<AmrGraph> *pred, std::vector<AmrGraph> *gold) {
    std::vector<AmrBlock> p = ReadAmrFile(pred_path);
    const std::vector<AmrBlock> g = ReadAmrFile(gold_path);
    std::map<std::string, size_t> pred_index;
    for (size_t k = 0; k < p.size(); ++k) pred_index[p[k].id] = k;
    std::vector<std::string> offenders;
    for (const AmrBlock &b : g) {
      if (!pred_index.count(b.id)) offenders.push_back("gold id " + b.id + " missing from " + pred_path);
    }
    std::set<std::string> gold_ids;
    for (const AmrBlock &b : g) gold_ids.insert(b.id);
    for (const AmrBlock &b : p) {
      if (!gold_ids.count(b.id)) offenders.push_back("predicted id " + b.id + " missing from " + gold_path);
    }
    if (p.size() != g.size() && offenders.empty()) {
      offenders.push_back("duplicate ids");
    }
    if (!offenders.empty()) {
      throw AmrError("corpora are not aligned: " + Join(offenders, "; "));
    }
    for (const AmrBlock &gb : g) {
      const AmrBlock &pb = p[pred_index.at(gb.id)];
      AmrGraph gg;
      try {
        gg = ParsePenman(gb.penman);
      } catch (const std::exception &e) {
        errors.push_back("gold " + gb.id + ": " + e.what());
        continue;
      }
      AmrGraph pg;
      try {
        pg = ParsePenman(pb.penman);
      } catch (const std::exception &e) {
        errors.push_back("predicted " + pb.id + ": " + e.what());
      }
      pred->push_back(std::move(pg));
      gold->push_back(std::move(gg));
    }
  };
  std::vector<AmrGraph> pred, gold, np_pred, np_gold;
  load_pair(options.pred, options.gold, &pred, &gold);
  const bool np = !options.np_pred.empty() && !options.np_gold.empty();
  if (np) load_pair(options.np_pred, options.np_gold, &np_pred, &np_gold);
  EvalOptions eval;
  eval.restarts = options.restarts;
  eval.seed = options.seed;
  eval.threads = options.threads;
  const MetricReport report = EvaluateSuite(pred, gold, eval, np ? &np_pred : nullptr,
                                            np ? &np_gold : nullptr);
  out << report.ToText();
  if (!options.json_out.empty()) {
    WriteFile(options.json_out, report.ToJson().dump(2) + "\n");
  }
  ReportErrors(errors, err);
  return errors.empty() ? 0 : 1;
}

std::vector<std::string> OracleTraceRows(const Sentence &s, const AmrGraph &gold,
                                         const Alignment &a) {
  Configuration c = Configuration::Initial(s.size());
  std::vector<std::string> edges;
  auto row = [&](const std::string &action) {
    std::vector<std::string> stack, buffer;
    for (int v : c.stack()) stack.push_back(c.NodeName(v));
    for (int k = 0; c.Buffer(k) > 0; ++k) buffer.push_back(Lower(s.token(c.Buffer(k))));
    return action + "\t[" + Join(stack, ",") + "]\t[" + Join(buffer, ",") +
           "]\t{" + Join(edges, ",") + "}";
  };
  std::vector<std::string> rows = {"action\tstack\tbuffer\tedges", row("-")};
  const int budget = TransitionBudget(s.size(), std::max(1, gold.num_nodes()));
  for (int step = 1; !c.IsTerminal(); ++step) {
    if (step > budget) throw AmrError("oracle exceeded the transition budget");
    const Transition t = OracleTransition(c, gold, a);
    const int top_before = c.top_node();
    c.Apply(t);
    if (c.last_edge() >= 0) {
      const Edge &e = c.graph().edges()[c.last_edge()];
      edges.push_back("<" + c.NodeName(e.src) + "," + e.label + "," +
                      c.NodeName(e.dst) + ">");
    } else if (c.top_node() != top_before) {
      edges.push_back("<" + c.NodeName(kRootNode) + "," + kTopLabel + "," +
                      c.NodeName(c.top_node()) + ">");
    }
    rows.push_back(row(ActionName(t.action)));
  }
  return rows;
}

int CmdOracle(const OracleOptions &options, std::ostream &out, std::ostream &err) {
  std::vector<std::string> errors;
  const std::vector<Instance> instances =
      LoadInstances(options.corpus, options.annotations, &errors, err);
  OracleScore total;
  int runs = 0;
  for (const Instance &inst : instances) {
    if (!inst.graph || !inst.alignment) {
      errors.push_back(inst.id + ": " +
                       (inst.graph ? "no alignments; supply JAMR alignments"
                                   : "no AMR graph"));
      continue;
    }
    try {
      const OracleResult r = OracleRun(inst.sentence, *inst.graph, *inst.alignment, false);
      total += r.score;
      ++runs;
      if (options.trace) {
        out << "# ::id " << inst.id << '\n';
        for (const std::string &line :
             OracleTraceRows(inst.sentence, *inst.graph, *inst.alignment)) {
          out << line << '\n';
        }
        out << '\n';
      }
    } catch (const std::exception &e) {
      errors.push_back(inst.id + ": " + e.what());
    }
  }
  out << "oracle over " << runs << " sentences: precision "
      << Percent2(total.precision()) << "% recall " << Percent2(total.recall())
      << "% (" << total.correct_edges << " correct, " << total.built_edges
      << " built, " << total.gold_edges << " gold edges; "
      << total.unaligned_nodes << " of " << total.gold_nodes
      << " nodes unaligned)\n";
  if (!options.json_out.empty()) {
    const nlohmann::json j = {{"sentences", runs},
                              {"precision", total.precision()},
                              {"recall", total.recall()},
                              {"correct_edges", total.correct_edges},
                              {"built_edges", total.built_edges},
                              {"gold_edges", total.gold_edges},
                              {"gold_nodes", total.gold_nodes},
                              {"unaligned_nodes", total.unaligned_nodes},
                              {"errors", errors}};
    WriteFile(options.json_out, j.dump(2) + "\n");
  }
  ReportErrors(errors, err);
  return errors.empty() ? 0 : 1;
}

int CmdStats(const StatsOptions &options, std::ostream &out, std::ostream &err) {
  std::vector<std::string> errors;
  const std::vector<Instance> instances = LoadInstances(options.corpus, "", &errors, err);
  std::vector<AlignedGraph> corpus;
  for (const Instance &inst : instances) {
    if (inst.graph && inst.alignment) {
      corpus.push_back({&*inst.graph, &*inst.alignment});
    } else {
      errors.push_back(inst.id + ": alignments required");
    }
  }
  const StatsReport r = CorpusStats(corpus);
  out << r.ToString();
  if (!options.json_out.empty()) {
    const nlohmann::json j = {
        {"graphs", r.graphs},
        {"edges", r.edges},
        {"checked_edges", r.checked_edges},
        {"nonprojective_edges_pct", r.NonProjectiveEdgePct()},
        {"nonprojective_graphs_pct", r.NonProjectiveGraphPct()},
        {"reentrant_edges_pct", r.ReentrantEdgePct()},
        {"reentrant_graphs_pct", r.ReentrantGraphPct()}};
    WriteFile(options.json_out, j.dump(2) + "\n");
  }
  ReportErrors(errors, err);
  return errors.empty() ? 0 : 1;
}

}  // namespace amreager
