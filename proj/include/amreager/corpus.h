#ifndef AMREAGER_CORPUS_H_
#define AMREAGER_CORPUS_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amreager/alignment.h"
#include "amreager/amr_graph.h"
#include "amreager/sentence.h"
#include "json.hpp"

namespace amreager {

// One blank-line separated block of an AMR corpus file.
struct AmrBlock {
  std::string id;
  std::string snt;
  std::string tok;
  std::optional<std::string> alignments;
  std::optional<nlohmann::json> annotation;
  std::vector<std::pair<std::string, std::string>> extra;  // other ::keys
  std::vector<std::string> comments;  // comment lines without ::keys
  std::string penman;                 // may be empty
};

// Blocks without ::id get sequential ids "1", "2", ...
std::vector<AmrBlock> ReadAmrBlocks(std::istream &in);
std::vector<AmrBlock> ReadAmrFile(const std::string &path);
void WriteAmrBlock(std::ostream &out, const AmrBlock &block);

// One JSON object per line.
std::vector<nlohmann::json> ReadAnnotationFile(const std::string &path);

struct Instance {
  std::string id;
  Sentence sentence;
  bool annotated = false;  // sentence carries tags and dependencies
  std::optional<AmrGraph> graph;
  std::optional<Alignment> alignment;
};

struct LoadResult {
  std::vector<Instance> instances;
  std::vector<std::string> errors;  // "id: message"
  std::vector<std::string> warnings;
};

// Sentences come from the block's ::annotation, then the sidecar (by id when
// records carry one, else by position), then the ::tok or ::snt line.
// Blocks whose PENMAN fails to parse are reported and skipped.
LoadResult BuildInstances(const std::vector<AmrBlock> &blocks,
                          const std::vector<nlohmann::json> *sidecar);

std::vector<std::string> SplitWhitespace(const std::string &s);

}  // namespace amreager

#endif  // AMREAGER_CORPUS_H_
