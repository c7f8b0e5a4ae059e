#include "amreager/corpus.h"

#include <fstream>
#include <sstream>

#include "amreager/penman.h"

namespace amreager {

std::vector<std::string> SplitWhitespace(const std::string &s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

namespace {

std::string Trim(const std::string &s) {
  const size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void ParseComment(const std::string &line, AmrBlock *block) {
  std::string body = Trim(line.substr(1));
  if (body.rfind("::", 0) != 0) {
    block->comments.push_back(body);
    return;
  }
  if (body.rfind("::annotation ", 0) == 0) {
    block->annotation = nlohmann::json::parse(body.substr(13));
    return;
  }
  size_t pos = 0;
  while (pos < body.size()) {
    size_t next = body.find(" ::", pos);
    if (next == std::string::npos) next = body.size();
    const std::string item = body.substr(pos + 2, next - pos - 2);
    pos = next + 1;
    const size_t space = item.find(' ');
    const std::string key = item.substr(0, space);
    const std::string value =
        space == std::string::npos ? "" : Trim(item.substr(space + 1));
    if (key == "id") {
      block->id = value;
    } else if (key == "snt") {
      block->snt = value;
    } else if (key == "tok") {
      block->tok = value;
    } else if (key == "alignments") {
      // JAMR appends "::annotator ..." after the spans.
      block->alignments = value;
    } else {
      block->extra.push_back({key, value});
    }
  }
}

}  // namespace

std::vector<AmrBlock> ReadAmrBlocks(std::istream &in) {
  std::vector<AmrBlock> blocks;
  AmrBlock current;
  bool open = false;
  auto flush = [&]() {
    if (!open) return;
    if (current.id.empty()) current.id = std::to_string(blocks.size() + 1);
    current.penman = Trim(current.penman);
    blocks.push_back(std::move(current));
    current = AmrBlock();
    open = false;
  };
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = Trim(line);
    if (t.empty()) {
      flush();
      continue;
    }
    open = true;
    if (t[0] == '#') {
      ParseComment(t, &current);
    } else {
      current.penman += line + "\n";
    }
  }
  flush();
  return blocks;
}

std::vector<AmrBlock> ReadAmrFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw AmrError("cannot open " + path);
  return ReadAmrBlocks(in);
}

void WriteAmrBlock(std::ostream &out, const AmrBlock &block) {
  out << "# ::id " << block.id << "\n";
  if (!block.snt.empty()) out << "# ::snt " << block.snt << "\n";
  if (!block.tok.empty()) out << "# ::tok " << block.tok << "\n";
  if (block.alignments) out << "# ::alignments " << *block.alignments << "\n";
  for (const auto &[key, value] : block.extra) {
    out << "# ::" << key << " " << value << "\n";
  }
  for (const std::string &c : block.comments) out << "# " << c << "\n";
  if (block.annotation) {
    out << "# ::annotation " << block.annotation->dump() << "\n";
  }
  if (!block.penman.empty()) out << block.penman << "\n";
  out << "\n";
}

std::vector<nlohmann::json> ReadAnnotationFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw AmrError("cannot open " + path);
  std::vector<nlohmann::json> records;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (Trim(line).empty()) continue;
    try {
      records.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception &e) {
      throw AmrError(path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return records;
}

LoadResult BuildInstances(const std::vector<AmrBlock> &blocks,
                          const std::vector<nlohmann::json> *sidecar) {
  LoadResult result;
  std::map<std::string, const nlohmann::json *> by_id;
  bool keyed = false;
  if (sidecar) {
    for (const auto &record : *sidecar) {
      if (record.contains("id")) {
        keyed = true;
        by_id[record.at("id").get<std::string>()] = &record;
      }
    }
  }
  for (size_t k = 0; k < blocks.size(); ++k) {
    const AmrBlock &b = blocks[k];
    Instance inst;
    inst.id = b.id;
    try {
      const nlohmann::json *record = nullptr;
      if (b.annotation) {
        record = &*b.annotation;
      } else if (sidecar && keyed) {
        auto it = by_id.find(b.id);
        if (it != by_id.end()) record = it->second;
      } else if (sidecar && k < sidecar->size()) {
        record = &(*sidecar)[k];
      }
      if (record) {
        inst.sentence = Sentence::FromJson(*record);
        inst.annotated = true;
      } else {
        const std::string text = b.tok.empty() ? b.snt : b.tok;
        const std::vector<std::string> tokens = SplitWhitespace(text);
        if (tokens.empty()) throw AmrError("block has no tokens");
        inst.sentence = Sentence::FromTokens(tokens);
      }
      if (!b.penman.empty()) {
        inst.graph = ParsePenman(b.penman);
        if (b.alignments) {
          std::vector<std::string> warnings;
          inst.alignment = ParseJamrAlignment(*b.alignments, *inst.graph,
                                              &warnings);
          for (const std::string &w : warnings) {
            result.warnings.push_back(b.id + ": " + w);
          }
          for (int v = 0; v < inst.graph->num_nodes(); ++v) {
            if (inst.alignment->token(v) > inst.sentence.size()) {
              throw AmrError("alignment beyond sentence length");
            }
          }
        }
      }
    } catch (const std::exception &e) {
      result.errors.push_back(b.id + ": " + e.what());
      continue;
    }
    result.instances.push_back(std::move(inst));
  }
  return result;
}

}  // namespace amreager
