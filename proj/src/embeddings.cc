#include "amreager/embeddings.h"

#include <fstream>
#include <sstream>

#include "amreager/amr_graph.h"
#include "amreager/features.h"

namespace amreager {

Vocab::Vocab() {
  for (const char *s : {kNullSymbol, kUnkSymbol, kRootToken}) Add(s);
}

int Vocab::Add(const std::string &symbol) {
  auto [it, inserted] = index_.emplace(symbol, size());
  if (inserted) symbols_.push_back(symbol);
  return it->second;
}

int Vocab::Id(const std::string &symbol) const {
  auto it = index_.find(symbol);
  return it == index_.end() ? 1 : it->second;
}

void Vocab::Save(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw AmrError("cannot write " + path);
  for (int i = kNumSpecialSymbols; i < size(); ++i) out << symbols_[i] << '\n';
}

Vocab Vocab::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw AmrError("cannot read " + path);
  Vocab v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const int before = v.size();
    if (v.Add(line) != before) throw AmrError("duplicate symbol in " + path + ": " + line);
  }
  return v;
}

std::optional<Eigen::VectorXd> EmbeddingTable::Lookup(
    const std::string &word) const {
  if (!vocab.Contains(word)) return std::nullopt;
  return Eigen::VectorXd(vectors.row(vocab.Id(word)).transpose());
}

EmbeddingTable LoadEmbeddings(const std::string &path, int default_dim,
                              uint64_t seed) {
  std::vector<std::vector<double>> rows;
  EmbeddingTable table;
  int dim = default_dim;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw AmrError("cannot read embeddings " + path);
    std::string line;
    int line_no = 0;
    dim = -1;
    while (std::getline(in, line)) {
      ++line_no;
      std::istringstream fields(line);
      std::string word;
      if (!(fields >> word)) continue;
      std::vector<double> v;
      double x;
      while (fields >> x) v.push_back(x);
      if (!fields.eof()) {
        throw AmrError(path + ":" + std::to_string(line_no) + ": bad number");
      }
      if (dim < 0) dim = static_cast<int>(v.size());
      if (static_cast<int>(v.size()) != dim || dim == 0) {
        throw AmrError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(dim) + " values, found " +
                       std::to_string(v.size()));
      }
      if (table.vocab.Contains(word)) continue;
      table.vocab.Add(word);
      rows.push_back(std::move(v));
    }
    if (dim < 0) dim = default_dim;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-kEmbeddingInitRange,
                                                 kEmbeddingInitRange);
  table.vectors.resize(table.vocab.size(), dim);
  for (int r = 0; r < kNumSpecialSymbols; ++r) {
    for (int k = 0; k < dim; ++k) table.vectors(r, k) = uniform(rng);
  }
  for (size_t r = 0; r < rows.size(); ++r) {
    for (int k = 0; k < dim; ++k) {
      table.vectors(kNumSpecialSymbols + r, k) = rows[r][k];
    }
  }
  return table;
}

}  // namespace amreager
