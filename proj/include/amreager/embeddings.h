#ifndef AMREAGER_EMBEDDINGS_H_
#define AMREAGER_EMBEDDINGS_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace amreager {

// Symbol inventory. Rows 0..2 are always <NULL>, <UNK>, <ROOT>.
class Vocab {
 public:
  Vocab();
  int Add(const std::string &symbol);
  // Row of symbol, the <UNK> row when unknown.
  int Id(const std::string &symbol) const;
  bool Contains(const std::string &symbol) const { return index_.count(symbol) > 0; }
  const std::string &Symbol(int id) const { return symbols_[id]; }
  int size() const { return static_cast<int>(symbols_.size()); }
  const std::vector<std::string> &symbols() const { return symbols_; }

  void Save(const std::string &path) const;
  static Vocab Load(const std::string &path);

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> index_;
};

constexpr int kNumSpecialSymbols = 3;
constexpr double kEmbeddingInitRange = 0.01;

struct EmbeddingTable {
  Vocab vocab;
  Eigen::MatrixXd vectors;  // vocab.size() x dim
  int dim() const { return static_cast<int>(vectors.cols()); }
  // Vector of a word, nullopt when absent.
  std::optional<Eigen::VectorXd> Lookup(const std::string &word) const;
};

// "word v1 ... vd" per line. Words from the file keep their vectors; the
// special rows are uniform in [-0.01, 0.01]. An empty path gives a table of
// special rows only, with dimension default_dim. Throws AmrError on an
// unreadable file or inconsistent dimension (with line number).
EmbeddingTable LoadEmbeddings(const std::string &path, int default_dim,
                              uint64_t seed);

}  // namespace amreager

#endif  // AMREAGER_EMBEDDINGS_H_
