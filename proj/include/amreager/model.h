#ifndef AMREAGER_MODEL_H_
#define AMREAGER_MODEL_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "amreager/embeddings.h"
#include "amreager/features.h"

namespace amreager {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kModelFormatVersion = 1;

struct TrainConfig {
  double learning_rate = 0.1;  // decays linearly to 0 over all updates
  int epochs = 20;
  uint64_t seed = 42;
  int word_dim = 50;
  int pos_dim = 20;
  int dep_dim = 20;
  int hidden = 200;
  int batch_size = 32;

  void Validate() const;  // throws ModelError
};

struct Example {
  FeatureVector features;
  std::string label;
};

// All trainable matrices; biases are single columns.
struct Params {
  Eigen::MatrixXd word_emb, pos_emb, dep_emb;
  Eigen::MatrixXd w0, b0, w1, b1, w2, b2;

  std::vector<std::pair<std::string, Eigen::MatrixXd *>> Blocks();
  std::vector<std::pair<std::string, const Eigen::MatrixXd *>> Blocks() const;
  void SetZero();
};

struct EpochLog {
  int epoch = 0;  // 0 is before training
  double loss = 0;
  double train_accuracy = 0;
  std::optional<double> dev_accuracy;
};

// softmax(W2 tanh(W1 tanh(W0 x + b0) + b1) + b2) over the concatenation of
// word, POS and dependency embeddings, one-hot entity and scalar slots, and
// the sparse indicators.
class FeedForwardModel {
 public:
  FeedForwardModel() = default;

  // Vocabularies are built from the examples; pretrained rows, when given,
  // seed the word embeddings. Throws ModelError on an empty dataset.
  static FeedForwardModel Create(const FeatureTemplate &tmpl,
                                 const std::vector<std::string> &classes,
                                 const std::vector<Example> &examples,
                                 const TrainConfig &config,
                                 const EmbeddingTable *pretrained = nullptr);

  const FeatureTemplate &feature_template() const { return template_; }
  const std::vector<std::string> &classes() const { return classes_; }
  int ClassIndex(const std::string &label) const;  // -1 when unknown
  int input_dim() const { return static_cast<int>(params_.w0.cols()); }

  // Throws ModelError when f does not match the model's template.
  Eigen::VectorXd Forward(const FeatureVector &f) const;
  int Predict(const FeatureVector &f) const;

  // Mean cross-entropy; throws ModelError on an unknown label.
  double Loss(const std::vector<Example> &examples) const;
  double Accuracy(const std::vector<Example> &examples) const;
  // Mean loss with its dense gradient.
  double LossAndGradient(const std::vector<Example> &examples,
                         Params *grad) const;

  Params &params() { return params_; }
  const Params &params() const { return params_; }

  void Save(const std::string &dir) const;
  static FeedForwardModel Load(const std::string &dir);

 private:
  struct Encoded {
    std::vector<int> words, pos, deps, onehot;  // onehot: input positions
    std::vector<float> sparse;
    int label = -1;
  };
  struct Activations {
    Eigen::VectorXd x, h1, h2, p;
  };

  Encoded Encode(const FeatureVector &f) const;
  Encoded Encode(const Example &e) const;
  void Run(const Encoded &e, Activations *a) const;
  // Adds the gradient of -log p(label) to grad; returns that loss.
  double Backprop(const Encoded &e, Params *grad,
                  std::vector<std::vector<int>> *touched) const;

  friend struct Trainer;

  FeatureTemplate template_;
  std::vector<std::string> classes_;
  Vocab words_, pos_, deps_, ner_;
  TrainConfig config_;
  Params params_;
};

struct TrainResult {
  FeedForwardModel model;
  std::vector<EpochLog> log;
  int best_epoch = 0;
};

// Minibatch SGD on cross-entropy. Classes default to the sorted training
// labels. With a dev set the epoch with the best dev accuracy is kept.
TrainResult Train(const FeatureTemplate &tmpl,
                  const std::vector<Example> &train,
                  const std::vector<Example> *dev, const TrainConfig &config,
                  const EmbeddingTable *pretrained = nullptr,
                  std::vector<std::string> classes = {});

}  // namespace amreager

#endif  // AMREAGER_MODEL_H_
