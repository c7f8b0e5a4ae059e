#include "amreager/model.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "json.hpp"

namespace amreager {

namespace fs = std::filesystem;

namespace {

void Glorot(Eigen::MatrixXd &m, int rows, int cols, std::mt19937_64 &rng) {
  const double range = std::sqrt(6.0 / (rows + cols));
  std::uniform_real_distribution<double> uniform(-range, range);
  m.resize(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = uniform(rng);
  }
}

void SmallUniform(Eigen::MatrixXd &m, int rows, int cols, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> uniform(-kEmbeddingInitRange,
                                                 kEmbeddingInitRange);
  m.resize(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = uniform(rng);
  }
}

void WriteBlob(const std::string &path, const Eigen::MatrixXd &m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot write " + path);
  auto put32 = [&](uint32_t v) {
    if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap32(v);
    out.write(reinterpret_cast<const char *>(&v), 4);
  };
  put32(static_cast<uint32_t>(m.rows()));
  put32(static_cast<uint32_t>(m.cols()));
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      put32(std::bit_cast<uint32_t>(static_cast<float>(m(r, c))));
    }
  }
}

Eigen::MatrixXd ReadBlob(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot read " + path);
  auto get32 = [&]() {
    uint32_t v = 0;
    if (!in.read(reinterpret_cast<char *>(&v), 4)) {
      throw ModelError("truncated blob " + path);
    }
    if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap32(v);
    return v;
  };
  const uint32_t rows = get32(), cols = get32();
  Eigen::MatrixXd m(rows, cols);
  for (uint32_t r = 0; r < rows; ++r) {
    for (uint32_t c = 0; c < cols; ++c) {
      m(r, c) = std::bit_cast<float>(get32());
    }
  }
  return m;
}

void Check(const Eigen::MatrixXd &m, long rows, long cols, const char *name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ModelError(std::string("inconsistent shape for ") + name);
  }
}

}  // namespace

void TrainConfig::Validate() const {
  if (!(learning_rate > 0)) throw ModelError("learning rate must be positive");
  if (epochs < 1) throw ModelError("epochs must be at least 1");
  if (batch_size < 1) throw ModelError("batch size must be at least 1");
  if (word_dim < 1 || pos_dim < 1 || dep_dim < 1 || hidden < 1) {
    throw ModelError("dimensions must be positive");
  }
}

std::vector<std::pair<std::string, Eigen::MatrixXd *>> Params::Blocks() {
  return {{"word_emb", &word_emb}, {"pos_emb", &pos_emb}, {"dep_emb", &dep_emb},
          {"w0", &w0}, {"b0", &b0}, {"w1", &w1}, {"b1", &b1},
          {"w2", &w2}, {"b2", &b2}};
}

std::vector<std::pair<std::string, const Eigen::MatrixXd *>> Params::Blocks()
    const {
  std::vector<std::pair<std::string, const Eigen::MatrixXd *>> out;
  for (auto &[name, m] : const_cast<Params *>(this)->Blocks()) {
    out.emplace_back(name, m);
  }
  return out;
}

void Params::SetZero() {
  for (auto &[name, m] : Blocks()) m->setZero();
}

FeedForwardModel FeedForwardModel::Create(
    const FeatureTemplate &tmpl, const std::vector<std::string> &classes,
    const std::vector<Example> &examples, const TrainConfig &config,
    const EmbeddingTable *pretrained) {
  config.Validate();
  if (examples.empty()) throw ModelError("empty training set for " + tmpl.name);
  if (classes.empty()) throw ModelError("empty class inventory");
  FeedForwardModel m;
  m.template_ = tmpl;
  m.classes_ = classes;
  m.config_ = config;
  if (pretrained) {
    m.config_.word_dim = pretrained->dim();
    for (const auto &w : pretrained->vocab.symbols()) m.words_.Add(w);
  }
  for (const Example &e : examples) {
    if (!tmpl.Matches(e.features)) {
      throw ModelError("example does not match template " + tmpl.name);
    }
    for (const auto &s : e.features.words) m.words_.Add(s);
    for (const auto &s : e.features.pos) m.pos_.Add(s);
    for (const auto &s : e.features.deps) m.deps_.Add(s);
    for (const auto &s : e.features.ner) m.ner_.Add(s);
  }

  std::mt19937_64 rng(config.seed);
  Params &p = m.params_;
  SmallUniform(p.word_emb, m.words_.size(), m.config_.word_dim, rng);
  SmallUniform(p.pos_emb, m.pos_.size(), config.pos_dim, rng);
  SmallUniform(p.dep_emb, m.deps_.size(), config.dep_dim, rng);
  if (pretrained) {
    for (int r = kNumSpecialSymbols; r < pretrained->vocab.size(); ++r) {
      p.word_emb.row(m.words_.Id(pretrained->vocab.Symbol(r))) =
          pretrained->vectors.row(r);
    }
  }
  const int input = tmpl.words * m.config_.word_dim + tmpl.pos * config.pos_dim +
                    tmpl.deps * config.dep_dim + tmpl.ner * m.ner_.size() +
                    tmpl.scalars * kScalarBuckets + tmpl.sparse;
  const int h = config.hidden, c = static_cast<int>(classes.size());
  Glorot(p.w0, h, input, rng);
  Glorot(p.w1, h, h, rng);
  Glorot(p.w2, c, h, rng);
  p.b0 = Eigen::MatrixXd::Zero(h, 1);
  p.b1 = Eigen::MatrixXd::Zero(h, 1);
  p.b2 = Eigen::MatrixXd::Zero(c, 1);
  return m;
}

int FeedForwardModel::ClassIndex(const std::string &label) const {
  auto it = std::find(classes_.begin(), classes_.end(), label);
  return it == classes_.end() ? -1 : static_cast<int>(it - classes_.begin());
}

FeedForwardModel::Encoded FeedForwardModel::Encode(const FeatureVector &f) const {
  if (!template_.Matches(f)) {
    throw ModelError("feature vector (" + f.template_name + " v" +
                     std::to_string(f.template_version) +
                     ") does not match model template (" + template_.name +
                     " v" + std::to_string(template_.version) + ")");
  }
  Encoded e;
  for (const auto &s : f.words) e.words.push_back(words_.Id(s));
  for (const auto &s : f.pos) e.pos.push_back(pos_.Id(s));
  for (const auto &s : f.deps) e.deps.push_back(deps_.Id(s));
  int base = template_.words * config_.word_dim + template_.pos * config_.pos_dim +
             template_.deps * config_.dep_dim;
  for (const auto &s : f.ner) {
    e.onehot.push_back(base + ner_.Id(s));
    base += ner_.size();
  }
  for (int v : f.scalars) {
    e.onehot.push_back(base + std::clamp(v, 0, kScalarBuckets - 1));
    base += kScalarBuckets;
  }
  e.sparse = f.sparse;
  return e;
}

FeedForwardModel::Encoded FeedForwardModel::Encode(const Example &ex) const {
  Encoded e = Encode(ex.features);
  e.label = ClassIndex(ex.label);
  if (e.label < 0) {
    throw ModelError("label '" + ex.label + "' is not a class of the " +
                     template_.name + " model");
  }
  return e;
}

void FeedForwardModel::Run(const Encoded &e, Activations *a) const {
  const Params &p = params_;
  a->x.setZero(input_dim());
  int offset = 0;
  for (int id : e.words) {
    a->x.segment(offset, config_.word_dim) = p.word_emb.row(id).transpose();
    offset += config_.word_dim;
  }
  for (int id : e.pos) {
    a->x.segment(offset, config_.pos_dim) = p.pos_emb.row(id).transpose();
    offset += config_.pos_dim;
  }
  for (int id : e.deps) {
    a->x.segment(offset, config_.dep_dim) = p.dep_emb.row(id).transpose();
    offset += config_.dep_dim;
  }
  for (int k : e.onehot) a->x[k] = 1.0;
  const int sparse_base = input_dim() - template_.sparse;
  for (size_t k = 0; k < e.sparse.size(); ++k) a->x[sparse_base + k] = e.sparse[k];

  a->h1 = (p.w0 * a->x + p.b0.col(0)).array().tanh().matrix();
  a->h2 = (p.w1 * a->h1 + p.b1.col(0)).array().tanh().matrix();
  Eigen::VectorXd z = p.w2 * a->h2 + p.b2.col(0);
  z.array() -= z.maxCoeff();
  a->p = z.array().exp().matrix();
  a->p /= a->p.sum();
}

Eigen::VectorXd FeedForwardModel::Forward(const FeatureVector &f) const {
  Activations a;
  Run(Encode(f), &a);
  return a.p;
}

int FeedForwardModel::Predict(const FeatureVector &f) const {
  Eigen::Index best;
  Forward(f).maxCoeff(&best);
  return static_cast<int>(best);
}

double FeedForwardModel::Backprop(const Encoded &e, Params *g,
                                  std::vector<std::vector<int>> *touched) const {
  const Params &p = params_;
  Activations a;
  Run(e, &a);
  const double loss = -std::log(std::max(a.p[e.label], 1e-300));
  Eigen::VectorXd dz = a.p;
  dz[e.label] -= 1.0;
  g->w2.noalias() += dz * a.h2.transpose();
  g->b2.col(0) += dz;
  Eigen::VectorXd dh2 = (p.w2.transpose() * dz).array() *
                        (1.0 - a.h2.array().square());
  g->w1.noalias() += dh2 * a.h1.transpose();
  g->b1.col(0) += dh2;
  Eigen::VectorXd dh1 = (p.w1.transpose() * dh2).array() *
                        (1.0 - a.h1.array().square());
  g->w0.noalias() += dh1 * a.x.transpose();
  g->b0.col(0) += dh1;
  const Eigen::VectorXd dx = p.w0.transpose() * dh1;

  int offset = 0;
  auto scatter = [&](const std::vector<int> &ids, int dim, Eigen::MatrixXd &emb,
                     int table) {
    for (int id : ids) {
      emb.row(id) += dx.segment(offset, dim).transpose();
      offset += dim;
      if (touched) (*touched)[table].push_back(id);
    }
  };
  scatter(e.words, config_.word_dim, g->word_emb, 0);
  scatter(e.pos, config_.pos_dim, g->pos_emb, 1);
  scatter(e.deps, config_.dep_dim, g->dep_emb, 2);
  return loss;
}

double FeedForwardModel::Loss(const std::vector<Example> &examples) const {
  if (examples.empty()) return 0;
  double total = 0;
  Activations a;
  for (const Example &ex : examples) {
    const Encoded e = Encode(ex);
    Run(e, &a);
    total -= std::log(std::max(a.p[e.label], 1e-300));
  }
  return total / examples.size();
}

double FeedForwardModel::Accuracy(const std::vector<Example> &examples) const {
  if (examples.empty()) return 0;
  int correct = 0;
  for (const Example &ex : examples) {
    const int label = ClassIndex(ex.label);
    if (label >= 0 && Predict(ex.features) == label) ++correct;
  }
  return static_cast<double>(correct) / examples.size();
}

double FeedForwardModel::LossAndGradient(const std::vector<Example> &examples,
                                         Params *grad) const {
  *grad = params_;
  grad->SetZero();
  if (examples.empty()) return 0;
  double total = 0;
  for (const Example &ex : examples) total += Backprop(Encode(ex), grad, nullptr);
  const double scale = 1.0 / examples.size();
  for (auto &[name, m] : grad->Blocks()) *m *= scale;
  return total * scale;
}

void FeedForwardModel::Save(const std::string &dir) const {
  fs::create_directories(dir);
  nlohmann::json manifest = {
      {"format_version", kModelFormatVersion},
      {"template",
       {{"name", template_.name},
        {"version", template_.version},
        {"scalars", template_.scalars},
        {"words", template_.words},
        {"pos", template_.pos},
        {"ner", template_.ner},
        {"deps", template_.deps},
        {"sparse", template_.sparse}}},
      {"classes", classes_},
      {"dims",
       {{"word", config_.word_dim},
        {"pos", config_.pos_dim},
        {"dep", config_.dep_dim},
        {"hidden", config_.hidden}}},
      {"seed", config_.seed},
      {"learning_rate", config_.learning_rate},
      {"epochs", config_.epochs},
      {"batch_size", config_.batch_size}};
  std::ofstream(fs::path(dir) / "manifest.json") << manifest.dump(2) << '\n';
  words_.Save((fs::path(dir) / "words.txt").string());
  pos_.Save((fs::path(dir) / "pos.txt").string());
  deps_.Save((fs::path(dir) / "deps.txt").string());
  ner_.Save((fs::path(dir) / "ner.txt").string());
  for (const auto &[name, m] : params_.Blocks()) {
    WriteBlob((fs::path(dir) / (name + ".bin")).string(), *m);
  }
}

FeedForwardModel FeedForwardModel::Load(const std::string &dir) {
  std::ifstream in(fs::path(dir) / "manifest.json");
  if (!in) throw ModelError("no model manifest in " + dir);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw ModelError("bad manifest in " + dir + ": " + e.what());
  }
  if (j.value("format_version", 0) != kModelFormatVersion) {
    throw ModelError("unsupported model format in " + dir);
  }
  FeedForwardModel m;
  const auto &t = j.at("template");
  m.template_ = FeatureTemplate{t.at("name"), t.at("version"), t.at("scalars"),
                                t.at("words"), t.at("pos"),    t.at("ner"),
                                t.at("deps"), t.at("sparse")};
  const FeatureTemplate *current = nullptr;
  for (const FeatureTemplate *c :
       {&TransitionTemplate(), &LabelTemplate(), &ReentrancyTemplate()}) {
    if (c->name == m.template_.name) current = c;
  }
  if (!current || current->version != m.template_.version ||
      current->num_slots() != m.template_.num_slots() ||
      current->sparse != m.template_.sparse) {
    throw ModelError("model template " + m.template_.name + " v" +
                     std::to_string(m.template_.version) +
                     " is not supported by this binary");
  }
  m.classes_ = j.at("classes").get<std::vector<std::string>>();
  m.config_.word_dim = j.at("dims").at("word");
  m.config_.pos_dim = j.at("dims").at("pos");
  m.config_.dep_dim = j.at("dims").at("dep");
  m.config_.hidden = j.at("dims").at("hidden");
  m.config_.seed = j.at("seed");
  m.config_.learning_rate = j.value("learning_rate", 0.1);
  m.config_.epochs = j.value("epochs", 1);
  m.config_.batch_size = j.value("batch_size", 32);
  m.words_ = Vocab::Load((fs::path(dir) / "words.txt").string());
  m.pos_ = Vocab::Load((fs::path(dir) / "pos.txt").string());
  m.deps_ = Vocab::Load((fs::path(dir) / "deps.txt").string());
  m.ner_ = Vocab::Load((fs::path(dir) / "ner.txt").string());
  for (auto &[name, mat] : m.params_.Blocks()) {
    *mat = ReadBlob((fs::path(dir) / (name + ".bin")).string());
  }
  const Params &p = m.params_;
  const int h = m.config_.hidden, c = static_cast<int>(m.classes_.size());
  const FeatureTemplate &tm = m.template_;
  const int input = tm.words * m.config_.word_dim + tm.pos * m.config_.pos_dim +
                    tm.deps * m.config_.dep_dim + tm.ner * m.ner_.size() +
                    tm.scalars * kScalarBuckets + tm.sparse;
  Check(p.word_emb, m.words_.size(), m.config_.word_dim, "word_emb");
  Check(p.pos_emb, m.pos_.size(), m.config_.pos_dim, "pos_emb");
  Check(p.dep_emb, m.deps_.size(), m.config_.dep_dim, "dep_emb");
  Check(p.w0, h, input, "w0");
  Check(p.b0, h, 1, "b0");
  Check(p.w1, h, h, "w1");
  Check(p.b1, h, 1, "b1");
  Check(p.w2, c, h, "w2");
  Check(p.b2, c, 1, "b2");
  return m;
}

struct Trainer {
  static TrainResult Run(const FeatureTemplate &tmpl,
                         const std::vector<Example> &train,
                         const std::vector<Example> *dev,
                         const TrainConfig &config,
                         const EmbeddingTable *pretrained,
                         std::vector<std::string> classes) {
    if (train.empty()) throw ModelError("empty training set for " + tmpl.name);
    if (classes.empty()) {
      for (const Example &e : train) classes.push_back(e.label);
      std::sort(classes.begin(), classes.end());
      classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    }
    TrainResult result;
    FeedForwardModel m =
        FeedForwardModel::Create(tmpl, classes, train, config, pretrained);
    std::vector<FeedForwardModel::Encoded> data;
    data.reserve(train.size());
    for (const Example &e : train) data.push_back(m.Encode(e));

    auto evaluate = [&](int epoch) {
      EpochLog log;
      log.epoch = epoch;
      FeedForwardModel::Activations a;
      int correct = 0;
      for (const auto &e : data) {
        m.Run(e, &a);
        log.loss -= std::log(std::max(a.p[e.label], 1e-300));
        Eigen::Index best;
        a.p.maxCoeff(&best);
        if (best == e.label) ++correct;
      }
      log.loss /= data.size();
      log.train_accuracy = static_cast<double>(correct) / data.size();
      if (dev && !dev->empty()) log.dev_accuracy = m.Accuracy(*dev);
      result.log.push_back(log);
      return log;
    };

    double best_dev = evaluate(0).dev_accuracy.value_or(0);
    result.model = m;
    std::vector<size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(config.seed + 1);
    const long batches_per_epoch =
        (static_cast<long>(data.size()) + config.batch_size - 1) / config.batch_size;
    const double total_steps = static_cast<double>(batches_per_epoch) * config.epochs;
    long step = 0;
    Params grad = m.params_;
    grad.SetZero();
    std::vector<std::vector<int>> touched(3);
    Eigen::MatrixXd *tables[3] = {&m.params_.word_emb, &m.params_.pos_emb,
                                  &m.params_.dep_emb};
    Eigen::MatrixXd *grad_tables[3] = {&grad.word_emb, &grad.pos_emb,
                                       &grad.dep_emb};

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      for (size_t start = 0; start < order.size(); start += config.batch_size) {
        const size_t end = std::min(order.size(), start + config.batch_size);
        for (size_t k = start; k < end; ++k) m.Backprop(data[order[k]], &grad, &touched);
        const double lr = config.learning_rate * (1.0 - step / total_steps);
        const double scale = lr / static_cast<double>(end - start);
        auto blocks = m.params_.Blocks();
        auto grads = grad.Blocks();
        for (size_t b = 3; b < blocks.size(); ++b) {
          *blocks[b].second -= scale * *grads[b].second;
          grads[b].second->setZero();
        }
        for (int t = 0; t < 3; ++t) {
          auto &rows = touched[t];
          std::sort(rows.begin(), rows.end());
          rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
          for (int r : rows) {
            tables[t]->row(r) -= scale * grad_tables[t]->row(r);
            grad_tables[t]->row(r).setZero();
          }
          rows.clear();
        }
        ++step;
      }
      const EpochLog log = evaluate(epoch);
      if (!log.dev_accuracy || *log.dev_accuracy > best_dev || epoch == 1) {
        if (log.dev_accuracy) best_dev = *log.dev_accuracy;
        result.model = m;
        result.best_epoch = epoch;
      }
    }
    return result;
  }
};

TrainResult Train(const FeatureTemplate &tmpl, const std::vector<Example> &train,
                  const std::vector<Example> *dev, const TrainConfig &config,
                  const EmbeddingTable *pretrained,
                  std::vector<std::string> classes) {
  config.Validate();
  return Trainer::Run(tmpl, train, dev, config, pretrained, std::move(classes));
}

}  // namespace amreager
