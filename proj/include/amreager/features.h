#ifndef AMREAGER_FEATURES_H_
#define AMREAGER_FEATURES_H_

#include <string>
#include <vector>

#include "amreager/sentence.h"
#include "amreager/transition.h"
#include "json.hpp"

namespace amreager {

// Padding symbols shared by every vocabulary.
extern const char kNullSymbol[];  // absent position
extern const char kUnkSymbol[];   // unknown to the model
extern const char kRootToken[];   // the artificial root

constexpr int kScalarBuckets = 11;  // values clipped to 0..10

// Symbolic features; the model maps symbols to embedding rows.
struct FeatureVector {
  std::string template_name;
  int template_version = 0;
  std::vector<int> scalars;  // each in [0, kScalarBuckets)
  std::vector<std::string> words;
  std::vector<std::string> pos;
  std::vector<std::string> ner;  // one-hot
  std::vector<std::string> deps;
  std::vector<float> sparse;

  int num_slots() const {
    return static_cast<int>(scalars.size() + words.size() + pos.size() +
                            ner.size() + deps.size());
  }
  nlohmann::json ToJson() const;
  static FeatureVector FromJson(const nlohmann::json &j);
};

// Slot counts of a template, checked by the model on every input.
struct FeatureTemplate {
  std::string name;
  int version = 0;
  int scalars = 0;
  int words = 0;
  int pos = 0;
  int ner = 0;
  int deps = 0;
  int sparse = 0;

  int num_slots() const { return scalars + words + pos + ner + deps; }
  bool Matches(const FeatureVector &f) const;
};

const FeatureTemplate &TransitionTemplate();
const FeatureTemplate &LabelTemplate();
const FeatureTemplate &ReentrancyTemplate();

FeatureVector ExtractTransitionFeatures(const Configuration &c,
                                        const Sentence &s);

// Features for an edge between head and dependent stack nodes. For the arcs
// these are sigma_0 and sigma_1; for a reentrancy, the reduced node and its
// sibling. kind tells which transition creates the edge.
FeatureVector ExtractLabelFeatures(const Configuration &c, const Sentence &s,
                                   Action kind);
FeatureVector ExtractLabelFeatures(const Configuration &c, const Sentence &s,
                                   int first, int second, Action kind);

// Reduce of sigma_0 with candidate sibling w.
FeatureVector ExtractReentrancyFeatures(const Configuration &c,
                                        const Sentence &s, int w);

}  // namespace amreager

#endif  // AMREAGER_FEATURES_H_
