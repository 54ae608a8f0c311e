#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hltag/corpus.hpp"
#include "hltag/model.hpp"
#include "hltag/trainer.hpp"

namespace hltag {

struct CvOptions {
  int folds = 5;
  double train_fraction = 0.6;
  double val_fraction = 0.2;
  double test_fraction = 0.2;  // must equal 1 / folds
  std::uint64_t seed = 0;
};

/// Trains on (train, val) for fold `fold` and returns a tagger for the test window.
using FoldTrainer = std::function<SentenceTagger(const Corpus& train, const Corpus& val, int fold)>;

struct FoldResult {
  int fold = 0;
  std::size_t train_size = 0;
  std::size_t val_size = 0;
  std::vector<std::string> test_ids;
  double token_accuracy = 0.0;
  double sequence_accuracy = 0.0;
};

struct CvResult {
  std::vector<FoldResult> folds;
  double mean_token_accuracy = 0.0;
  double mean_sequence_accuracy = 0.0;
};

/// Shuffles the corpus once under `seed`; fold f tests on the contiguous
/// window [f*n/k, (f+1)*n/k) of that order. The remaining sentences, in
/// shuffled order, are split train:val in proportion train_fraction:val_fraction
/// (train gets the floor).
CvResult cross_validate(const Corpus& corpus, const CvOptions& options, const FoldTrainer& trainer);

/// FoldTrainer that builds a model with `factory`, trains it with `config`,
/// and tags with the head of the corpus domain.
FoldTrainer make_fold_trainer(ModelFactory factory, TrainConfig config);

}  // namespace hltag
