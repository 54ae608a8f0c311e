#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hltag/adam.hpp"
#include "hltag/corpus.hpp"
#include "hltag/model.hpp"

namespace hltag {

struct TrainConfig {
  double learning_rate = 1e-3;
  double dropout_rate = 0.0;  // [0, 0.4]
  int epochs = 4;             // [2, 6]
  std::uint64_t seed = 0;
  int batch_size = 32;
  double beta1 = 0.99;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  bool use_crf = true;
  double clip_norm = 5.0;  // global-norm clipping; <= 0 disables

  AdamConfig adam() const { return {learning_rate, beta1, beta2, epsilon}; }
};

/// Throws hltag::Error when a field is outside its allowed range.
void validate(const TrainConfig& config);

struct EpochRecord {
  int epoch = 0;                               // 1-based
  double train_loss = 0.0;                     // mean per-sentence loss over the epoch
  std::map<std::string, double> val_accuracy;  // by domain, for validation corpora with a matching head
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Trains `model` in place. Each epoch pools every training sentence, shuffles
/// the pool with the (seed, "shuffle") stream, and applies one Adam step per
/// mini-batch; each sentence is scored by the head of its own domain.
/// Deterministic for a given config.
TrainHistory train(TaggerModel& model, const std::vector<Corpus>& train_corpora,
                   const std::vector<Corpus>& val_corpora, const TrainConfig& config,
                   const EpochCallback& on_epoch = {});

/// Fraction of tokens tagged correctly by `head`.
double token_accuracy(const TaggerModel& model, const Corpus& gold, std::string_view head);

/// Builds an untrained model for a run. The config supplies seed and use_crf.
using ModelFactory = std::function<TaggerModel(const TrainConfig&)>;

}  // namespace hltag
