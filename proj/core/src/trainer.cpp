#include "hltag/trainer.hpp"

#include <algorithm>
#include <cmath>

#include "hltag/error.hpp"

namespace hltag {

void validate(const TrainConfig& c) {
  if (!(c.learning_rate > 0.0) || !std::isfinite(c.learning_rate)) throw Error("learning_rate must be positive");
  if (!(c.dropout_rate >= 0.0 && c.dropout_rate <= 0.4)) throw Error("dropout_rate must lie in [0, 0.4]");
  if (c.epochs < 2 || c.epochs > 6) throw Error("epochs must lie in [2, 6]");
  if (c.batch_size < 1) throw Error("batch_size must be at least 1");
  if (!(c.beta1 >= 0.0 && c.beta1 < 1.0) || !(c.beta2 >= 0.0 && c.beta2 < 1.0))
    throw Error("Adam betas must lie in [0, 1)");
  if (!(c.epsilon > 0.0)) throw Error("epsilon must be positive");
}

double token_accuracy(const TaggerModel& model, const Corpus& gold, std::string_view head) {
  std::size_t correct = 0, total = 0;
  for (const auto& s : gold.sentences) {
    const TagSequence truth = s.gold_tags();
    const TagSequence pred = tag_sentence(model, s, head);
    for (std::size_t i = 0; i < truth.size(); ++i) correct += truth[i] == pred[i];
    total += truth.size();
  }
  if (total == 0) throw Error("token_accuracy: corpus '" + gold.domain.name + "' has no tokens");
  return static_cast<double>(correct) / static_cast<double>(total);
}

TrainHistory train(TaggerModel& model, const std::vector<Corpus>& train_corpora,
                   const std::vector<Corpus>& val_corpora, const TrainConfig& config, const EpochCallback& on_epoch) {
  validate(config);
  if (config.use_crf != model.use_crf) throw Error("train: config.use_crf does not match the model");

  std::vector<const Sentence*> pool;
  for (const auto& corpus : train_corpora) {
    for (const auto& s : corpus.sentences) {
      if (s.domain.name != corpus.domain.name)
        throw Error("sentence '" + s.id + "' does not belong to corpus domain '" + corpus.domain.name + "'");
      if (!model.has_head(s.domain.name))
        throw Error("no decoder head for training domain '" + s.domain.name + "'");
      if (!s.is_tagged()) throw Error("training sentence '" + s.id + "' is not fully tagged");
      pool.push_back(&s);
    }
  }
  if (pool.empty()) throw Error("train: no training sentences");

  Rng shuffle_rng = make_stream(config.seed, "shuffle");
  Rng dropout_rng = make_stream(config.seed, "dropout");
  AdamState adam = make_adam_state(model.params);
  const AdamConfig adam_config = config.adam();
  const auto batch = static_cast<std::size_t>(config.batch_size);

  TrainHistory history;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(pool.begin(), pool.end(), shuffle_rng);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < pool.size(); start += batch) {
      const std::size_t size = std::min(batch, pool.size() - start);
      std::span<const Sentence* const> items(pool.data() + start, size);
      LossGradient lg = loss_and_gradient(model, items, config.dropout_rate, dropout_rng);
      if (!std::isfinite(lg.loss)) throw Error("training diverged (non-finite loss)");
      loss_sum += lg.loss * static_cast<double>(size);
      clip_global_norm(lg.gradient, config.clip_norm);
      adam_step(model.params, lg.gradient, adam, adam_config);
    }
    EpochRecord record{epoch, loss_sum / static_cast<double>(pool.size()), {}};
    for (const auto& val : val_corpora) {
      if (!val.empty() && model.has_head(val.domain.name))
        record.val_accuracy[val.domain.name] = token_accuracy(model, val, val.domain.name);
    }
    if (on_epoch) on_epoch(record);
    history.epochs.push_back(std::move(record));
  }
  return history;
}

}  // namespace hltag
