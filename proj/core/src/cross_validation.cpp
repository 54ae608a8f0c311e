#include "hltag/cross_validation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "hltag/error.hpp"
#include "hltag/metrics.hpp"

namespace hltag {

CvResult cross_validate(const Corpus& corpus, const CvOptions& options, const FoldTrainer& trainer) {
  const int k = options.folds;
  if (k < 2) throw Error("cross_validate needs at least 2 folds");
  if (!(options.train_fraction > 0.0 && options.val_fraction > 0.0 && options.test_fraction > 0.0) ||
      std::abs(options.train_fraction + options.val_fraction + options.test_fraction - 1.0) > 1e-9)
    throw Error("cross_validate fractions must be positive and sum to 1");
  if (std::abs(options.test_fraction * k - 1.0) > 1e-9)
    throw Error("cross_validate: test_fraction must equal 1 / folds");
  const std::size_t n = corpus.size();
  if (n < static_cast<std::size_t>(k))
    throw Error("cross_validate: " + std::to_string(n) + " sentences cannot fill " + std::to_string(k) + " folds");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = make_stream(options.seed, "cross-validation");
  std::shuffle(order.begin(), order.end(), rng);

  const double train_share = options.train_fraction / (options.train_fraction + options.val_fraction);
  CvResult result;
  for (int f = 0; f < k; ++f) {
    const std::size_t lo = n * static_cast<std::size_t>(f) / static_cast<std::size_t>(k);
    const std::size_t hi = n * static_cast<std::size_t>(f + 1) / static_cast<std::size_t>(k);
    Corpus train{corpus.domain, {}}, val{corpus.domain, {}}, test{corpus.domain, {}};
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= lo && i < hi)
        test.sentences.push_back(corpus.sentences[order[i]]);
      else
        rest.push_back(order[i]);
    }
    const auto n_train =
        static_cast<std::size_t>(std::floor(train_share * static_cast<double>(rest.size()) + 1e-9));
    if (n_train == 0 || n_train == rest.size() || test.empty())
      throw Error("cross_validate: corpus too small for non-empty train/val/test folds");
    for (std::size_t i = 0; i < rest.size(); ++i)
      (i < n_train ? train : val).sentences.push_back(corpus.sentences[rest[i]]);

    const SentenceTagger tagger = trainer(train, val, f);
    std::vector<TagSequence> predictions;
    for (const auto& s : test.sentences) predictions.push_back(tagger(s));
    const EvalReport report = evaluate(test, predictions);

    FoldResult fr;
    fr.fold = f;
    fr.train_size = train.size();
    fr.val_size = val.size();
    for (const auto& s : test.sentences) fr.test_ids.push_back(s.id);
    fr.token_accuracy = report.token_accuracy;
    fr.sequence_accuracy = report.sequence_accuracy;
    result.mean_token_accuracy += fr.token_accuracy / k;
    result.mean_sequence_accuracy += fr.sequence_accuracy / k;
    result.folds.push_back(std::move(fr));
  }
  return result;
}

FoldTrainer make_fold_trainer(ModelFactory factory, TrainConfig config) {
  return [factory = std::move(factory), config](const Corpus& train_corpus, const Corpus& val, int) {
    auto model = std::make_shared<TaggerModel>(factory(config));
    train(*model, {train_corpus}, {val}, config);
    const std::string head = train_corpus.domain.name;
    return SentenceTagger([model, head](const Sentence& s) { return tag_sentence(*model, s, head); });
  };
}

}  // namespace hltag
