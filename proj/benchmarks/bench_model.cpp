#include <benchmark/benchmark.h>

#include <random>

#include "hltag/model.hpp"

namespace {

using namespace hltag;

const DomainId kDomain{"body", 0};

Corpus bench_corpus(int sentences, int length) {
  const std::vector<std::string> words{"the", "Senate", "passes", "budget", "bill", "after", "long", "debate", "."};
  std::mt19937_64 rng(2);
  Corpus c{kDomain, {}};
  for (int s = 0; s < sentences; ++s) {
    std::vector<std::string> forms;
    TagSequence tags;
    for (int t = 0; t < length; ++t) {
      forms.push_back(words[rng() % words.size()]);
      tags.push_back(tag_from_code(static_cast<int>(rng() % kNumTags)));
    }
    c.sentences.push_back(make_sentence("b" + std::to_string(s), forms, tags, kDomain));
  }
  return c;
}

void BM_TagSentence(benchmark::State& state) {
  const Corpus c = bench_corpus(1, static_cast<int>(state.range(0)));
  const std::vector<Corpus> corpora{c};
  const TaggerModel model = make_model(build_vocab(corpora), {"body"}, ModelDims{}, true, 1);
  for (auto _ : state) benchmark::DoNotOptimize(tag_sentence(model, c.sentences[0], "body"));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TagSentence)->Arg(7)->Arg(15);

void BM_LossAndGradient(benchmark::State& state) {
  const Corpus c = bench_corpus(static_cast<int>(state.range(0)), 12);
  const std::vector<Corpus> corpora{c};
  const TaggerModel model = make_model(build_vocab(corpora), {"body"}, ModelDims{}, true, 1);
  std::vector<const Sentence*> batch;
  for (const auto& s : c.sentences) batch.push_back(&s);
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(loss_and_gradient(model, batch, 0.2, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LossAndGradient)->Arg(1)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
