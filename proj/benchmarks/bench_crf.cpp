#include <benchmark/benchmark.h>

#include <random>

#include "hltag/crf.hpp"
#include "hltag/pos_tag.hpp"

namespace {

using namespace hltag;

struct Instance {
  Eigen::MatrixXd emissions;
  DomainHead head;
};

Instance make_instance(int n, int k) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto fill = [&](auto& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  };
  Instance in;
  in.emissions.resize(n, k);
  in.head.transitions.resize(k, k);
  in.head.start_scores.resize(k);
  in.head.end_scores.resize(k);
  fill(in.emissions);
  fill(in.head.transitions);
  fill(in.head.start_scores);
  fill(in.head.end_scores);
  return in;
}

void BM_LogPartition(benchmark::State& state) {
  const Instance in = make_instance(static_cast<int>(state.range(0)), kNumTags);
  for (auto _ : state) benchmark::DoNotOptimize(crf_log_partition(in.emissions, in.head));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogPartition)->Arg(7)->Arg(15)->Arg(60);

void BM_Viterbi(benchmark::State& state) {
  const Instance in = make_instance(static_cast<int>(state.range(0)), kNumTags);
  for (auto _ : state) benchmark::DoNotOptimize(viterbi_decode(in.emissions, in.head));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Viterbi)->Arg(7)->Arg(15)->Arg(60);

void BM_CrfGradient(benchmark::State& state) {
  const Instance in = make_instance(static_cast<int>(state.range(0)), kNumTags);
  std::vector<int> gold(static_cast<std::size_t>(state.range(0)), 3);
  DomainHead grad = in.head;
  for (auto _ : state) {
    grad.transitions.setZero();
    grad.start_scores.setZero();
    grad.end_scores.setZero();
    benchmark::DoNotOptimize(crf_nll_gradient(in.emissions, gold, in.head, grad));
  }
}
BENCHMARK(BM_CrfGradient)->Arg(7)->Arg(15);

}  // namespace
