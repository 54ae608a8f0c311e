#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hltag/corpus.hpp"

namespace hltag {

struct BootstrapConfig {
  double batch_fraction = 0.2;
  int replications = 2000;
  double alpha = 0.01;
  std::uint64_t seed = 0;
};

struct BootstrapResult {
  double p_value = 1.0;
  bool significant = false;
  double observed_delta = 0.0;  // tokenAcc(b) - tokenAcc(a) on the full set
  std::size_t resample_size = 0;
  int replications = 0;
  double alpha = 0.0;
};

/// Number of sentences drawn per replication: ceil(batch_fraction * n).
std::size_t resample_size(double batch_fraction, std::size_t n);

/// One-sided paired bootstrap over sentences testing whether system b beats
/// system a on token accuracy. Each replication draws resample_size sentences
/// with replacement from its own (seed, replication) stream;
///   p = (1 + #{replications with delta <= 0}) / (1 + replications),
/// and the result is significant iff p < alpha.
BootstrapResult bootstrap_compare(const Corpus& gold, const std::vector<TagSequence>& pred_a,
                                  const std::vector<TagSequence>& pred_b, const BootstrapConfig& config);

/// JSON including the test policy (statistic, sidedness, smoothing).
std::string to_json(const BootstrapResult& result);

}  // namespace hltag
