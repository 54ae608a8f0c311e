#include "hltag/bootstrap.hpp"

#include <cmath>

#include <json.hpp>

#include "hltag/error.hpp"
#include "hltag/rng.hpp"

namespace hltag {

std::size_t resample_size(double batch_fraction, std::size_t n) {
  if (!(batch_fraction > 0.0 && batch_fraction <= 1.0)) throw Error("batch_fraction must lie in (0, 1]");
  const auto size = static_cast<std::size_t>(std::ceil(batch_fraction * static_cast<double>(n) - 1e-9));
  return std::max<std::size_t>(size, 1);
}

namespace {

std::vector<std::size_t> correct_counts(const Corpus& gold, const std::vector<TagSequence>& pred, char label) {
  if (pred.size() != gold.size())
    throw MismatchError(std::string("prediction set ") + label + " has " + std::to_string(pred.size()) +
                        " sentences, gold has " + std::to_string(gold.size()));
  std::vector<std::size_t> out(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const Sentence& s = gold.sentences[i];
    if (pred[i].size() != s.size())
      throw MismatchError(std::string("prediction set ") + label + ": sentence '" + s.id + "' length mismatch");
    const TagSequence truth = s.gold_tags();
    for (std::size_t t = 0; t < truth.size(); ++t) out[i] += truth[t] == pred[i][t];
  }
  return out;
}

}  // namespace

BootstrapResult bootstrap_compare(const Corpus& gold, const std::vector<TagSequence>& pred_a,
                                  const std::vector<TagSequence>& pred_b, const BootstrapConfig& config) {
  if (config.replications < 1) throw Error("bootstrap needs at least one replication");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw Error("alpha must lie in (0, 1)");
  if (gold.empty()) throw Error("bootstrap_compare: empty gold corpus");
  const auto a = correct_counts(gold, pred_a, 'a');
  const auto b = correct_counts(gold, pred_b, 'b');
  const std::size_t n = gold.size();

  // Per-sentence difference in correct tokens. A resample's delta is
  // (sum diff) / (sum length), so its sign is the sign of sum diff.
  std::vector<long long> diff(n);
  long long total_diff = 0;
  std::size_t total_len = 0;
  for (std::size_t i = 0; i < n; ++i) {
    diff[i] = static_cast<long long>(b[i]) - static_cast<long long>(a[i]);
    total_diff += diff[i];
    total_len += gold.sentences[i].size();
  }

  BootstrapResult r;
  r.observed_delta = static_cast<double>(total_diff) / static_cast<double>(total_len);
  r.resample_size = resample_size(config.batch_fraction, n);
  r.replications = config.replications;
  r.alpha = config.alpha;

  long long not_better = 0;
  for (int rep = 0; rep < config.replications; ++rep) {
    Rng rng = make_stream(config.seed, "bootstrap", static_cast<std::uint64_t>(rep));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    long long d = 0;
    for (std::size_t k = 0; k < r.resample_size; ++k) d += diff[pick(rng)];
    if (d <= 0) ++not_better;
  }
  r.p_value = static_cast<double>(1 + not_better) / static_cast<double>(1 + config.replications);
  r.significant = r.p_value < config.alpha;
  return r;
}

std::string to_json(const BootstrapResult& r) {
  nlohmann::ordered_json j;
  j["p_value"] = r.p_value;
  j["significant"] = r.significant;
  j["observed_delta"] = r.observed_delta;
  j["resample_size"] = r.resample_size;
  j["replications"] = r.replications;
  j["alpha"] = r.alpha;
  j["statistic"] = "token_accuracy(b) - token_accuracy(a)";
  j["resampling_unit"] = "sentence";
  j["sidedness"] = "one-sided (b better than a)";
  j["smoothing"] = "add-one";
  return j.dump(2) + "\n";
}

}  // namespace hltag
