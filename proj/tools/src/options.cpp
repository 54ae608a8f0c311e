#include "options.hpp"

#include <fstream>
#include <set>

namespace hltag::cli {
namespace {

Json read_json_object(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("invalid JSON in " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError(path.string() + ": config must be a JSON object");
  return j;
}

template <class T>
void take(const Json& j, const char* key, T& field, std::set<std::string>& used) {
  auto it = j.find(key);
  if (it == j.end()) return;
  used.insert(key);
  try {
    field = it->get<T>();
  } catch (const Json::exception&) {
    throw UsageError(std::string("config field '") + key + "' has the wrong type");
  }
}

void reject_unknown(const Json& j, const std::set<std::string>& used) {
  for (const auto& [key, value] : j.items()) {
    if (key == "seed") throw UsageError("config may not set 'seed'; use --seed");
    if (!used.count(key)) throw UsageError("unknown config field '" + key + "'");
  }
}

}  // namespace

CorpusSpec parse_corpus_spec(const std::string& arg) {
  const auto at = arg.rfind('@');
  if (at == std::string::npos || at == 0 || at + 1 == arg.size())
    throw UsageError("expected <corpus>@<domain>, got '" + arg + "'");
  return {arg.substr(0, at), arg.substr(at + 1)};
}

RunConfig load_run_config(const std::optional<std::filesystem::path>& path) {
  RunConfig c;
  if (!path) return c;
  const Json j = read_json_object(*path);
  std::set<std::string> used;
  take(j, "learning_rate", c.train.learning_rate, used);
  take(j, "dropout_rate", c.train.dropout_rate, used);
  take(j, "epochs", c.train.epochs, used);
  take(j, "batch_size", c.train.batch_size, used);
  take(j, "beta1", c.train.beta1, used);
  take(j, "beta2", c.train.beta2, used);
  take(j, "epsilon", c.train.epsilon, used);
  take(j, "use_crf", c.train.use_crf, used);
  take(j, "clip_norm", c.train.clip_norm, used);
  take(j, "lr_exponent_low", c.space.lr_exponent_low, used);
  take(j, "lr_exponent_high", c.space.lr_exponent_high, used);
  take(j, "dropout_low", c.space.dropout_low, used);
  take(j, "dropout_high", c.space.dropout_high, used);
  take(j, "epochs_low", c.space.epochs_low, used);
  take(j, "epochs_high", c.space.epochs_high, used);
  take(j, "budget", c.space.budget, used);
  take(j, "seeds_per_trial", c.space.seeds_per_trial, used);
  take(j, "word_dim", c.dims.word_dim, used);
  take(j, "char_dim", c.dims.char_dim, used);
  take(j, "char_hidden", c.dims.char_hidden, used);
  take(j, "hidden", c.dims.hidden, used);
  take(j, "layers", c.dims.layers, used);
  take(j, "min_freq", c.min_freq, used);
  reject_unknown(j, used);
  if (c.dims.word_dim < 1 || c.dims.char_dim < 1 || c.dims.char_hidden < 1 || c.dims.hidden < 1 || c.dims.layers < 1)
    throw UsageError("model widths and layer count must be positive");
  if (c.min_freq < 1) throw UsageError("min_freq must be at least 1");
  return c;
}

BootstrapConfig load_bootstrap_config(const std::optional<std::filesystem::path>& path) {
  BootstrapConfig c;
  if (!path) return c;
  const Json j = read_json_object(*path);
  std::set<std::string> used;
  take(j, "batch_fraction", c.batch_fraction, used);
  take(j, "replications", c.replications, used);
  take(j, "alpha", c.alpha, used);
  reject_unknown(j, used);
  return c;
}

Json to_json(const TrainConfig& c) {
  Json j;
  j["learning_rate"] = c.learning_rate;
  j["dropout_rate"] = c.dropout_rate;
  j["epochs"] = c.epochs;
  j["seed"] = c.seed;
  j["batch_size"] = c.batch_size;
  j["beta1"] = c.beta1;
  j["beta2"] = c.beta2;
  j["epsilon"] = c.epsilon;
  j["use_crf"] = c.use_crf;
  j["clip_norm"] = c.clip_norm;
  return j;
}

Json to_json(const SearchSpace& s) {
  Json j;
  j["lr_exponent_low"] = s.lr_exponent_low;
  j["lr_exponent_high"] = s.lr_exponent_high;
  j["dropout_low"] = s.dropout_low;
  j["dropout_high"] = s.dropout_high;
  j["epochs_low"] = s.epochs_low;
  j["epochs_high"] = s.epochs_high;
  j["budget"] = s.budget;
  j["seeds_per_trial"] = s.seeds_per_trial;
  return j;
}

Json to_json(const ModelDims& d) {
  Json j;
  j["word_dim"] = d.word_dim;
  j["char_dim"] = d.char_dim;
  j["char_hidden"] = d.char_hidden;
  j["hidden"] = d.hidden;
  j["layers"] = d.layers;
  j["num_tags"] = d.num_tags;
  return j;
}

Json to_json(const BootstrapConfig& c) {
  Json j;
  j["batch_fraction"] = c.batch_fraction;
  j["replications"] = c.replications;
  j["alpha"] = c.alpha;
  j["seed"] = c.seed;
  return j;
}

}  // namespace hltag::cli
