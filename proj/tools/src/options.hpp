#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "hltag/bootstrap.hpp"
#include "hltag/error.hpp"
#include "hltag/model.hpp"
#include "hltag/search.hpp"
#include "hltag/trainer.hpp"
#include "manifest.hpp"

namespace hltag::cli {

/// Bad flags or configuration; maps to exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Missing or unreadable files; maps to exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A corpus file bound to a domain by "path@domain".
struct CorpusSpec {
  std::filesystem::path path;
  std::string domain;
};

CorpusSpec parse_corpus_spec(const std::string& arg);

/// Everything a training or search run reads from its config file.
struct RunConfig {
  TrainConfig train;
  SearchSpace space;
  ModelDims dims;
  int min_freq = 1;
};

/// Reads a JSON config; every field is optional. Unknown fields and "seed"
/// (which only comes from --seed) are usage errors.
RunConfig load_run_config(const std::optional<std::filesystem::path>& path);
BootstrapConfig load_bootstrap_config(const std::optional<std::filesystem::path>& path);

Json to_json(const TrainConfig& config);
Json to_json(const SearchSpace& space);
Json to_json(const ModelDims& dims);
Json to_json(const BootstrapConfig& config);

}  // namespace hltag::cli
