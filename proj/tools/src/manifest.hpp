#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hltag::cli {

using Json = nlohmann::ordered_json;

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Record of one command invocation, written next to its primary output.
class RunManifest {
 public:
  RunManifest(std::string command, std::vector<std::string> argv);

  void set_config(Json config) { config_ = std::move(config); }
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);
  void set_result(Json result) { result_ = std::move(result); }

  /// Stamps the finish time and output digests, then writes the manifest.
  void write(const std::filesystem::path& path, int exit_code);

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::string started_at_;
  Json config_ = Json::object();
  Json result_ = Json::object();
  std::optional<std::uint64_t> seed_;
  std::vector<std::filesystem::path> inputs_;
  std::vector<std::filesystem::path> outputs_;
};

std::string utc_timestamp();

}  // namespace hltag::cli
