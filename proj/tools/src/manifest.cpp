#include "manifest.hpp"

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>

#include <openssl/evp.h>

#include "hltag/error.hpp"

#ifndef HLTAG_VERSION
#define HLTAG_VERSION "unknown"
#endif

namespace hltag::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 unavailable");
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest;
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

RunManifest::RunManifest(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)), argv_(std::move(argv)), started_at_(utc_timestamp()) {}

void RunManifest::add_input(const std::filesystem::path& path) { inputs_.push_back(path); }
void RunManifest::add_output(const std::filesystem::path& path) { outputs_.push_back(path); }

void RunManifest::write(const std::filesystem::path& path, int exit_code) {
  Json j;
  j["tool"] = "hltag";
  j["version"] = HLTAG_VERSION;
  j["command"] = command_;
  j["argv"] = argv_;
  j["exit_code"] = exit_code;
  j["seed"] = seed_ ? Json(*seed_) : Json(nullptr);
  j["config"] = config_;
  auto digests = [](const std::vector<std::filesystem::path>& paths) {
    Json arr = Json::array();
    for (const auto& p : paths) {
      Json e;
      e["path"] = p.string();
      e["sha256"] = std::filesystem::exists(p) ? Json(sha256_file(p)) : Json(nullptr);
      arr.push_back(e);
    }
    return arr;
  };
  j["inputs"] = digests(inputs_);
  j["outputs"] = digests(outputs_);
  j["result"] = result_;
  j["timestamps"] = {{"started_at", started_at_}, {"finished_at", utc_timestamp()}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace hltag::cli
