#include "hltag/rng.hpp"

namespace hltag {
namespace {

// FNV-1a; std::hash is not stable across standard libraries.
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Rng seeded(std::uint64_t seed, std::uint64_t label, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(label), static_cast<std::uint32_t>(label >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

}  // namespace

Rng make_stream(std::uint64_t seed, std::string_view purpose) {
  return seeded(seed, fnv1a(purpose), 0);
}

Rng make_stream(std::uint64_t seed, std::string_view purpose, std::uint64_t index) {
  return seeded(seed, fnv1a(purpose), index + 1);
}

}  // namespace hltag
