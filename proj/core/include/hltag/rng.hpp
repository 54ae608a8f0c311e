#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hltag {

using Rng = std::mt19937_64;

/// Independent stream keyed by (seed, purpose). Shuffling, dropout and
/// initialisation each draw from their own stream so changing one does not
/// perturb the others.
Rng make_stream(std::uint64_t seed, std::string_view purpose);

/// Sub-stream for the `index`-th replicate of a purpose (e.g. bootstrap draws).
Rng make_stream(std::uint64_t seed, std::string_view purpose, std::uint64_t index);

}  // namespace hltag
