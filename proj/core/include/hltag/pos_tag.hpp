#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace hltag {

/// The 17 Universal Dependencies part-of-speech tags. Codes are stable and
/// follow alphabetical order; confusion matrices and head outputs index by them.
enum class PosTag : std::uint8_t {
  ADJ,
  ADP,
  ADV,
  AUX,
  CCONJ,
  DET,
  INTJ,
  NOUN,
  NUM,
  PART,
  PRON,
  PROPN,
  PUNCT,
  SCONJ,
  SYM,
  VERB,
  X,
};

inline constexpr int kNumTags = 17;

inline constexpr std::array<std::string_view, kNumTags> kTagNames = {
    "ADJ",  "ADP",  "ADV",  "AUX",   "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};

constexpr int code(PosTag tag) noexcept { return static_cast<int>(tag); }
constexpr std::string_view name(PosTag tag) noexcept { return kTagNames[code(tag)]; }

/// Throws hltag::Error for codes outside [0, 17).
PosTag tag_from_code(int code);

std::optional<PosTag> try_parse_tag(std::string_view text) noexcept;

/// Throws hltag::Error for anything that is not one of the 17 tag names.
PosTag parse_tag(std::string_view text);

using TagSequence = std::vector<PosTag>;

std::vector<int> to_codes(const TagSequence& tags);
TagSequence from_codes(const std::vector<int>& codes);

}  // namespace hltag
