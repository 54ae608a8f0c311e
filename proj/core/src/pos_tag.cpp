#include "hltag/pos_tag.hpp"

#include <algorithm>
#include <string>

#include "hltag/error.hpp"

namespace hltag {

PosTag tag_from_code(int c) {
  if (c < 0 || c >= kNumTags) throw Error("tag code out of range: " + std::to_string(c));
  return static_cast<PosTag>(c);
}

std::optional<PosTag> try_parse_tag(std::string_view text) noexcept {
  const auto* it = std::find(kTagNames.begin(), kTagNames.end(), text);
  if (it == kTagNames.end()) return std::nullopt;
  return static_cast<PosTag>(it - kTagNames.begin());
}

PosTag parse_tag(std::string_view text) {
  if (auto tag = try_parse_tag(text)) return *tag;
  throw Error("unknown UPOS tag '" + std::string(text) + "'");
}

std::vector<int> to_codes(const TagSequence& tags) {
  std::vector<int> out;
  out.reserve(tags.size());
  for (PosTag t : tags) out.push_back(code(t));
  return out;
}

TagSequence from_codes(const std::vector<int>& codes) {
  TagSequence out;
  out.reserve(codes.size());
  for (int c : codes) out.push_back(tag_from_code(c));
  return out;
}

}  // namespace hltag
