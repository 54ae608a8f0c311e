#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hltag/corpus.hpp"

namespace hltag {

struct CorpusStats {
  /// Relative frequency per tag code. All zero when the corpus is untagged.
  std::array<double, kNumTags> tag_unigram{};
  bool has_tags = false;
  double type_token_ratio = 0.0;  ///< distinct lowercased forms / tokens
  double mean_length = 0.0;       ///< tokens / sentences
  std::size_t sentence_count = 0;
  std::size_t token_count = 0;
};

/// Throws hltag::Error on an empty corpus.
CorpusStats corpus_stats(const Corpus& corpus);

/// JSON object with the CorpusStats fields; `tag_unigram` is keyed by tag name.
std::string to_json(const CorpusStats& stats);

/// CSV with a `tag` column followed by one relative-frequency column per named
/// corpus. Rows follow tag-code order.
std::string tag_distribution_csv(const std::vector<std::pair<std::string, CorpusStats>>& named);

}  // namespace hltag
