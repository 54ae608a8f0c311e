#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hltag/corpus.hpp"
#include "hltag/model.hpp"

namespace hltag {

/// Rows are gold tags, columns predicted tags, both in tag-code order.
using ConfusionMatrix = std::array<std::array<std::int64_t, kNumTags>, kNumTags>;

struct TagScores {
  std::optional<double> precision;  // empty when the tag was never predicted
  std::optional<double> recall;     // empty when the tag never occurs in gold
  std::int64_t support = 0;         // gold occurrences
};

struct EvalReport {
  double token_accuracy = 0.0;
  double sequence_accuracy = 0.0;  // sentences with every token correct
  std::size_t token_count = 0;
  std::size_t sentence_count = 0;
  ConfusionMatrix confusion{};
  std::array<TagScores, kNumTags> per_tag{};
};

/// `predictions[i]` must have the length of gold sentence i. Throws
/// hltag::MismatchError naming the first sentence that does not line up.
EvalReport evaluate(const Corpus& gold, const std::vector<TagSequence>& predictions);

/// a.confusion - b.confusion. Both reports must cover the same gold tokens.
ConfusionMatrix confusion_diff(const EvalReport& a, const EvalReport& b);

/// JSON with the metrics, the 17x17 confusion matrix (tag-code order) and
/// per-tag precision/recall keyed by tag name.
std::string to_json(const EvalReport& report);

/// Copy of `sentence` with a final "." token appended (tagged PUNCT when the
/// sentence is tagged). Always appends, even after an existing period.
Sentence with_final_period(const Sentence& sentence);

/// Tags with_final_period(sentence) and drops the prediction for the
/// appended token, so the result has the original length.
TagSequence tag_with_final_period(const SentenceTagger& tagger, const Sentence& sentence);

}  // namespace hltag
