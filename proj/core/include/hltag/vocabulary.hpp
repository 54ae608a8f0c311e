#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hltag/corpus.hpp"

namespace hltag {

/// Word and character id maps. Id 0 is UNK in both. Word keys are lowercased;
/// character keys are cased code points.
class Vocabulary {
 public:
  static constexpr int kUnk = 0;

  Vocabulary() = default;

  /// `words[i]` and `chars[i]` receive id i + 1.
  Vocabulary(std::vector<std::string> words, std::vector<char32_t> chars, int min_freq);

  /// Lowercases `form` before lookup.
  int word_id(std::string_view form) const;
  int char_id(char32_t c) const;
  std::vector<int> char_ids(std::string_view form) const;

  int word_count() const noexcept { return static_cast<int>(words_.size()) + 1; }
  int char_count() const noexcept { return static_cast<int>(chars_.size()) + 1; }
  int min_freq() const noexcept { return min_freq_; }

  /// Known words in id order (id 1 first).
  const std::vector<std::string>& words() const noexcept { return words_; }
  const std::vector<char32_t>& chars() const noexcept { return chars_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.words_ == b.words_ && a.chars_ == b.chars_ && a.min_freq_ == b.min_freq_;
  }

 private:
  std::vector<std::string> words_;
  std::vector<char32_t> chars_;
  std::unordered_map<std::string, int> word_index_;
  std::unordered_map<char32_t, int> char_index_;
  int min_freq_ = 1;
};

/// Ids are assigned by descending frequency, ties broken lexicographically
/// (byte order for words, code point order for characters). Words seen fewer
/// than `min_freq` times map to UNK; all characters are kept.
Vocabulary build_vocab(std::span<const Corpus> corpora, int min_freq = 1);

}  // namespace hltag
