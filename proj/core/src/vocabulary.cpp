#include "hltag/vocabulary.hpp"

#include <algorithm>
#include <map>

#include "hltag/error.hpp"
#include "hltag/text.hpp"

namespace hltag {

Vocabulary::Vocabulary(std::vector<std::string> words, std::vector<char32_t> chars, int min_freq)
    : words_(std::move(words)), chars_(std::move(chars)), min_freq_(min_freq) {
  if (min_freq < 1) throw Error("vocabulary min_freq must be at least 1");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!word_index_.emplace(words_[i], static_cast<int>(i) + 1).second)
      throw Error("duplicate vocabulary word '" + words_[i] + "'");
  }
  for (std::size_t i = 0; i < chars_.size(); ++i) {
    if (!char_index_.emplace(chars_[i], static_cast<int>(i) + 1).second)
      throw Error("duplicate vocabulary character");
  }
}

int Vocabulary::word_id(std::string_view form) const {
  auto it = word_index_.find(text::to_lower(form));
  return it == word_index_.end() ? kUnk : it->second;
}

int Vocabulary::char_id(char32_t c) const {
  auto it = char_index_.find(c);
  return it == char_index_.end() ? kUnk : it->second;
}

std::vector<int> Vocabulary::char_ids(std::string_view form) const {
  std::vector<int> ids;
  for (char32_t c : text::code_points(form)) ids.push_back(char_id(c));
  return ids;
}

namespace {

template <class Key>
std::vector<Key> by_frequency(const std::map<Key, long>& counts, long min_freq) {
  std::vector<std::pair<Key, long>> items;
  for (const auto& [k, n] : counts)
    if (n >= min_freq) items.emplace_back(k, n);
  // std::map iteration is already key-ordered, so a stable sort on count keeps
  // the lexicographic tie-break.
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<Key> keys;
  keys.reserve(items.size());
  for (auto& [k, n] : items) keys.push_back(k);
  return keys;
}

}  // namespace

Vocabulary build_vocab(std::span<const Corpus> corpora, int min_freq) {
  if (corpora.empty()) throw Error("build_vocab: no corpora given");
  if (min_freq < 1) throw Error("build_vocab: min_freq must be at least 1");
  std::map<std::string, long> word_counts;
  std::map<char32_t, long> char_counts;
  for (const auto& corpus : corpora) {
    for (const auto& s : corpus.sentences) {
      for (const auto& t : s.tokens) {
        ++word_counts[text::to_lower(t.form)];
        for (char32_t c : text::code_points(t.form)) ++char_counts[c];
      }
    }
  }
  return Vocabulary(by_frequency(word_counts, min_freq), by_frequency(char_counts, 1), min_freq);
}

}  // namespace hltag
