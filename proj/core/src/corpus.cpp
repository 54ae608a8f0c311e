#include "hltag/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hltag/error.hpp"
#include "hltag/rng.hpp"
#include "hltag/text.hpp"

namespace hltag {

bool Sentence::is_tagged() const noexcept {
  return !tokens.empty() &&
         std::all_of(tokens.begin(), tokens.end(), [](const Token& t) { return t.gold_tag.has_value(); });
}

std::vector<std::string> Sentence::forms() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.form);
  return out;
}

TagSequence Sentence::gold_tags() const {
  TagSequence out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!t.gold_tag) throw Error("sentence '" + id + "' has an untagged token '" + t.form + "'");
    out.push_back(*t.gold_tag);
  }
  return out;
}

void validate(const Sentence& sentence) {
  if (sentence.tokens.empty()) throw Error("sentence '" + sentence.id + "' has no tokens");
  std::size_t tagged = 0;
  for (const auto& t : sentence.tokens) {
    if (t.form.empty()) throw Error("sentence '" + sentence.id + "' has an empty token");
    if (text::has_whitespace(t.form))
      throw Error("sentence '" + sentence.id + "': token '" + t.form + "' contains whitespace");
    if (t.gold_tag) ++tagged;
  }
  if (tagged != 0 && tagged != sentence.tokens.size())
    throw Error("sentence '" + sentence.id + "' is only partially tagged");
}

Sentence make_sentence(std::string id, const std::vector<std::string>& forms, const TagSequence& tags,
                       DomainId domain) {
  if (!tags.empty() && tags.size() != forms.size())
    throw MismatchError("sentence '" + id + "': " + std::to_string(forms.size()) + " forms but " +
                        std::to_string(tags.size()) + " tags");
  Sentence s{std::move(id), {}, std::move(domain)};
  s.tokens.reserve(forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) {
    Token tok{forms[i], std::nullopt};
    if (!tags.empty()) tok.gold_tag = tags[i];
    s.tokens.push_back(std::move(tok));
  }
  validate(s);
  return s;
}

std::size_t Corpus::token_count() const noexcept {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

Corpus with_domain(Corpus corpus, const DomainId& domain) {
  corpus.domain = domain;
  for (auto& s : corpus.sentences) s.domain = domain;
  return corpus;
}

std::vector<Corpus> split_corpus(const Corpus& corpus, const std::vector<double>& fractions,
                                 std::uint64_t seed) {
  if (fractions.empty()) throw Error("split_corpus: no fractions given");
  double total = 0.0;
  for (double f : fractions) {
    if (!(f > 0.0)) throw Error("split_corpus: fractions must be positive");
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error("split_corpus: fractions must sum to 1");
  const std::size_t n = corpus.size();
  if (n < fractions.size())
    throw Error("split_corpus: " + std::to_string(n) + " sentences cannot fill " +
                std::to_string(fractions.size()) + " folds");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = make_stream(seed, "split");
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::size_t> sizes;
  std::size_t allocated = 0;
  for (double f : fractions) {
    sizes.push_back(static_cast<std::size_t>(std::floor(f * static_cast<double>(n) + 1e-9)));
    allocated += sizes.back();
  }
  sizes.front() += n - allocated;

  std::vector<Corpus> folds;
  std::size_t pos = 0;
  for (std::size_t size : sizes) {
    Corpus fold{corpus.domain, {}};
    fold.sentences.reserve(size);
    for (std::size_t i = 0; i < size; ++i) fold.sentences.push_back(corpus.sentences[order[pos++]]);
    folds.push_back(std::move(fold));
  }
  return folds;
}

}  // namespace hltag
