#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hltag/pos_tag.hpp"

namespace hltag {

/// Names one training/evaluation register. Names are unique within a run and
/// indices are dense from 0.
struct DomainId {
  std::string name;
  int index = 0;

  friend bool operator==(const DomainId&, const DomainId&) = default;
};

struct Token {
  std::string form;
  std::optional<PosTag> gold_tag;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::string id;
  std::vector<Token> tokens;
  DomainId domain;

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }

  /// True when every token carries a tag (and there is at least one token).
  bool is_tagged() const noexcept;

  std::vector<std::string> forms() const;

  /// Throws hltag::Error if any token is untagged.
  TagSequence gold_tags() const;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

/// Checks token and tagging invariants: at least one token, non-empty forms
/// without whitespace, and either all or no tokens tagged.
void validate(const Sentence& sentence);

/// Builds a sentence from forms and optional tags (tags empty = untagged).
Sentence make_sentence(std::string id, const std::vector<std::string>& forms,
                       const TagSequence& tags = {}, DomainId domain = {});

struct Corpus {
  DomainId domain;
  std::vector<Sentence> sentences;

  std::size_t size() const noexcept { return sentences.size(); }
  bool empty() const noexcept { return sentences.empty(); }
  std::size_t token_count() const noexcept;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

/// Returns a copy of `corpus` with every sentence re-labelled to `domain`.
Corpus with_domain(Corpus corpus, const DomainId& domain);

// CoNLL-U --------------------------------------------------------------------

/// Reads CoNLL-U. FORM and UPOS columns are kept; multiword-token ranges
/// ("3-4") and empty nodes ("5.1") are skipped. Sentence ids come from
/// `# sent_id = ...` comments, otherwise "<domain>-<ordinal>".
Corpus parse_conllu(std::istream& in, const DomainId& domain);
Corpus parse_conllu(std::string_view text, const DomainId& domain);

/// Writes a fully tagged corpus. Columns other than ID, FORM and UPOS are "_".
void write_conllu(const Corpus& corpus, std::ostream& out);
std::string write_conllu(const Corpus& corpus);

// Headline / lead pairs -------------------------------------------------------

struct SentencePair {
  Sentence headline;
  Sentence lead;
};

/// Reads JSON lines of {"id", "headline_tokens", "lead_tokens"}. Blank lines
/// are ignored. Order is preserved and nothing is filtered.
std::vector<SentencePair> parse_pairs(std::istream& in);
std::vector<SentencePair> parse_pairs(std::string_view text);

/// Deterministically shuffles under `seed` and cuts the corpus into folds of
/// floor(fraction * n) sentences, giving any remainder to the first fold.
std::vector<Corpus> split_corpus(const Corpus& corpus, const std::vector<double>& fractions,
                                 std::uint64_t seed);

}  // namespace hltag
