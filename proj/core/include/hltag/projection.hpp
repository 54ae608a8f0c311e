#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hltag/corpus.hpp"
#include "hltag/model.hpp"

namespace hltag {

/// indices[i] is the lead position of headline token i; strictly increasing.
struct Alignment {
  std::vector<std::size_t> indices;

  friend bool operator==(const Alignment&, const Alignment&) = default;
};

struct AlignedPair {
  Sentence headline;
  Sentence lead;
  Alignment alignment;
};

/// Matches every headline token, after Unicode lowercasing, to the earliest
/// unused lead position to the right of the previous match. Returns nothing
/// when the headline is not a subsequence of the lead. Throws on empty input.
std::optional<Alignment> align_subsequence(std::span<const std::string> headline,
                                           std::span<const std::string> lead);

/// Pairs a headline with its lead when alignable.
std::optional<AlignedPair> align_pair(const SentencePair& pair);

/// output[i] = lead_tags[alignment.indices[i]].
TagSequence project_tags(const AlignedPair& pair, const TagSequence& lead_tags);

struct SilverCorpusReport {
  std::size_t candidates = 0;
  std::size_t aligned = 0;
  std::size_t train_count = 0;
  std::size_t val_count = 0;
};

std::string to_json(const SilverCorpusReport& report);

struct SilverCorpus {
  Corpus train;
  Corpus val;
  SilverCorpusReport report;
};

/// Keeps alignable pairs, tags each lead with `tagger`, projects the tags onto
/// the headline, then shuffles under `seed` and puts floor(train_frac * n)
/// headlines in train and the rest in val. Headlines are labelled with
/// `silver_domain`. Throws when no pair aligns; `report_out`, if given, is
/// filled before any throw.
SilverCorpus build_silver_corpus(const std::vector<SentencePair>& pairs, const SentenceTagger& tagger,
                                 const DomainId& silver_domain, double train_frac, std::uint64_t seed,
                                 SilverCorpusReport* report_out = nullptr);

SilverCorpus build_silver_corpus(const std::vector<SentencePair>& pairs, const TaggerModel& tagger,
                                 const std::string& tagger_domain, const DomainId& silver_domain,
                                 double train_frac, std::uint64_t seed, SilverCorpusReport* report_out = nullptr);

}  // namespace hltag
