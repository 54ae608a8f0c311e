#include "hltag/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "hltag/error.hpp"
#include "hltag/rng.hpp"
#include "hltag/text.hpp"

namespace hltag {

std::optional<Alignment> align_subsequence(std::span<const std::string> headline,
                                           std::span<const std::string> lead) {
  if (headline.empty() || lead.empty()) throw Error("align_subsequence: headline and lead must be non-empty");
  Alignment a;
  a.indices.reserve(headline.size());
  std::size_t pos = 0;
  for (const auto& token : headline) {
    const std::string key = text::to_lower(token);
    while (pos < lead.size() && text::to_lower(lead[pos]) != key) ++pos;
    if (pos == lead.size()) return std::nullopt;
    a.indices.push_back(pos++);
  }
  return a;
}

std::optional<AlignedPair> align_pair(const SentencePair& pair) {
  const auto h = pair.headline.forms();
  const auto l = pair.lead.forms();
  auto alignment = align_subsequence(h, l);
  if (!alignment) return std::nullopt;
  return AlignedPair{pair.headline, pair.lead, std::move(*alignment)};
}

TagSequence project_tags(const AlignedPair& pair, const TagSequence& lead_tags) {
  if (lead_tags.size() != pair.lead.size())
    throw MismatchError("project_tags: " + std::to_string(lead_tags.size()) + " tags for a lead of " +
                        std::to_string(pair.lead.size()) + " tokens");
  if (pair.alignment.indices.size() != pair.headline.size())
    throw MismatchError("project_tags: alignment length differs from headline length");
  TagSequence out;
  out.reserve(pair.alignment.indices.size());
  for (std::size_t idx : pair.alignment.indices) {
    if (idx >= lead_tags.size())
      throw MismatchError("project_tags: alignment index " + std::to_string(idx) + " is outside the lead");
    out.push_back(lead_tags[idx]);
  }
  return out;
}

std::string to_json(const SilverCorpusReport& r) {
  nlohmann::ordered_json j;
  j["candidates"] = r.candidates;
  j["aligned"] = r.aligned;
  j["train_count"] = r.train_count;
  j["val_count"] = r.val_count;
  return j.dump(2) + "\n";
}

SilverCorpus build_silver_corpus(const std::vector<SentencePair>& pairs, const SentenceTagger& tagger,
                                 const DomainId& silver_domain, double train_frac, std::uint64_t seed,
                                 SilverCorpusReport* report_out) {
  if (!(train_frac > 0.0 && train_frac < 1.0)) throw Error("train_frac must lie in (0, 1)");
  SilverCorpusReport report;
  report.candidates = pairs.size();

  std::vector<Sentence> silver;
  for (const auto& pair : pairs) {
    auto aligned = align_pair(pair);
    if (!aligned) continue;
    const TagSequence lead_tags = tagger(aligned->lead);
    const TagSequence tags = project_tags(*aligned, lead_tags);
    Sentence headline = aligned->headline;
    headline.domain = silver_domain;
    for (std::size_t i = 0; i < tags.size(); ++i) headline.tokens[i].gold_tag = tags[i];
    silver.push_back(std::move(headline));
  }
  report.aligned = silver.size();
  if (silver.empty()) {
    if (report_out) *report_out = report;
    throw Error("no headline is a subsequence of its lead sentence");
  }

  std::vector<std::size_t> order(silver.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = make_stream(seed, "silver-split");
  std::shuffle(order.begin(), order.end(), rng);
  report.train_count =
      static_cast<std::size_t>(std::floor(train_frac * static_cast<double>(silver.size()) + 1e-9));
  report.val_count = silver.size() - report.train_count;

  SilverCorpus out{{silver_domain, {}}, {silver_domain, {}}, report};
  for (std::size_t k = 0; k < order.size(); ++k)
    (k < report.train_count ? out.train : out.val).sentences.push_back(std::move(silver[order[k]]));
  if (report_out) *report_out = report;
  return out;
}

SilverCorpus build_silver_corpus(const std::vector<SentencePair>& pairs, const TaggerModel& tagger,
                                 const std::string& tagger_domain, const DomainId& silver_domain,
                                 double train_frac, std::uint64_t seed, SilverCorpusReport* report_out) {
  return build_silver_corpus(pairs, make_tagger(tagger, tagger_domain), silver_domain, train_frac, seed,
                             report_out);
}

}  // namespace hltag
