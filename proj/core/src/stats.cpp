#include "hltag/stats.hpp"

#include <charconv>
#include <unordered_set>

#include <json.hpp>

#include "hltag/error.hpp"
#include "hltag/text.hpp"

namespace hltag {

CorpusStats corpus_stats(const Corpus& corpus) {
  if (corpus.empty()) throw Error("corpus_stats: empty corpus");
  CorpusStats stats;
  std::unordered_set<std::string> types;
  std::array<std::size_t, kNumTags> counts{};
  std::size_t tagged = 0;
  for (const auto& s : corpus.sentences) {
    for (const auto& t : s.tokens) {
      ++stats.token_count;
      types.insert(text::to_lower(t.form));
      if (t.gold_tag) {
        ++counts[code(*t.gold_tag)];
        ++tagged;
      }
    }
  }
  if (stats.token_count == 0) throw Error("corpus_stats: corpus has no tokens");
  stats.sentence_count = corpus.size();
  stats.type_token_ratio = static_cast<double>(types.size()) / static_cast<double>(stats.token_count);
  stats.mean_length = static_cast<double>(stats.token_count) / static_cast<double>(stats.sentence_count);
  if (tagged > 0) {
    stats.has_tags = true;
    for (int i = 0; i < kNumTags; ++i)
      stats.tag_unigram[i] = static_cast<double>(counts[i]) / static_cast<double>(tagged);
  }
  return stats;
}

std::string to_json(const CorpusStats& stats) {
  nlohmann::ordered_json j;
  j["sentence_count"] = stats.sentence_count;
  j["token_count"] = stats.token_count;
  j["type_token_ratio"] = stats.type_token_ratio;
  j["mean_length"] = stats.mean_length;
  auto& unigram = j["tag_unigram"] = nlohmann::ordered_json::object();
  if (stats.has_tags) {
    for (int i = 0; i < kNumTags; ++i) unigram[std::string(kTagNames[i])] = stats.tag_unigram[i];
  }
  return j.dump(2) + "\n";
}

std::string tag_distribution_csv(const std::vector<std::pair<std::string, CorpusStats>>& named) {
  if (named.empty()) throw Error("tag distribution needs at least one corpus");
  std::string out = "tag";
  for (const auto& [label, stats] : named) {
    if (label.find_first_of(",\"\n") != std::string::npos)
      throw Error("corpus label '" + label + "' cannot be used as a CSV column name");
    out += ',' + label;
  }
  out += '\n';
  char buf[32];
  for (int i = 0; i < kNumTags; ++i) {
    out += kTagNames[i];
    for (const auto& [label, stats] : named) {
      auto res = std::to_chars(buf, buf + sizeof buf, stats.tag_unigram[i]);
      out += ',';
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  return out;
}

}  // namespace hltag
