#include "hltag/metrics.hpp"

#include <json.hpp>

#include "hltag/error.hpp"

namespace hltag {

EvalReport evaluate(const Corpus& gold, const std::vector<TagSequence>& predictions) {
  if (predictions.size() != gold.size())
    throw MismatchError("gold has " + std::to_string(gold.size()) + " sentences but predictions have " +
                        std::to_string(predictions.size()));
  EvalReport r;
  std::size_t correct = 0, perfect = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const Sentence& s = gold.sentences[i];
    const TagSequence& pred = predictions[i];
    if (pred.size() != s.size())
      throw MismatchError("sentence '" + s.id + "': " + std::to_string(s.size()) + " gold tokens but " +
                          std::to_string(pred.size()) + " predicted tags");
    const TagSequence truth = s.gold_tags();
    bool all = true;
    for (std::size_t t = 0; t < truth.size(); ++t) {
      ++r.confusion[code(truth[t])][code(pred[t])];
      if (truth[t] == pred[t])
        ++correct;
      else
        all = false;
    }
    perfect += all;
    r.token_count += truth.size();
  }
  r.sentence_count = gold.size();
  if (r.token_count == 0) throw Error("evaluate: gold corpus has no tokens");
  r.token_accuracy = static_cast<double>(correct) / static_cast<double>(r.token_count);
  r.sequence_accuracy = static_cast<double>(perfect) / static_cast<double>(r.sentence_count);

  for (int t = 0; t < kNumTags; ++t) {
    std::int64_t gold_n = 0, pred_n = 0;
    for (int o = 0; o < kNumTags; ++o) {
      gold_n += r.confusion[t][o];
      pred_n += r.confusion[o][t];
    }
    const auto tp = static_cast<double>(r.confusion[t][t]);
    r.per_tag[t].support = gold_n;
    if (pred_n > 0) r.per_tag[t].precision = tp / static_cast<double>(pred_n);
    if (gold_n > 0) r.per_tag[t].recall = tp / static_cast<double>(gold_n);
  }
  return r;
}

ConfusionMatrix confusion_diff(const EvalReport& a, const EvalReport& b) {
  std::array<std::int64_t, kNumTags> rows_a{}, rows_b{};
  for (int g = 0; g < kNumTags; ++g) {
    for (int p = 0; p < kNumTags; ++p) {
      rows_a[g] += a.confusion[g][p];
      rows_b[g] += b.confusion[g][p];
    }
  }
  if (a.token_count != b.token_count || rows_a != rows_b)
    throw MismatchError("confusion_diff: reports were computed on different gold corpora");
  ConfusionMatrix d{};
  for (int g = 0; g < kNumTags; ++g)
    for (int p = 0; p < kNumTags; ++p) d[g][p] = a.confusion[g][p] - b.confusion[g][p];
  return d;
}

std::string to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["token_accuracy"] = r.token_accuracy;
  j["sequence_accuracy"] = r.sequence_accuracy;
  j["token_count"] = r.token_count;
  j["sentence_count"] = r.sentence_count;
  j["tags"] = kTagNames;
  j["confusion"] = r.confusion;
  auto& per_tag = j["per_tag"] = nlohmann::ordered_json::object();
  for (int t = 0; t < kNumTags; ++t) {
    nlohmann::ordered_json e;
    e["precision"] = r.per_tag[t].precision ? nlohmann::ordered_json(*r.per_tag[t].precision) : nullptr;
    e["recall"] = r.per_tag[t].recall ? nlohmann::ordered_json(*r.per_tag[t].recall) : nullptr;
    e["support"] = r.per_tag[t].support;
    per_tag[std::string(kTagNames[t])] = std::move(e);
  }
  return j.dump(2) + "\n";
}

Sentence with_final_period(const Sentence& sentence) {
  Sentence out = sentence;
  Token period{".", std::nullopt};
  if (sentence.is_tagged()) period.gold_tag = PosTag::PUNCT;
  out.tokens.push_back(std::move(period));
  return out;
}

TagSequence tag_with_final_period(const SentenceTagger& tagger, const Sentence& sentence) {
  if (sentence.empty()) throw Error("cannot tag an empty sentence ('" + sentence.id + "')");
  TagSequence tags = tagger(with_final_period(sentence));
  if (tags.size() != sentence.size() + 1) throw MismatchError("tagger returned the wrong number of tags");
  tags.pop_back();
  return tags;
}

}  // namespace hltag
