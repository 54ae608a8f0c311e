// Acceptance gate: one PASS/FAIL line per criterion. Exit status is non-zero
// when any criterion fails. `acceptance N...` runs only the listed criteria.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hltag/bootstrap.hpp"
#include "hltag/crf.hpp"
#include "hltag/metrics.hpp"
#include "hltag/model.hpp"
#include "hltag/projection.hpp"
#include "hltag/search.hpp"
#include "hltag/stats.hpp"
#include "hltag/trainer.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

#ifdef HLTAG_HAVE_CLI
#include "hltag/cli.hpp"
#endif

using namespace hltag;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, int precision = 4) {
  std::ostringstream out;
  out << std::setprecision(precision) << x;
  return out.str();
}

// 1. Forward algorithm and Viterbi against brute-force enumeration.
Outcome crf_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  int argmax_mismatch = 0;
  double worst_rel = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    const int k = std::uniform_int_distribution<int>(2, 5)(rng);
    const DomainHead head = testing::random_crf_head(k, -2, 2, rng);
    const Eigen::MatrixXd e = testing::random_matrix(n, k, -2, 2, rng);
    if (viterbi_decode(e, head) != testing::enumerate_argmax(e, head)) ++argmax_mismatch;
    const double ours = crf_log_partition(e, head);
    const double ref = testing::enumerate_log_partition(e, head);
    worst_rel = std::max(worst_rel, std::abs(ours - ref) / std::max(std::abs(ref), 1e-300));
  }
  const double secs = seconds_since(t0);
  return {argmax_mismatch == 0 && worst_rel <= 1e-8 && secs < 30,
          "1000 instances, argmax mismatches " + std::to_string(argmax_mismatch) + ", max relative logZ error " +
              fmt(worst_rel, 3) + ", " + fmt(secs, 3) + " s"};
}

// 2. Analytic gradients against central differences on a tiny model.
Outcome gradient_check() {
  const auto t0 = Clock::now();
  const DomainId a{"a", 0}, b{"b", 1};
  const std::vector<Sentence> sents{
      make_sentence("s1", {"Stocks", "fall", "sharply"}, {PosTag::ADJ, PosTag::ADP, PosTag::ADV}, a),
      make_sentence("s2", {"markets", "Rally"}, {PosTag::ADV, PosTag::ADJ}, b)};
  const std::vector<Corpus> corpora{Corpus{a, sents}};
  ModelDims dims;
  dims.word_dim = 4;
  dims.char_dim = 4;
  dims.char_hidden = 2;
  dims.hidden = 6;
  dims.num_tags = 3;
  const std::vector<const Sentence*> batch{&sents[0], &sents[1]};

  double worst = 0.0;
  std::string worst_name;
  std::size_t tensors = 0;
  for (bool use_crf : {true, false}) {
    TaggerModel model = make_model(build_vocab(corpora), {"a", "b"}, dims, use_crf, 7);
    std::mt19937_64 rng(8);
    for (auto& h : model.params.heads) {
      const DomainHead r = testing::random_crf_head(3, -0.5, 0.5, rng);
      h.transitions = r.transitions;
      h.start_scores = r.start_scores;
      h.end_scores = r.end_scores;
    }
    Rng unused(0);
    const LossGradient analytic = loss_and_gradient(model, batch, 0.0, unused);
    const Parameters numeric = testing::finite_difference_gradient(
        model.params, [&] { return batch_loss(model, batch, 0.0, unused); }, 1e-5);
    for (const auto& [name, err] : testing::relative_errors(analytic.gradient, numeric)) {
      ++tensors;
      if (err > worst) {
        worst = err;
        worst_name = (use_crf ? "crf:" : "softmax:") + name;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-4 && secs < 60, std::to_string(tensors) + " tensors (CRF and softmax), max relative error " +
                                          fmt(worst, 3) + " at " + worst_name + ", " + fmt(secs, 3) + " s"};
}

// 3. Greedy alignment against exhaustive subsequence search, and exact projection.
Outcome projection_soundness() {
  std::mt19937_64 rng(77);
  const std::vector<std::string> alphabet{"a", "A", "b", "c", "C", "d", "e"};
  int existence_mismatch = 0, projection_errors = 0, aligned = 0;
  for (int i = 0; i < 500; ++i) {
    const int ln = std::uniform_int_distribution<int>(1, 10)(rng);
    std::vector<std::string> lead;
    TagSequence lead_tags;
    for (int t = 0; t < ln; ++t) {
      lead.push_back(alphabet[rng() % alphabet.size()]);
      lead_tags.push_back(tag_from_code(static_cast<int>(rng() % kNumTags)));
    }
    std::vector<std::string> headline;
    if (i % 2 == 0) {
      // subsequence of the lead with random case flips
      for (const auto& w : lead)
        if (rng() % 2) headline.push_back(rng() % 2 ? w : std::string(1, static_cast<char>(std::toupper(w[0]))));
      if (headline.empty()) headline.push_back(lead.back());
    } else {
      const int hn = std::uniform_int_distribution<int>(1, 4)(rng);
      for (int t = 0; t < hn; ++t) headline.push_back(alphabet[rng() % alphabet.size()]);
    }
    const auto matches = testing::enumerate_subsequence_matches(headline, lead);
    const SentencePair pair{make_sentence(std::to_string(i), headline), make_sentence(std::to_string(i), lead)};
    const auto ap = align_pair(pair);
    if (ap.has_value() == matches.empty()) {
      ++existence_mismatch;
      continue;
    }
    if (!ap) continue;
    ++aligned;
    const TagSequence projected = project_tags(*ap, lead_tags);
    const auto& idx = ap->alignment.indices;
    bool ok = projected.size() == headline.size() &&
              std::find(matches.begin(), matches.end(), idx) != matches.end();
    for (std::size_t t = 0; ok && t < projected.size(); ++t) ok = projected[t] == lead_tags[idx[t]];
    if (!ok) ++projection_errors;
  }
  return {existence_mismatch == 0 && projection_errors == 0,
          "500 pairs (" + std::to_string(aligned) + " alignable), existence mismatches " +
              std::to_string(existence_mismatch) + ", projection errors " + std::to_string(projection_errors)};
}

// 4 and 5. Synthetic register transfer and the CRF ablation share one experiment.
struct SeedResult {
  double body_crf = 0.0;
  double body_softmax = 0.0;
  double multi = 0.0;
  std::string multi_head;
};

struct TransferExperiment {
  std::vector<SeedResult> seeds;
  double seconds = 0.0;
};

TrainConfig transfer_config(std::uint64_t seed, bool use_crf) {
  TrainConfig c;
  c.learning_rate = 5e-3;
  c.dropout_rate = 0.2;
  c.epochs = 3;
  c.batch_size = 32;
  c.seed = seed;
  c.use_crf = use_crf;
  return c;
}

double headline_accuracy(const Corpus& gold, const std::function<TagSequence(const Sentence&)>& tag) {
  std::vector<TagSequence> preds;
  for (const auto& s : gold.sentences) preds.push_back(tag(s));
  return evaluate(gold, preds).token_accuracy;
}

const TransferExperiment& transfer_experiment() {
  static const TransferExperiment result = [] {
    TransferExperiment ex;
    const auto t0 = Clock::now();
    for (std::uint64_t seed : {1, 2, 3}) {
      testing::SyntheticOptions opt;
      opt.seed = seed;
      const auto reg = testing::generate_registers(opt);
      const std::string body = testing::kBodyDomain.name;
      const std::string head = testing::kHeadlineDomain.name;

      const std::vector<Corpus> body_only{reg.body_train};
      const Vocabulary body_vocab = build_vocab(body_only);
      SeedResult r;

      TaggerModel body_crf = make_model(body_vocab, {body}, ModelDims{}, true, seed);
      train(body_crf, body_only, {reg.body_val}, transfer_config(seed, true));
      const SentenceTagger body_tagger = make_tagger(body_crf, body);
      r.body_crf = headline_accuracy(reg.headline_test,
                                     [&](const Sentence& s) { return tag_with_final_period(body_tagger, s); });

      TaggerModel body_soft = make_model(body_vocab, {body}, ModelDims{}, false, seed);
      train(body_soft, body_only, {reg.body_val}, transfer_config(seed, false));
      const SentenceTagger soft_tagger = make_tagger(body_soft, body);
      r.body_softmax = headline_accuracy(reg.headline_test,
                                         [&](const Sentence& s) { return tag_with_final_period(soft_tagger, s); });

      // silver headlines from the body tagger's predictions on the leads
      const SilverCorpus silver =
          build_silver_corpus(reg.pairs, body_tagger, testing::kHeadlineDomain, 0.7, seed);
      const std::vector<Corpus> multi_train{reg.body_train, silver.train};
      TaggerModel multi = make_model(build_vocab(multi_train), {body, head}, ModelDims{}, true, seed);
      train(multi, multi_train, {reg.body_val, silver.val}, transfer_config(seed, true));
      r.multi_head = select_decoder_head(multi, silver.val);
      r.multi = headline_accuracy(reg.headline_test,
                                  [&](const Sentence& s) { return tag_sentence(multi, s, r.multi_head); });
      ex.seeds.push_back(r);
    }
    ex.seconds = seconds_since(t0);
    return ex;
  }();
  return result;
}

std::string pct(double x) { return fmt(100.0 * x, 4); }

Outcome register_transfer() {
  const auto& ex = transfer_experiment();
  bool pass = ex.seconds < 600;
  std::string detail;
  for (std::size_t i = 0; i < ex.seeds.size(); ++i) {
    const auto& r = ex.seeds[i];
    const double gain = 100.0 * (r.multi - r.body_crf);
    pass = pass && gain >= 2.0;
    detail += "seed " + std::to_string(i + 1) + ": body " + pct(r.body_crf) + " -> multi[" + r.multi_head + "] " +
              pct(r.multi) + " (" + (gain >= 0 ? "+" : "") + fmt(gain, 3) + "); ";
  }
  return {pass, detail + fmt(ex.seconds, 4) + " s for all runs"};
}

Outcome crf_ablation() {
  const auto& ex = transfer_experiment();
  int wins = 0;
  std::string detail;
  for (std::size_t i = 0; i < ex.seeds.size(); ++i) {
    const auto& r = ex.seeds[i];
    if (r.body_crf >= r.body_softmax) ++wins;
    detail += "seed " + std::to_string(i + 1) + ": crf " + pct(r.body_crf) + " vs softmax " + pct(r.body_softmax) + "; ";
  }
  return {wins >= 2, detail + "CRF >= softmax on " + std::to_string(wins) + " of 3"};
}

// 6. Bootstrap on constructed predictions.
Outcome bootstrap_sanity() {
  const auto t0 = Clock::now();
  const DomainId g{"gold", 0};
  Corpus gold{g, {}};
  for (int i = 0; i < 100; ++i) gold.sentences.push_back(make_sentence("h" + std::to_string(i), {"x", "y"},
                                                                       {PosTag::NOUN, PosTag::VERB}, g));
  std::vector<TagSequence> right, wrong, mixed;
  for (int i = 0; i < 100; ++i) {
    right.push_back({PosTag::NOUN, PosTag::VERB});
    wrong.push_back({PosTag::VERB, PosTag::NOUN});
    mixed.push_back(i % 3 ? right.back() : wrong.back());
  }
  const BootstrapConfig cfg{};
  const auto same = bootstrap_compare(gold, mixed, mixed, cfg);
  const auto extreme = bootstrap_compare(gold, wrong, right, cfg);
  const auto again = bootstrap_compare(gold, wrong, right, cfg);
  const auto mixed1 = bootstrap_compare(gold, mixed, right, cfg);
  const auto mixed2 = bootstrap_compare(gold, mixed, right, cfg);
  const double secs = seconds_since(t0);
  const bool pass = same.p_value >= 0.5 && !same.significant && extreme.p_value == 1.0 / 2001 &&
                    extreme.p_value < 0.01 && extreme.significant && again.p_value == extreme.p_value &&
                    mixed1.p_value == mixed2.p_value && secs < 10;
  return {pass, "identical p=" + fmt(same.p_value) + ", all-correct vs all-wrong p=" + fmt(extreme.p_value, 6) +
                    " (1/2001=" + fmt(1.0 / 2001, 6) + "), resample size " + std::to_string(extreme.resample_size) +
                    ", rerun identical, " + fmt(secs, 3) + " s"};
}

// 7. Statistics on hand-built corpora; real corpora when supplied.
Outcome stats_fidelity() {
  const DomainId d{"hand", 0};
  Corpus c{d, {}};
  c.sentences.push_back(make_sentence("1", {"The", "cat", "sat", "."}, {PosTag::DET, PosTag::NOUN, PosTag::VERB, PosTag::PUNCT}, d));
  c.sentences.push_back(make_sentence("2", {"the", "Cat"}, {PosTag::DET, PosTag::PROPN}, d));
  // 6 tokens; lowercased forms {the, cat, sat, .} -> TTR 4/6; mean length 3
  // tags: DET 2, NOUN 1, VERB 1, PUNCT 1, PROPN 1
  const CorpusStats s = corpus_stats(c);
  bool pass = std::abs(s.mean_length - 3.0) < 1e-12 && s.token_count == 6 && s.sentence_count == 2;
  pass = pass && std::abs(s.type_token_ratio - 4.0 / 6.0) < 1e-12;
  std::array<double, kNumTags> expected{};
  expected[code(PosTag::DET)] = 2.0 / 6;
  expected[code(PosTag::NOUN)] = 1.0 / 6;
  expected[code(PosTag::VERB)] = 1.0 / 6;
  expected[code(PosTag::PUNCT)] = 1.0 / 6;
  expected[code(PosTag::PROPN)] = 1.0 / 6;
  for (int k = 0; k < kNumTags; ++k) pass = pass && std::abs(s.tag_unigram[k] - expected[k]) < 1e-12;

  Corpus repeat{d, {make_sentence("r", {"a", "b", "a"}, {PosTag::NOUN, PosTag::NOUN, PosTag::VERB}, d)}};
  const CorpusStats r = corpus_stats(repeat);
  pass = pass && std::abs(r.type_token_ratio - 2.0 / 3) < 1e-12 && std::abs(r.tag_unigram[code(PosTag::NOUN)] - 2.0 / 3) < 1e-12;

  std::string detail = "hand-built TTR " + fmt(s.type_token_ratio) + ", mean length " + fmt(s.mean_length) +
                       ", unigram exact; ";
  const char* ewt_path = std::getenv("HLTAG_EWT_CONLLU");
  const char* gsch_path = std::getenv("HLTAG_GSCH_CONLLU");
  if (ewt_path && gsch_path && fs::exists(ewt_path) && fs::exists(gsch_path)) {
    std::ifstream ein(ewt_path), gin(gsch_path);
    const double ewt = corpus_stats(parse_conllu(ein, DomainId{"ewt", 0})).type_token_ratio;
    const double gsch = corpus_stats(parse_conllu(gin, DomainId{"gsch", 1})).type_token_ratio;
    const bool real_ok = std::abs(gsch - 0.273) <= 0.02 && std::abs(ewt - 0.076) <= 0.02;
    pass = pass && real_ok;
    detail += "real corpora TTR headline " + fmt(gsch) + " / body " + fmt(ewt);
  } else {
    detail += "real-corpus clause skipped (HLTAG_EWT_CONLLU / HLTAG_GSCH_CONLLU not set)";
  }
  return {pass, detail};
}

#ifdef HLTAG_HAVE_CLI
// 8. The whole command-line pipeline, run twice in the same directory.
std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    if (entry.path().string().ends_with(".manifest.json")) {
      auto j = nlohmann::ordered_json::parse(text);
      j.erase("timestamps");
      text = j.dump();
    }
    files[entry.path().filename().string()] = text;
  }
  return files;
}

Outcome cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / "hltag-acceptance-cli";
  fs::remove_all(dir);
  fs::create_directories(dir);
  testing::SyntheticOptions opt;
  opt.body_train = 200;
  opt.body_val = 50;
  opt.body_test = 1;
  opt.pairs = 150;
  opt.headline_test = 60;
  opt.seed = 11;
  const auto reg = testing::generate_registers(opt);
  auto put = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name, std::ios::binary) << text;
  };
  put("body-train.conllu", write_conllu(reg.body_train));
  put("body-val.conllu", write_conllu(reg.body_val));
  put("headline-test.conllu", write_conllu(reg.headline_test));
  std::string pairs;
  for (const auto& p : reg.pairs) {
    nlohmann::json j;
    j["id"] = p.headline.id;
    j["headline_tokens"] = p.headline.forms();
    j["lead_tokens"] = p.lead.forms();
    pairs += j.dump() + "\n";
  }
  put("pairs.jsonl", pairs);
  put("config.json", R"({"word_dim": 16, "char_dim": 8, "char_hidden": 8, "hidden": 24, "epochs": 2, "learning_rate": 0.01, "dropout_rate": 0.2})");
  put("search.json", R"({"word_dim": 16, "char_dim": 8, "char_hidden": 8, "hidden": 24, "epochs_high": 3})");
  const std::set<std::string> inputs{"body-train.conllu", "body-val.conllu", "headline-test.conllu", "pairs.jsonl",
                                     "config.json", "search.json"};
  auto f = [&](const std::string& name) { return (dir / name).string(); };
  const std::vector<std::vector<std::string>> pipeline{
      {"stats", "--in", f("body-train.conllu") + "@body", "--in", f("headline-test.conllu") + "@headline",
       "--out-json", f("stats.json"), "--out-csv", f("stats.csv")},
      {"train", "--train", f("body-train.conllu") + "@body", "--val", f("body-val.conllu") + "@body", "--config",
       f("config.json"), "--seed", "3", "--out", f("body.model")},
      {"project", "--pairs", f("pairs.jsonl"), "--tagger", f("body.model"), "--seed", "3", "--out-train",
       f("silver-train.conllu"), "--out-val", f("silver-val.conllu"), "--report", f("silver.json")},
      {"search", "--train", f("body-train.conllu") + "@body", "--train", f("silver-train.conllu") + "@headline",
       "--val", f("body-val.conllu") + "@body", "--val", f("silver-val.conllu") + "@headline", "--select-domain",
       "headline", "--config", f("search.json"), "--budget", "2", "--seeds", "2", "--seed", "3", "--out",
       f("multi.model"), "--report", f("search-report.json")},
      {"tag", "--model", f("body.model"), "--domain", "body", "--in", f("headline-test.conllu"), "--out",
       f("body-pred.conllu"), "--append-period"},
      {"tag", "--model", f("multi.model"), "--domain", "headline", "--in", f("headline-test.conllu"), "--out",
       f("multi-pred.conllu")},
      {"eval", "--gold", f("headline-test.conllu"), "--pred", f("multi-pred.conllu"), "--report", f("eval.json")},
      {"compare", "--gold", f("headline-test.conllu"), "--pred-a", f("body-pred.conllu"), "--pred-b",
       f("multi-pred.conllu"), "--seed", "3", "--report", f("compare.json")},
  };
  auto run_all = [&]() -> std::string {
    for (const auto& args : pipeline) {
      std::ostringstream out, err;
      const int code = cli::run(args, out, err);
      if (code != 0) return args.front() + " exited " + std::to_string(code) + ": " + err.str();
    }
    return "";
  };
  auto clear_outputs = [&] {
    for (const auto& entry : fs::directory_iterator(dir))
      if (!inputs.count(entry.path().filename().string())) fs::remove(entry.path());
  };
  const auto t0 = Clock::now();
  if (auto e = run_all(); !e.empty()) return {false, "first run: " + e};
  const auto first = snapshot(dir);
  clear_outputs();
  if (auto e = run_all(); !e.empty()) return {false, "second run: " + e};
  const auto second = snapshot(dir);
  const double secs = seconds_since(t0);
  std::size_t differing = 0;
  std::string names;
  for (const auto& [name, text] : first) {
    auto it = second.find(name);
    if (it == second.end() || it->second != text) {
      ++differing;
      names += " " + name;
    }
  }
  const std::size_t produced = first.size() - inputs.size();
  fs::remove_all(dir);
  return {differing == 0 && first.size() == second.size(),
          std::to_string(pipeline.size()) + " commands, " + std::to_string(produced) +
              " output files compared (manifests without timestamps), " + std::to_string(differing) +
              " differ" + names + ", " + fmt(secs, 3) + " s"};
}
#endif

struct Criterion {
  int number;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria{
      {1, "crf-oracle-equivalence", crf_oracle},
      {2, "gradient-correctness", gradient_check},
      {3, "projection-soundness", projection_soundness},
      {4, "synthetic-register-transfer", register_transfer},
      {5, "crf-vs-softmax-ablation", crf_ablation},
      {6, "bootstrap-sanity", bootstrap_sanity},
      {7, "statistics-fidelity", stats_fidelity},
#ifdef HLTAG_HAVE_CLI
      {8, "cli-determinism", cli_determinism},
#else
      {8, "cli-determinism", [] { return Outcome{false, "CLI not built"}; }},
#endif
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.number)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.number << "] " << c.name << ": " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
