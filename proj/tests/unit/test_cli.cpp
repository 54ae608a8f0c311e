#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "hltag/cli.hpp"
#include "hltag/model_io.hpp"
#include "synthetic.hpp"

using namespace hltag;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result hl(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("hltag-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

const DomainId kD{"news", 0};

std::string small_config() {
  return R"({"word_dim": 6, "char_dim": 4, "char_hidden": 3, "hidden": 8, "layers": 1, "epochs": 2, "batch_size": 8, "learning_rate": 0.01})";
}

Corpus synthetic_body(std::size_t n, std::uint64_t seed) {
  testing::SyntheticOptions opt;
  opt.body_train = n;
  opt.body_val = opt.body_test = opt.pairs = opt.headline_test = 1;
  opt.seed = seed;
  return testing::generate_registers(opt).body_train;
}

// Emissions depend only on the tag: bias[NOUN] = 1, and end_scores[VERB] = 5
// pulls the last token towards VERB. A lone token is tagged VERB; with a
// period appended it becomes NOUN.
TaggerModel mock_model(const Corpus& corpus) {
  const std::vector<Corpus> corpora{corpus};
  ModelDims d;
  d.word_dim = 2;
  d.char_dim = 2;
  d.char_hidden = 1;
  d.hidden = 2;
  d.layers = 1;
  TaggerModel m = make_model(build_vocab(corpora), {"news"}, d, true, 1);
  DomainHead& h = m.params.heads[0];
  h.emission_weight.setZero();
  h.emission_bias.setZero();
  h.emission_bias(code(PosTag::NOUN)) = 1.0;
  h.end_scores(code(PosTag::VERB)) = 5.0;
  return m;
}

}  // namespace

TEST_CASE("help lists defaults") {
  const auto project = hl({"project", "--help"});
  CHECK(project.code == 0);
  CHECK(project.out.find("0.7") != std::string::npos);
  const auto search = hl({"search", "--help"});
  CHECK(search.out.find("10") != std::string::npos);
  const auto compare = hl({"compare", "--help"});
  CHECK(compare.out.find("2000") != std::string::npos);
  CHECK(compare.out.find("0.2") != std::string::npos);
  CHECK(compare.out.find("0.01") != std::string::npos);
  CHECK(hl({"--help"}).code == 0);
}

TEST_CASE("usage errors exit 1 before any work") {
  TempDir dir;
  CHECK(hl({}).code == cli::kUsage);
  CHECK(hl({"frobnicate"}).code == cli::kUsage);
  CHECK(hl({"stats", "--in", "x.conllu", "--out-json", dir / "s.json", "--out-csv", dir / "s.csv", "--bogus"}).code ==
        cli::kUsage);
  CHECK_FALSE(fs::exists(dir / "s.json"));
  CHECK(hl({"train", "--train", "corpus.conllu", "--out", dir / "m.json"}).code == cli::kUsage);
}

TEST_CASE("stats") {
  TempDir dir;
  spit(dir / "a.conllu", write_conllu(synthetic_body(20, 1)));
  spit(dir / "b.conllu", write_conllu(synthetic_body(10, 2)));
  auto r = hl({"stats", "--in", dir / "a.conllu", "--out-json", dir / "s.json", "--out-csv", dir / "s.csv"});
  CHECK(r.code == 0);
  CHECK(json::parse(slurp(dir / "s.json")).contains("a"));
  CHECK(slurp(dir / "s.csv").rfind("tag,a\n", 0) == 0);
  const json manifest = json::parse(slurp(dir / "s.json.manifest.json"));
  CHECK(manifest["command"] == "stats");
  CHECK(manifest["inputs"][0]["sha256"].get<std::string>().size() == 64);
  CHECK(manifest["timestamps"].contains("started_at"));

  r = hl({"stats", "--in", dir / "a.conllu", "--in", dir / "b.conllu@other", "--out-json", dir / "t.json", "--out-csv",
          dir / "t.csv"});
  CHECK(r.code == 0);
  CHECK(slurp(dir / "t.csv").rfind("tag,a,other\n", 0) == 0);

  r = hl({"stats", "--in", dir / "missing.conllu", "--out-json", dir / "u.json", "--out-csv", dir / "u.csv"});
  CHECK(r.code == cli::kIo);
  CHECK_FALSE(r.err.empty());

  spit(dir / "empty.conllu", "");
  r = hl({"stats", "--in", dir / "empty.conllu", "--out-json", dir / "v.json", "--out-csv", dir / "v.csv"});
  CHECK(r.code == cli::kEmpty);
}

TEST_CASE("train, tag and manifest replay") {
  TempDir dir;
  spit(dir / "train.conllu", write_conllu(synthetic_body(40, 3)));
  spit(dir / "val.conllu", write_conllu(synthetic_body(10, 4)));
  spit(dir / "config.json", small_config());
  const std::vector<std::string> args{"train", "--train", dir / "train.conllu@body", "--val", dir / "val.conllu@body",
                                      "--config", dir / "config.json", "--seed", "5", "--out", dir / "model.json"};
  REQUIRE(hl(args).code == 0);
  const TaggerModel m = load_model(fs::path(dir / "model.json"));
  CHECK(m.domains == std::vector<std::string>{"body"});
  CHECK(m.dims.hidden == 8);
  CHECK(slurp(dir / "model.json.trials.jsonl").find("\"epochs\"") != std::string::npos);

  const std::string first = slurp(dir / "model.json");
  const json manifest = json::parse(slurp(dir / "model.json.manifest.json"));
  CHECK(manifest["seed"] == 5);
  CHECK(manifest["config"]["train"]["epochs"] == 2);
  CHECK(manifest["result"]["selected_head"] == "body");
  // rerun exactly what the manifest recorded
  auto argv = manifest["argv"].get<std::vector<std::string>>();
  argv.erase(argv.begin());
  REQUIRE(hl(argv).code == 0);
  CHECK(slurp(dir / "model.json") == first);

  const auto r = hl({"tag", "--model", dir / "model.json", "--domain", "body", "--in", dir / "val.conllu", "--out",
                     dir / "pred.conllu"});
  CHECK(r.code == 0);
  const Corpus pred = parse_conllu(slurp(dir / "pred.conllu"), kD);
  CHECK(pred.size() == 10);
  CHECK(pred.sentences[0].is_tagged());
  CHECK(hl({"tag", "--model", dir / "model.json", "--domain", "nope", "--in", dir / "val.conllu", "--out",
            dir / "p2.conllu"})
            .code == cli::kUsage);
}

TEST_CASE("search writes one log record per run") {
  TempDir dir;
  spit(dir / "train.conllu", write_conllu(synthetic_body(30, 5)));
  spit(dir / "val.conllu", write_conllu(synthetic_body(8, 6)));
  spit(dir / "config.json", R"({"word_dim": 6, "char_dim": 4, "char_hidden": 3, "hidden": 8, "layers": 1, "epochs_high": 2})");
  const auto r = hl({"search", "--train", dir / "train.conllu@body", "--val", dir / "val.conllu@body", "--config",
                     dir / "config.json", "--budget", "2", "--seeds", "1", "--out", dir / "best.json", "--report",
                     dir / "search.json"});
  REQUIRE(r.code == 0);
  std::istringstream log(slurp(dir / "best.json.trials.jsonl"));
  int records = 0;
  for (std::string line; std::getline(log, line);)
    if (!line.empty()) ++records;
  CHECK(records == 2);
  const json report = json::parse(slurp(dir / "search.json"));
  CHECK(report["trials"].size() == 2);
  CHECK(load_model(fs::path(dir / "best.json")).domains == std::vector<std::string>{"body"});

  spit(dir / "val2.conllu", write_conllu(synthetic_body(8, 7)));
  CHECK(hl({"search", "--train", dir / "train.conllu@body", "--val", dir / "val.conllu@body", "--val",
            dir / "val2.conllu@other", "--config", dir / "config.json", "--budget", "1", "--seeds", "1", "--out",
            dir / "x.json"})
            .code == cli::kUsage);
  spit(dir / "bad.json", R"({"seed": 3})");
  CHECK(hl({"train", "--train", dir / "train.conllu@body", "--config", dir / "bad.json", "--out", dir / "y.json"})
            .code == cli::kUsage);
}

TEST_CASE("project") {
  TempDir dir;
  const Corpus body = synthetic_body(10, 8);
  save_model(mock_model(body), fs::path(dir / "tagger.json"));
  spit(dir / "pairs.jsonl",
       R"({"id":"p1","headline_tokens":["Twinkies","Back"],"lead_tokens":["Twinkies","are","back","."]})"
       "\n"
       R"({"id":"p2","headline_tokens":["Obama","wins"],"lead_tokens":["Obama","wins","the","vote"]})"
       "\n"
       R"({"id":"p3","headline_tokens":["Storm","hits"],"lead_tokens":["a","storm","hits","the","city"]})"
       "\n");
  auto r = hl({"project", "--pairs", dir / "pairs.jsonl", "--tagger", dir / "tagger.json", "--out-train",
               dir / "silver-train.conllu", "--out-val", dir / "silver-val.conllu", "--report", dir / "report.json"});
  REQUIRE(r.code == 0);
  CHECK(parse_conllu(slurp(dir / "silver-train.conllu"), kD).size() == 2);
  CHECK(parse_conllu(slurp(dir / "silver-val.conllu"), kD).size() == 1);
  CHECK(json::parse(slurp(dir / "report.json"))["aligned"] == 3);
  CHECK(json::parse(slurp(dir / "report.json.manifest.json"))["config"]["train_frac"] == 0.7);

  spit(dir / "bad-pairs.jsonl", R"({"id":"q","headline_tokens":["zzz"],"lead_tokens":["a","b"]})"
                                "\n");
  r = hl({"project", "--pairs", dir / "bad-pairs.jsonl", "--tagger", dir / "tagger.json", "--out-train",
          dir / "t2.conllu", "--out-val", dir / "v2.conllu", "--report", dir / "report2.json"});
  CHECK(r.code == cli::kEmpty);
  CHECK(json::parse(slurp(dir / "report2.json"))["aligned"] == 0);
}

TEST_CASE("tag, eval and compare with a mock model") {
  TempDir dir;
  const Corpus body = synthetic_body(10, 9);
  save_model(mock_model(body), fs::path(dir / "mock.json"));

  // gold where every multi-token sentence is NOUN except a final VERB: the mock is perfect on it
  Corpus gold{kD, {}};
  gold.sentences.push_back(make_sentence("g1", {"bill", "plans"}, {PosTag::NOUN, PosTag::VERB}, kD));
  gold.sentences.push_back(make_sentence("g2", {"a", "b", "c"}, {PosTag::NOUN, PosTag::NOUN, PosTag::VERB}, kD));
  spit(dir / "gold.conllu", write_conllu(gold));
  REQUIRE(hl({"tag", "--model", dir / "mock.json", "--domain", "news", "--in", dir / "gold.conllu", "--out",
              dir / "pred.conllu"})
              .code == 0);
  auto r = hl({"eval", "--gold", dir / "gold.conllu", "--pred", dir / "pred.conllu", "--report", dir / "eval.json"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(slurp(dir / "eval.json"))["token_accuracy"] == 1.0);

  r = hl({"compare", "--gold", dir / "gold.conllu", "--pred-a", dir / "pred.conllu", "--pred-b", dir / "pred.conllu",
          "--report", dir / "cmp.json"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("not significant", 0) == 0);
  const json cmp = json::parse(slurp(dir / "cmp.json"));
  CHECK(cmp["p_value"] == 1.0);
  CHECK(cmp["replications"] == 2000);

  // mismatch: prediction file missing a token
  Corpus short_pred = parse_conllu(slurp(dir / "pred.conllu"), kD);
  short_pred.sentences[1].tokens.pop_back();
  spit(dir / "short.conllu", write_conllu(short_pred));
  r = hl({"eval", "--gold", dir / "gold.conllu", "--pred", dir / "short.conllu", "--report", dir / "e2.json"});
  CHECK(r.code == cli::kMismatch);
  CHECK(r.err.find("g2") != std::string::npos);
}

TEST_CASE("--append-period changes the Viterbi path on a constructed case") {
  TempDir dir;
  save_model(mock_model(synthetic_body(5, 10)), fs::path(dir / "mock.json"));
  Corpus heads{kD, {make_sentence("h1", {"Storm"}, {}, kD)}};
  spit(dir / "in.conllu", "# sent_id = h1\n1\tStorm\t_\t_\t_\t_\t_\t_\t_\t_\n\n");
  REQUIRE(hl({"tag", "--model", dir / "mock.json", "--domain", "news", "--in", dir / "in.conllu", "--out",
              dir / "plain.conllu"})
              .code == 0);
  REQUIRE(hl({"tag", "--model", dir / "mock.json", "--domain", "news", "--in", dir / "in.conllu", "--out",
              dir / "period.conllu", "--append-period"})
              .code == 0);
  const Corpus plain = parse_conllu(slurp(dir / "plain.conllu"), kD);
  const Corpus period = parse_conllu(slurp(dir / "period.conllu"), kD);
  REQUIRE(period.sentences[0].size() == 1);
  CHECK(plain.sentences[0].gold_tags() == TagSequence{PosTag::VERB});
  CHECK(period.sentences[0].gold_tags() == TagSequence{PosTag::NOUN});
}
