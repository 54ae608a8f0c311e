#include "hltag/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "hltag/bootstrap.hpp"
#include "hltag/corpus.hpp"
#include "hltag/metrics.hpp"
#include "hltag/model_io.hpp"
#include "hltag/projection.hpp"
#include "hltag/search.hpp"
#include "hltag/stats.hpp"
#include "hltag/trainer.hpp"
#include "manifest.hpp"
#include "options.hpp"

namespace hltag::cli {
namespace {

namespace fs = std::filesystem;

class EmptyResult : public Error {
 public:
  using Error::Error;
};

struct Context {
  std::vector<std::string> argv;
  std::ostream& out;
  std::ostream& err;
};

fs::path manifest_path(const std::string& flag, const fs::path& primary) {
  return flag.empty() ? fs::path(primary.string() + ".manifest.json") : fs::path(flag);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

Corpus load_corpus(const fs::path& path, const DomainId& domain, RunManifest& manifest) {
  if (!fs::is_regular_file(path)) throw IoError("cannot read " + path.string());
  manifest.add_input(path);
  return parse_conllu(read_file(path), domain);
}

TaggerModel load_model_file(const fs::path& path, RunManifest& manifest) {
  if (!fs::is_regular_file(path)) throw IoError("cannot read " + path.string());
  manifest.add_input(path);
  return load_model(path);
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

/// Runs `body`, then writes the manifest whatever the outcome.
int with_manifest(RunManifest& manifest, const fs::path& path, const std::function<int()>& body) {
  int code = kOk;
  std::exception_ptr failure;
  try {
    code = body();
  } catch (...) {
    failure = std::current_exception();
  }
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const UsageError&) {
      code = kUsage;
    } catch (const EmptyResult&) {
      code = kEmpty;
    } catch (const MismatchError&) {
      code = kMismatch;
    } catch (const IoError&) {
      code = kIo;
    } catch (const ParseError&) {
      code = kIo;
    } catch (...) {
      code = kUsage;
    }
  }
  try {
    manifest.write(path, code);
  } catch (...) {
  }
  if (failure) std::rethrow_exception(failure);
  return code;
}

// ---- stats ----------------------------------------------------------------

struct StatsArgs {
  std::vector<std::string> inputs;
  std::string out_json, out_csv, manifest;
};

int run_stats(const StatsArgs& a, Context& ctx) {
  RunManifest manifest("stats", ctx.argv);
  return with_manifest(manifest, manifest_path(a.manifest, a.out_json), [&] {
    std::vector<std::pair<std::string, CorpusStats>> named;
    Json all = Json::object();
    for (std::size_t i = 0; i < a.inputs.size(); ++i) {
      const auto at = a.inputs[i].rfind('@');
      const fs::path path = at == std::string::npos ? fs::path(a.inputs[i]) : fs::path(a.inputs[i].substr(0, at));
      const std::string name = at == std::string::npos ? path.stem().string() : a.inputs[i].substr(at + 1);
      const Corpus c = load_corpus(path, DomainId{name, static_cast<int>(i)}, manifest);
      if (c.empty()) throw EmptyResult(path.string() + " contains no sentences");
      const CorpusStats s = corpus_stats(c);
      all[name] = Json::parse(to_json(s));
      named.emplace_back(name, s);
    }
    write_file(a.out_json, json_text(all));
    write_file(a.out_csv, tag_distribution_csv(named));
    manifest.add_output(a.out_json);
    manifest.add_output(a.out_csv);
    return kOk;
  });
}

// ---- project --------------------------------------------------------------

struct ProjectArgs {
  std::string pairs, tagger, tagger_domain, silver_domain = "headline";
  double train_frac = 0.7;
  std::uint64_t seed = 0;
  std::string out_train, out_val, report, manifest;
};

int run_project(const ProjectArgs& a, Context& ctx) {
  RunManifest manifest("project", ctx.argv);
  manifest.set_seed(a.seed);
  manifest.set_config({{"train_frac", a.train_frac}, {"tagger_domain", a.tagger_domain},
                       {"silver_domain", a.silver_domain}});
  return with_manifest(manifest, manifest_path(a.manifest, a.report), [&] {
    if (!(a.train_frac > 0.0 && a.train_frac < 1.0)) throw UsageError("--train-frac must lie in (0, 1)");
    if (!fs::is_regular_file(a.pairs)) throw IoError("cannot read " + a.pairs);
    manifest.add_input(a.pairs);
    const auto pairs = parse_pairs(read_file(a.pairs));
    const TaggerModel model = load_model_file(a.tagger, manifest);
    std::string domain = a.tagger_domain;
    if (domain.empty()) {
      if (model.domains.size() != 1) throw UsageError("--tagger-domain is required for a multi-head model");
      domain = model.domains.front();
    }
    if (!model.has_head(domain)) throw UsageError("model has no head '" + domain + "'");

    SilverCorpusReport report;
    report.candidates = pairs.size();
    std::optional<SilverCorpus> silver;
    try {
      silver = build_silver_corpus(pairs, model, domain, DomainId{a.silver_domain, 0}, a.train_frac, a.seed, &report);
    } catch (const Error&) {
      if (report.aligned != 0) throw;
    }
    write_file(a.report, to_json(report) + "\n");
    manifest.add_output(a.report);
    manifest.set_result(Json::parse(to_json(report)));
    if (!silver) throw EmptyResult("no headline aligned with its lead sentence");
    write_file(a.out_train, write_conllu(silver->train));
    write_file(a.out_val, write_conllu(silver->val));
    manifest.add_output(a.out_train);
    manifest.add_output(a.out_val);
    return kOk;
  });
}

// ---- train / search -------------------------------------------------------

struct TrainArgs {
  std::vector<std::string> train, val;
  std::string config, select_domain, out, log, report, manifest, word_vectors;
  std::uint64_t seed = 0;
  int budget = 10;
  int seeds = 3;
};

struct TrainingData {
  std::vector<Corpus> train, val;
  std::vector<std::string> domains;  // head order: first appearance in --train
  std::string selection;             // empty when there is no validation data
};

TrainingData load_training_data(const TrainArgs& a, RunManifest& manifest) {
  TrainingData d;
  std::map<std::string, int> index;
  auto domain_of = [&](const std::string& name) {
    auto [it, inserted] = index.emplace(name, static_cast<int>(index.size()));
    return DomainId{name, it->second};
  };
  std::vector<CorpusSpec> train_specs, val_specs;
  for (const auto& s : a.train) train_specs.push_back(parse_corpus_spec(s));
  for (const auto& s : a.val) val_specs.push_back(parse_corpus_spec(s));
  for (const auto& s : train_specs) {
    if (std::find(d.domains.begin(), d.domains.end(), s.domain) == d.domains.end()) d.domains.push_back(s.domain);
    domain_of(s.domain);
  }
  std::vector<std::string> val_domains;
  for (const auto& s : val_specs)
    if (std::find(val_domains.begin(), val_domains.end(), s.domain) == val_domains.end())
      val_domains.push_back(s.domain);
  if (!a.select_domain.empty()) {
    if (std::find(val_domains.begin(), val_domains.end(), a.select_domain) == val_domains.end())
      throw UsageError("--select-domain '" + a.select_domain + "' has no --val corpus");
    d.selection = a.select_domain;
  } else if (val_domains.size() > 1) {
    throw UsageError("--select-domain is required with validation corpora from several domains");
  } else if (val_domains.size() == 1) {
    d.selection = val_domains.front();
  }
  for (const auto& s : train_specs) d.train.push_back(load_corpus(s.path, domain_of(s.domain), manifest));
  // validation corpora of one domain are pooled so each domain has one score
  for (const auto& name : val_domains) {
    Corpus pooled{domain_of(name), {}};
    for (const auto& s : val_specs)
      if (s.domain == name) {
        Corpus c = load_corpus(s.path, pooled.domain, manifest);
        pooled.sentences.insert(pooled.sentences.end(), c.sentences.begin(), c.sentences.end());
      }
    d.val.push_back(std::move(pooled));
  }
  std::size_t total = 0;
  for (const auto& c : d.train) total += c.size();
  if (total == 0) throw EmptyResult("training corpora contain no sentences");
  for (const auto& c : d.val)
    if (c.empty()) throw EmptyResult("validation corpus for '" + c.domain.name + "' is empty");
  return d;
}

Json history_json(const TrainHistory& h) {
  Json arr = Json::array();
  for (const auto& e : h.epochs) {
    Json rec;
    rec["epoch"] = e.epoch;
    rec["train_loss"] = e.train_loss;
    Json acc = Json::object();
    for (const auto& [k, v] : e.val_accuracy) acc[k] = v;
    rec["val_accuracy"] = acc;
    arr.push_back(rec);
  }
  return arr;
}

Json run_record_json(const RunRecord& r) {
  Json j;
  j["trial"] = r.trial;
  j["seed_index"] = r.seed_index;
  j["config"] = to_json(r.config);
  j["epochs"] = history_json(r.history);
  Json acc = Json::object();
  for (std::size_t h = 0; h < r.heads.size(); ++h)
    acc[r.heads[h]] = r.head_accuracy[h] < 0 ? Json(nullptr) : Json(r.head_accuracy[h]);
  j["head_accuracy"] = acc;
  return j;
}

Json trial_json(const TrialResult& t) {
  Json j;
  j["index"] = t.index;
  Json config = to_json(t.config);
  config.erase("seed");
  j["config"] = config;
  j["per_seed_val_token_acc"] = t.per_seed_val_token_acc;
  j["mean"] = t.mean;
  j["stddev"] = t.stddev;
  j["selected_head"] = t.selected_head;
  return j;
}

ModelFactory model_factory(const TrainingData& data, const RunConfig& rc, const std::string& word_vectors) {
  auto vocab = std::make_shared<const Vocabulary>(build_vocab(data.train, rc.min_freq));
  std::shared_ptr<const std::string> vectors;
  if (!word_vectors.empty()) vectors = std::make_shared<const std::string>(read_file(word_vectors));
  return [vocab, vectors, domains = data.domains, dims = rc.dims](const TrainConfig& c) {
    TaggerModel m = make_model(*vocab, domains, dims, c.use_crf, c.seed);
    if (vectors) {
      std::istringstream in(*vectors);
      load_word_vectors(m, in);
    }
    return m;
  };
}

int run_train(const TrainArgs& a, Context& ctx, bool search) {
  RunManifest manifest(search ? "search" : "train", ctx.argv);
  manifest.set_seed(a.seed);
  return with_manifest(manifest, manifest_path(a.manifest, a.out), [&] {
    RunConfig rc = load_run_config(a.config.empty() ? std::nullopt : std::optional<fs::path>(a.config));
    if (!a.config.empty()) manifest.add_input(a.config);
    if (!a.word_vectors.empty()) {
      if (!fs::is_regular_file(a.word_vectors)) throw IoError("cannot read " + a.word_vectors);
      manifest.add_input(a.word_vectors);
    }
    rc.train.seed = a.seed;
    if (search) {
      rc.space.budget = a.budget;
      rc.space.seeds_per_trial = a.seeds;
      try {
        validate(rc.space);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    } else {
      try {
        validate(rc.train);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    }
    Json config;
    config["train"] = to_json(rc.train);
    if (search) config["search"] = to_json(rc.space);
    config["model"] = to_json(rc.dims);
    config["min_freq"] = rc.min_freq;
    config["selection_domain"] = a.select_domain;
    manifest.set_config(config);

    const TrainingData data = load_training_data(a, manifest);
    config["selection_domain"] = data.selection;
    config["heads"] = data.domains;
    manifest.set_config(config);
    const ModelFactory factory = model_factory(data, rc, a.word_vectors);
    const fs::path log_path = a.log.empty() ? fs::path(a.out + ".trials.jsonl") : fs::path(a.log);
    std::ostringstream log;
    Json result;

    if (search) {
      if (data.selection.empty()) throw UsageError("search needs at least one --val corpus");
      const TrialRunner runner = make_training_runner(factory, data.train, data.val, data.selection);
      const SearchResult sr = random_search(rc.space, rc.train, runner, [&](const RunRecord& r) {
        log << run_record_json(r).dump() << '\n';
        ctx.err << "trial " << r.trial << " seed " << r.config.seed << " done\n";
      });
      save_model(*sr.best_model, fs::path(a.out));
      result["best"] = trial_json(sr.best);
      Json trials = Json::array();
      for (const auto& t : sr.trials) trials.push_back(trial_json(t));
      result["trials"] = trials;
      result["runs"] = sr.runs.size();
    } else if (!data.selection.empty()) {
      const TrialRunner runner = make_training_runner(factory, data.train, data.val, data.selection);
      const RunOutcome out = runner(rc.train);
      const RunRecord record{0, 0, rc.train, out.heads, out.head_accuracy, out.history};
      log << run_record_json(record).dump() << '\n';
      save_model(*out.model, fs::path(a.out));
      std::size_t best = 0;
      for (std::size_t h = 1; h < out.heads.size(); ++h)
        if (out.head_accuracy[h] > out.head_accuracy[best]) best = h;
      result["selected_head"] = out.heads[best];
      result["val_token_accuracy"] = out.head_accuracy[best];
    } else {
      TaggerModel model = factory(rc.train);
      const TrainHistory history = train(model, data.train, {}, rc.train);
      const RunRecord record{0, 0, rc.train, {}, {}, history};
      log << run_record_json(record).dump() << '\n';
      save_model(model, fs::path(a.out));
    }
    write_file(log_path, log.str());
    manifest.add_output(a.out);
    manifest.add_output(log_path);
    if (!a.report.empty()) {
      write_file(a.report, json_text(result));
      manifest.add_output(a.report);
    }
    manifest.set_result(result);
    return kOk;
  });
}

// ---- tag ------------------------------------------------------------------

struct TagArgs {
  std::string model, domain, in, out, manifest;
  bool append_period = false;
};

int run_tag(const TagArgs& a, Context& ctx) {
  RunManifest manifest("tag", ctx.argv);
  manifest.set_config({{"domain", a.domain}, {"append_period", a.append_period}});
  return with_manifest(manifest, manifest_path(a.manifest, a.out), [&] {
    const TaggerModel model = load_model_file(a.model, manifest);
    if (!model.has_head(a.domain)) throw UsageError("model has no head '" + a.domain + "'");
    Corpus corpus = load_corpus(a.in, DomainId{a.domain, model.head_index(a.domain)}, manifest);
    if (corpus.empty()) throw EmptyResult(a.in + " contains no sentences");
    const SentenceTagger tagger = make_tagger(model, a.domain);
    for (auto& s : corpus.sentences) {
      const TagSequence tags = a.append_period ? tag_with_final_period(tagger, s) : tagger(s);
      for (std::size_t i = 0; i < s.size(); ++i) s.tokens[i].gold_tag = tags[i];
    }
    write_file(a.out, write_conllu(corpus));
    manifest.add_output(a.out);
    return kOk;
  });
}

// ---- eval / compare -------------------------------------------------------

std::vector<TagSequence> predictions_for(const Corpus& gold, const Corpus& pred) {
  std::vector<TagSequence> out;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const Sentence& g = gold.sentences[i];
    if (i >= pred.size()) throw MismatchError("sentence '" + g.id + "' has no prediction");
    const Sentence& p = pred.sentences[i];
    if (p.id != g.id || p.size() != g.size())
      throw MismatchError("sentence '" + g.id + "' does not line up with prediction '" + p.id + "'");
    if (!p.is_tagged()) throw MismatchError("prediction for sentence '" + g.id + "' has no tags");
    out.push_back(p.gold_tags());
  }
  if (pred.size() > gold.size())
    throw MismatchError("prediction '" + pred.sentences[gold.size()].id + "' has no gold sentence");
  return out;
}

Corpus load_gold(const std::string& path, RunManifest& manifest) {
  Corpus gold = load_corpus(path, DomainId{"gold", 0}, manifest);
  if (gold.empty()) throw EmptyResult(path + " contains no sentences");
  for (const auto& s : gold.sentences)
    if (!s.is_tagged()) throw MismatchError("gold sentence '" + s.id + "' is not tagged");
  return gold;
}

struct EvalArgs {
  std::string gold, pred, report, manifest;
};

int run_eval(const EvalArgs& a, Context& ctx) {
  RunManifest manifest("eval", ctx.argv);
  return with_manifest(manifest, manifest_path(a.manifest, a.report), [&] {
    const Corpus gold = load_gold(a.gold, manifest);
    const Corpus pred = load_corpus(a.pred, DomainId{"pred", 0}, manifest);
    const EvalReport report = evaluate(gold, predictions_for(gold, pred));
    write_file(a.report, to_json(report) + "\n");
    manifest.add_output(a.report);
    manifest.set_result({{"token_accuracy", report.token_accuracy}, {"sequence_accuracy", report.sequence_accuracy}});
    ctx.out << "token accuracy " << report.token_accuracy << ", sequence accuracy " << report.sequence_accuracy
            << '\n';
    return kOk;
  });
}

struct CompareArgs {
  std::string gold, pred_a, pred_b, bootstrap_config, report, manifest;
  double fraction = 0.2;
  int replications = 2000;
  double alpha = 0.01;
  std::uint64_t seed = 0;
  bool fraction_set = false, replications_set = false, alpha_set = false;
};

int run_compare(const CompareArgs& a, Context& ctx) {
  RunManifest manifest("compare", ctx.argv);
  manifest.set_seed(a.seed);
  return with_manifest(manifest, manifest_path(a.manifest, a.report), [&] {
    BootstrapConfig cfg = load_bootstrap_config(a.bootstrap_config.empty()
                                                    ? std::nullopt
                                                    : std::optional<fs::path>(a.bootstrap_config));
    if (!a.bootstrap_config.empty()) manifest.add_input(a.bootstrap_config);
    if (a.fraction_set || a.bootstrap_config.empty()) cfg.batch_fraction = a.fraction;
    if (a.replications_set || a.bootstrap_config.empty()) cfg.replications = a.replications;
    if (a.alpha_set || a.bootstrap_config.empty()) cfg.alpha = a.alpha;
    cfg.seed = a.seed;
    if (!(cfg.batch_fraction > 0.0 && cfg.batch_fraction <= 1.0) || cfg.replications < 1 ||
        !(cfg.alpha > 0.0 && cfg.alpha < 1.0))
      throw UsageError("bootstrap settings out of range");
    manifest.set_config(to_json(cfg));
    const Corpus gold = load_gold(a.gold, manifest);
    const Corpus pa = load_corpus(a.pred_a, DomainId{"a", 0}, manifest);
    const Corpus pb = load_corpus(a.pred_b, DomainId{"b", 1}, manifest);
    const BootstrapResult r = bootstrap_compare(gold, predictions_for(gold, pa), predictions_for(gold, pb), cfg);
    write_file(a.report, to_json(r) + "\n");
    manifest.add_output(a.report);
    manifest.set_result(Json::parse(to_json(r)));
    ctx.out << (r.significant ? "significant" : "not significant") << " (p = " << r.p_value
            << ", delta = " << r.observed_delta << ")\n";
    return kOk;
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Part-of-speech tagging for news headlines: statistics, projection, training and evaluation",
               "hltag"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", HLTAG_VERSION_STRING);

  StatsArgs stats;
  auto* cmd_stats = app.add_subcommand("stats", "Corpus statistics as JSON and a tag-distribution CSV");
  cmd_stats->add_option("--in", stats.inputs, "CoNLL-U corpus, optionally <file>@<name>")->required();
  cmd_stats->add_option("--out-json", stats.out_json, "Statistics JSON")->required();
  cmd_stats->add_option("--out-csv", stats.out_csv, "Tag distribution CSV")->required();
  cmd_stats->add_option("--manifest", stats.manifest, "Run manifest (default <out-json>.manifest.json)");

  ProjectArgs project;
  auto* cmd_project = app.add_subcommand("project", "Project lead-sentence tags onto headlines");
  cmd_project->add_option("--pairs", project.pairs, "Headline/lead pairs as JSON lines")->required();
  cmd_project->add_option("--tagger", project.tagger, "Model used to tag the lead sentences")->required();
  cmd_project->add_option("--tagger-domain", project.tagger_domain, "Decoder head of the tagger");
  cmd_project->add_option("--silver-domain", project.silver_domain, "Domain name of the projected headlines");
  cmd_project->add_option("--train-frac", project.train_frac, "Fraction of aligned headlines in the training fold");
  cmd_project->add_option("--seed", project.seed, "Seed for the train/validation shuffle");
  cmd_project->add_option("--out-train", project.out_train, "Silver training CoNLL-U")->required();
  cmd_project->add_option("--out-val", project.out_val, "Silver validation CoNLL-U")->required();
  cmd_project->add_option("--report", project.report, "Projection report JSON")->required();
  cmd_project->add_option("--manifest", project.manifest, "Run manifest (default <report>.manifest.json)");

  TrainArgs train_args, search_args;
  auto add_training_options = [](CLI::App* cmd, TrainArgs& a) {
    cmd->add_option("--train", a.train, "Training corpus as <file>@<domain>")->required();
    cmd->add_option("--val", a.val, "Validation corpus as <file>@<domain>");
    cmd->add_option("--config", a.config, "JSON config; every field optional");
    cmd->add_option("--select-domain", a.select_domain, "Validation domain used for model and head selection");
    cmd->add_option("--word-vectors", a.word_vectors, "Pretrained word vectors, one '<word> v1 ... vD' per line");
    cmd->add_option("--seed", a.seed, "Seed for initialisation, shuffling, dropout and sampling");
    cmd->add_option("--out", a.out, "Model file")->required();
    cmd->add_option("--log", a.log, "Trial log as JSON lines (default <out>.trials.jsonl)");
    cmd->add_option("--report", a.report, "Result JSON");
    cmd->add_option("--manifest", a.manifest, "Run manifest (default <out>.manifest.json)");
  };
  auto* cmd_train = app.add_subcommand("train", "Train one tagger");
  add_training_options(cmd_train, train_args);
  auto* cmd_search = app.add_subcommand("search", "Random hyperparameter search with multi-seed retraining");
  add_training_options(cmd_search, search_args);
  cmd_search->add_option("--budget", search_args.budget, "Number of sampled configurations");
  cmd_search->add_option("--seeds", search_args.seeds, "Training runs per configuration");

  TagArgs tag;
  auto* cmd_tag = app.add_subcommand("tag", "Tag a CoNLL-U file");
  cmd_tag->add_option("--model", tag.model, "Model file")->required();
  cmd_tag->add_option("--domain", tag.domain, "Decoder head")->required();
  cmd_tag->add_option("--in", tag.in, "Input CoNLL-U")->required();
  cmd_tag->add_option("--out", tag.out, "Output CoNLL-U with predicted UPOS")->required();
  cmd_tag->add_flag("--append-period", tag.append_period, "Append a final period before tagging, then drop its tag");
  cmd_tag->add_option("--manifest", tag.manifest, "Run manifest (default <out>.manifest.json)");

  EvalArgs eval;
  auto* cmd_eval = app.add_subcommand("eval", "Score predictions against gold tags");
  cmd_eval->add_option("--gold", eval.gold, "Gold CoNLL-U")->required();
  cmd_eval->add_option("--pred", eval.pred, "Predicted CoNLL-U")->required();
  cmd_eval->add_option("--report", eval.report, "Evaluation report JSON")->required();
  cmd_eval->add_option("--manifest", eval.manifest, "Run manifest (default <report>.manifest.json)");

  CompareArgs compare;
  auto* cmd_compare = app.add_subcommand("compare", "Paired bootstrap test: does B beat A on token accuracy");
  cmd_compare->add_option("--gold", compare.gold, "Gold CoNLL-U")->required();
  cmd_compare->add_option("--pred-a", compare.pred_a, "Baseline predictions")->required();
  cmd_compare->add_option("--pred-b", compare.pred_b, "Candidate predictions")->required();
  cmd_compare->add_option("--bootstrap-config", compare.bootstrap_config, "JSON with batch_fraction, replications, alpha");
  auto* o_fraction = cmd_compare->add_option("--fraction", compare.fraction, "Share of sentences drawn per replication");
  auto* o_reps = cmd_compare->add_option("--replications", compare.replications, "Bootstrap replications");
  auto* o_alpha = cmd_compare->add_option("--alpha", compare.alpha, "Significance level");
  cmd_compare->add_option("--seed", compare.seed, "Resampling seed");
  cmd_compare->add_option("--report", compare.report, "Bootstrap result JSON")->required();
  cmd_compare->add_option("--manifest", compare.manifest, "Run manifest (default <report>.manifest.json)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << HLTAG_VERSION_STRING << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    for (auto* sub : app.get_subcommands()) err << sub->help();
    if (app.get_subcommands().empty()) err << app.help();
    return kUsage;
  }
  compare.fraction_set = o_fraction->count() > 0;
  compare.replications_set = o_reps->count() > 0;
  compare.alpha_set = o_alpha->count() > 0;

  std::vector<std::string> argv{"hltag"};
  argv.insert(argv.end(), args.begin(), args.end());
  Context ctx{argv, out, err};
  try {
    if (cmd_stats->parsed()) return run_stats(stats, ctx);
    if (cmd_project->parsed()) return run_project(project, ctx);
    if (cmd_train->parsed()) return run_train(train_args, ctx, false);
    if (cmd_search->parsed()) return run_train(search_args, ctx, true);
    if (cmd_tag->parsed()) return run_tag(tag, ctx);
    if (cmd_eval->parsed()) return run_eval(eval, ctx);
    if (cmd_compare->parsed()) return run_compare(compare, ctx);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kIo;
  } catch (const EmptyResult& e) {
    err << "empty result: " << e.what() << '\n';
    return kEmpty;
  } catch (const MismatchError& e) {
    err << "mismatch: " << e.what() << '\n';
    return kMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace hltag::cli
