#include "hltag/search.hpp"

#include <cmath>
#include <limits>

#include "hltag/error.hpp"

namespace hltag {

void validate(const SearchSpace& s) {
  if (!(s.lr_exponent_low <= s.lr_exponent_high)) throw Error("learning-rate exponent range is inverted");
  if (!(s.dropout_low >= 0.0 && s.dropout_low <= s.dropout_high && s.dropout_high <= 0.4))
    throw Error("dropout range must lie within [0, 0.4]");
  if (s.epochs_low < 2 || s.epochs_low > s.epochs_high || s.epochs_high > 6)
    throw Error("epoch range must lie within [2, 6]");
  if (s.budget < 1) throw Error("search budget must be at least 1");
  if (s.seeds_per_trial < 1) throw Error("seeds_per_trial must be at least 1");
}

TrainConfig sample_config(const SearchSpace& space, Rng& rng, const TrainConfig& base) {
  validate(space);
  TrainConfig c = base;
  const double u = space.lr_exponent_low == space.lr_exponent_high
                       ? space.lr_exponent_low
                       : std::uniform_real_distribution<double>(space.lr_exponent_low, space.lr_exponent_high)(rng);
  c.learning_rate = std::pow(10.0, u);
  c.dropout_rate = space.dropout_low == space.dropout_high
                       ? space.dropout_low
                       : std::uniform_real_distribution<double>(space.dropout_low, space.dropout_high)(rng);
  c.epochs = std::uniform_int_distribution<int>(space.epochs_low, space.epochs_high)(rng);
  return c;
}

SearchResult random_search(const SearchSpace& space, const TrainConfig& base, const TrialRunner& runner,
                           const std::function<void(const RunRecord&)>& on_run) {
  validate(space);
  Rng rng = make_stream(base.seed, "search");
  SearchResult result;
  double best_score = -std::numeric_limits<double>::infinity();

  for (int trial = 0; trial < space.budget; ++trial) {
    const TrainConfig config = sample_config(space, rng, base);
    std::vector<RunOutcome> outcomes;
    for (int k = 0; k < space.seeds_per_trial; ++k) {
      TrainConfig run_config = config;
      run_config.seed = base.seed + static_cast<std::uint64_t>(k);
      RunOutcome out = runner(run_config);
      if (out.head_accuracy.empty() || out.heads.size() != out.head_accuracy.size())
        throw Error("trial runner returned no head accuracies");
      if (!outcomes.empty() && out.heads != outcomes.front().heads)
        throw Error("trial runner changed the head list between seeds");
      RunRecord record{trial, k, run_config, out.heads, out.head_accuracy, out.history};
      if (on_run) on_run(record);
      result.runs.push_back(std::move(record));
      outcomes.push_back(std::move(out));
    }

    // Head selection: highest mean accuracy over seeds among eligible heads.
    const std::size_t n_heads = outcomes.front().heads.size();
    int chosen = -1;
    double chosen_mean = -std::numeric_limits<double>::infinity();
    for (std::size_t h = 0; h < n_heads; ++h) {
      bool eligible = true;
      double sum = 0.0;
      for (const auto& o : outcomes) {
        if (o.head_accuracy[h] < 0.0) eligible = false;
        sum += o.head_accuracy[h];
      }
      if (!eligible) continue;
      const double mean = sum / static_cast<double>(outcomes.size());
      if (mean > chosen_mean) {
        chosen_mean = mean;
        chosen = static_cast<int>(h);
      }
    }
    if (chosen < 0) throw Error("no eligible decoder head in trial " + std::to_string(trial));

    TrialResult tr;
    tr.index = trial;
    tr.config = config;
    tr.selected_head = outcomes.front().heads[chosen];
    for (const auto& o : outcomes) tr.per_seed_val_token_acc.push_back(o.head_accuracy[chosen]);
    tr.mean = chosen_mean;
    double var = 0.0;
    for (double a : tr.per_seed_val_token_acc) var += (a - tr.mean) * (a - tr.mean);
    tr.stddev = std::sqrt(var / static_cast<double>(tr.per_seed_val_token_acc.size()));

    if (tr.mean > best_score) {
      best_score = tr.mean;
      result.best = tr;
      std::size_t best_seed = 0;
      for (std::size_t k = 1; k < outcomes.size(); ++k)
        if (outcomes[k].head_accuracy[chosen] > outcomes[best_seed].head_accuracy[chosen]) best_seed = k;
      result.best_model = outcomes[best_seed].model;
    }
    result.trials.push_back(std::move(tr));
  }
  return result;
}

TrialRunner make_training_runner(ModelFactory factory, std::vector<Corpus> train_corpora,
                                 std::vector<Corpus> val_corpora, std::string selection_domain) {
  const Corpus* selection = nullptr;
  for (const auto& v : val_corpora)
    if (v.domain.name == selection_domain) selection = &v;
  if (selection == nullptr) throw Error("no validation corpus for selection domain '" + selection_domain + "'");
  if (selection->empty()) throw Error("validation corpus '" + selection_domain + "' is empty");

  auto train_ptr = std::make_shared<const std::vector<Corpus>>(std::move(train_corpora));
  auto val_ptr = std::make_shared<const std::vector<Corpus>>(std::move(val_corpora));
  return [factory = std::move(factory), train_ptr, val_ptr,
          selection_domain = std::move(selection_domain)](const TrainConfig& config) {
    auto model = std::make_shared<TaggerModel>(factory(config));
    RunOutcome out;
    out.history = train(*model, *train_ptr, *val_ptr, config);
    const Corpus* val = nullptr;
    for (const auto& v : *val_ptr)
      if (v.domain.name == selection_domain) val = &v;
    const bool own_head = model->has_head(selection_domain);
    for (const auto& head : model->domains) {
      out.heads.push_back(head);
      out.head_accuracy.push_back(own_head && head != selection_domain ? -1.0
                                                                        : token_accuracy(*model, *val, head));
    }
    out.model = std::move(model);
    return out;
  };
}

std::string select_decoder_head(const TaggerModel& model, const Corpus& val) {
  if (model.domains.empty()) throw Error("model has no decoder heads");
  if (val.empty()) throw Error("select_decoder_head: empty validation corpus");
  std::size_t best = 0;
  double best_acc = -1.0;
  for (std::size_t h = 0; h < model.domains.size(); ++h) {
    const double acc = token_accuracy(model, val, model.domains[h]);
    if (acc > best_acc) {
      best_acc = acc;
      best = h;
    }
  }
  return model.domains[best];
}

}  // namespace hltag
