#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hltag/rng.hpp"
#include "hltag/trainer.hpp"

namespace hltag {

struct SearchSpace {
  double lr_exponent_low = -5.5;  // learning rate = 10^u
  double lr_exponent_high = -1.0;
  double dropout_low = 0.0;
  double dropout_high = 0.4;
  int epochs_low = 2;
  int epochs_high = 6;
  int budget = 10;
  int seeds_per_trial = 3;
};

void validate(const SearchSpace& space);

/// Draws learning rate (log-uniform), dropout (uniform) and epochs (uniform
/// integer). Other fields are copied from `base`.
TrainConfig sample_config(const SearchSpace& space, Rng& rng, const TrainConfig& base = {});

/// What one training run reports back to the search.
struct RunOutcome {
  std::vector<std::string> heads;
  /// Validation token accuracy per head; negative marks a head that is not
  /// eligible for selection.
  std::vector<double> head_accuracy;
  TrainHistory history;
  std::shared_ptr<const TaggerModel> model;  // may be null for injected runners
};

using TrialRunner = std::function<RunOutcome(const TrainConfig&)>;

struct RunRecord {
  int trial = 0;
  int seed_index = 0;
  TrainConfig config;
  std::vector<std::string> heads;
  std::vector<double> head_accuracy;
  TrainHistory history;
};

struct TrialResult {
  int index = 0;
  TrainConfig config;  // seed is the base seed of the trial's runs
  std::vector<double> per_seed_val_token_acc;
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation over seeds
  std::string selected_head;
};

struct SearchResult {
  TrialResult best;
  std::vector<TrialResult> trials;
  std::vector<RunRecord> runs;
  std::shared_ptr<const TaggerModel> best_model;  // best seed of the best trial
};

/// `budget` configurations are drawn from the (base.seed, "search") stream.
/// Each is run with seeds base.seed, base.seed + 1, ...; within a trial the
/// head with the highest mean accuracy is selected, and the trial scores that
/// mean. The best trial maximises the score, ties going to the earlier trial.
SearchResult random_search(const SearchSpace& space, const TrainConfig& base, const TrialRunner& runner,
                           const std::function<void(const RunRecord&)>& on_run = {});

/// Production runner: builds a model with `factory`, trains it, and scores
/// heads on the validation corpus of `selection_domain`. When the model has
/// a head for that domain only that head is eligible; otherwise every head is.
TrialRunner make_training_runner(ModelFactory factory, std::vector<Corpus> train_corpora,
                                 std::vector<Corpus> val_corpora, std::string selection_domain);

/// Tags `val` with every head and returns the most accurate one (ties to the
/// lower head index).
std::string select_decoder_head(const TaggerModel& model, const Corpus& val);

}  // namespace hltag
