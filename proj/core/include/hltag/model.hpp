#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hltag/corpus.hpp"
#include "hltag/crf.hpp"
#include "hltag/parameters.hpp"
#include "hltag/rng.hpp"
#include "hltag/vocabulary.hpp"

namespace hltag {

/// Layer widths. Defaults give 50-wide word vectors, a 50-wide character
/// summary (25 per direction), and two BiGRU layers of 100 units per
/// direction.
struct ModelDims {
  int word_dim = 50;
  int char_dim = 25;
  int char_hidden = 25;
  int hidden = 100;
  int layers = 2;
  int num_tags = kNumTags;

  int input_dim() const noexcept { return word_dim + 2 * char_hidden; }
  int state_dim() const noexcept { return 2 * hidden; }

  friend bool operator==(const ModelDims&, const ModelDims&) = default;
};

/// Shared embeddings and encoder plus one decoder head per domain.
struct TaggerModel {
  ModelDims dims;
  Vocabulary vocab;
  std::vector<std::string> domains;  // head i serves domains[i]
  Parameters params;
  bool use_crf = true;

  /// Throws hltag::Error for a domain without a head.
  int head_index(std::string_view domain) const;
  bool has_head(std::string_view domain) const noexcept;
  const DomainHead& head(std::string_view domain) const { return params.heads[head_index(domain)]; }
};

/// Fresh model. Embedding tables are uniform in [-0.1, 0.1]; GRU weights are
/// uniform in [-1/sqrt(H), 1/sqrt(H)]; emission weights are Glorot-uniform;
/// CRF scores start at zero. All draws come from the (seed, "init") stream.
TaggerModel make_model(Vocabulary vocab, std::vector<std::string> domains, const ModelDims& dims, bool use_crf,
                       std::uint64_t seed);

/// Loads word vectors in "<token> v1 ... vD" text form. Rows of known words
/// are overwritten (first occurrence of a lowercased key wins); others keep
/// their random initialisation. Returns the number of rows replaced.
std::size_t load_word_vectors(TaggerModel& model, std::istream& in);

/// One column of width dims.input_dim() per token: word row (UNK on OOV)
/// stacked over the character BiGRU summary.
Eigen::MatrixXd embed_tokens(const TaggerModel& model, const Sentence& sentence);

/// Runs the stacked BiGRU. In training mode, inverted dropout with
/// `dropout_rate` is applied to the output of every layer (the last of which
/// feeds the tag projection). Evaluation mode never touches `rng`.
Eigen::MatrixXd encode(const TaggerModel& model, const Eigen::MatrixXd& vectors, double dropout_rate,
                       bool training, Rng* rng);

/// Affine projection of encoder states (state_dim x n) to n x K scores.
EmissionScores emissions(const Eigen::MatrixXd& states, const DomainHead& head);

/// Embed, encode in evaluation mode, project with the domain's head and
/// decode (Viterbi when use_crf, otherwise per-token argmax).
TagSequence tag_sentence(const TaggerModel& model, const Sentence& sentence, std::string_view domain);

using SentenceTagger = std::function<TagSequence(const Sentence&)>;

/// Binds a model and head for use where only a tagging function is needed.
SentenceTagger make_tagger(const TaggerModel& model, std::string domain);

struct LossGradient {
  double loss = 0.0;  ///< mean negative log-likelihood per sentence
  Parameters gradient;
};

/// Mean CRF negative log-likelihood (or summed per-token cross-entropy when
/// !use_crf) over the batch, and its exact gradient. Each sentence is routed
/// to the head named by its domain; heads not used by the batch get zero
/// gradient.
LossGradient loss_and_gradient(const TaggerModel& model, std::span<const Sentence* const> batch,
                               double dropout_rate, Rng& rng);

/// Loss only (training-mode dropout with the given rng). Used for
/// finite-difference checks and loss monitoring.
double batch_loss(const TaggerModel& model, std::span<const Sentence* const> batch, double dropout_rate, Rng& rng);

}  // namespace hltag
