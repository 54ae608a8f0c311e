#pragma once

#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

namespace hltag {

/// One GRU direction. Gate blocks are stacked [update; reset; candidate]:
/// input_weight is 3H x I, hidden_weight is 3H x H, bias is 3H.
struct GruCell {
  Eigen::MatrixXd input_weight;
  Eigen::MatrixXd hidden_weight;
  Eigen::VectorXd bias;

  int hidden_size() const noexcept { return static_cast<int>(hidden_weight.cols()); }
  int input_size() const noexcept { return static_cast<int>(input_weight.cols()); }
};

struct BiGru {
  GruCell forward;
  GruCell backward;
};

/// Domain-private decoder: emission projection plus linear-chain CRF scores.
/// transitions(i, j) scores tag j following tag i.
struct DomainHead {
  Eigen::MatrixXd emission_weight;  // K x state width
  Eigen::VectorXd emission_bias;    // K
  Eigen::MatrixXd transitions;      // K x K
  Eigen::VectorXd start_scores;     // K
  Eigen::VectorXd end_scores;       // K

  int num_tags() const noexcept { return static_cast<int>(transitions.rows()); }
};

/// Every trainable tensor of a tagger. Gradients and optimiser moments use the
/// same type so they can be walked in lockstep with visit_tensors.
struct Parameters {
  Eigen::MatrixXd word_table;  // word_dim x |words|, column per word id
  Eigen::MatrixXd char_table;  // char_dim x |chars|, column per char id
  BiGru char_encoder;
  std::vector<BiGru> encoder;  // stacked layers
  std::vector<DomainHead> heads;
};

namespace detail {

template <class F, class... C>
void visit_cells(const std::string& prefix, F& f, C&... cells) {
  f(prefix + ".input_weight", cells.input_weight...);
  f(prefix + ".hidden_weight", cells.hidden_weight...);
  f(prefix + ".bias", cells.bias...);
}

template <class F, class... B>
void visit_bigru(const std::string& prefix, F& f, B&... layers) {
  visit_cells(prefix + ".fwd", f, layers.forward...);
  visit_cells(prefix + ".bwd", f, layers.backward...);
}

}  // namespace detail

/// Calls f(name, tensor_0, tensor_1, ...) for every tensor, walking any number
/// of structurally identical Parameters together. Tensors are MatrixXd or
/// VectorXd (possibly const); both expose data() and size().
template <class F, class First, class... Rest>
void visit_tensors(F&& f, First& first, Rest&... rest) {
  f(std::string("word_table"), first.word_table, rest.word_table...);
  f(std::string("char_table"), first.char_table, rest.char_table...);
  detail::visit_bigru("char_encoder", f, first.char_encoder, rest.char_encoder...);
  for (std::size_t l = 0; l < first.encoder.size(); ++l)
    detail::visit_bigru("encoder." + std::to_string(l), f, first.encoder[l], rest.encoder[l]...);
  for (std::size_t h = 0; h < first.heads.size(); ++h) {
    const std::string p = "head." + std::to_string(h);
    f(p + ".emission_weight", first.heads[h].emission_weight, rest.heads[h].emission_weight...);
    f(p + ".emission_bias", first.heads[h].emission_bias, rest.heads[h].emission_bias...);
    f(p + ".transitions", first.heads[h].transitions, rest.heads[h].transitions...);
    f(p + ".start_scores", first.heads[h].start_scores, rest.heads[h].start_scores...);
    f(p + ".end_scores", first.heads[h].end_scores, rest.heads[h].end_scores...);
  }
}

/// Same shapes as `like`, all zeros.
Parameters zeros_like(const Parameters& like);

/// Total number of scalar parameters.
std::size_t parameter_count(const Parameters& params);

}  // namespace hltag
