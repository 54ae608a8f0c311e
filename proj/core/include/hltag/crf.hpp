#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hltag/parameters.hpp"

namespace hltag {

/// Per-token tag scores: one row per token, one column per tag.
using EmissionScores = Eigen::MatrixXd;

/// Score of one tag path:
///   start[y0] + sum_i e[i, y_i] + sum_i transitions[y_i, y_{i+1}] + end[y_last]
/// accumulated left to right.
double crf_path_score(const EmissionScores& e, const std::vector<int>& path, const DomainHead& head);

/// log sum over all K^n paths of exp(path score), via the forward algorithm in
/// log space. Throws on empty or non-finite emissions.
double crf_log_partition(const EmissionScores& e, const DomainHead& head);

/// path score(gold) - log partition. Always <= 0.
double crf_log_likelihood(const EmissionScores& e, const std::vector<int>& gold, const DomainHead& head);

/// Highest-scoring path. At every max, ties go to the lowest tag code.
std::vector<int> viterbi_decode(const EmissionScores& e, const DomainHead& head);

/// Independent per-token argmax (ties to the lowest tag code).
std::vector<int> softmax_decode(const EmissionScores& e);

/// Gradient of -crf_log_likelihood w.r.t. emissions and the head's CRF
/// scores. Transition/start/end gradients are accumulated into `head_grad`.
struct CrfLossGradient {
  double loss = 0.0;            // negative log-likelihood
  Eigen::MatrixXd d_emissions;  // n x K
};
CrfLossGradient crf_nll_gradient(const EmissionScores& e, const std::vector<int>& gold, const DomainHead& head,
                                 DomainHead& head_grad);

/// Per-token softmax cross-entropy summed over tokens, and its emission gradient.
CrfLossGradient softmax_nll_gradient(const EmissionScores& e, const std::vector<int>& gold);

}  // namespace hltag
