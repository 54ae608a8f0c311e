#include "hltag/crf.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hltag/error.hpp"

namespace hltag {
namespace {

double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

void check_shapes(const EmissionScores& e, const DomainHead& head) {
  const int k = head.num_tags();
  if (e.rows() < 1) throw ShapeError("CRF needs at least one token");
  if (e.cols() != k || head.transitions.cols() != k || head.start_scores.size() != k ||
      head.end_scores.size() != k)
    throw ShapeError("CRF head and emissions disagree on the tag count (" + std::to_string(e.cols()) +
                     " vs " + std::to_string(k) + ")");
  if (!e.allFinite()) throw Error("CRF emissions contain non-finite values");
}

void check_path(const std::vector<int>& path, Eigen::Index n, Eigen::Index k) {
  if (static_cast<Eigen::Index>(path.size()) != n)
    throw MismatchError("tag path length " + std::to_string(path.size()) + " does not match " +
                        std::to_string(n) + " tokens");
  for (int y : path)
    if (y < 0 || y >= k) throw ShapeError("tag code " + std::to_string(y) + " outside the head's tag set");
}

// alpha(i, j): log-sum of all prefixes ending at token i with tag j.
Eigen::MatrixXd forward_scores(const EmissionScores& e, const DomainHead& head) {
  const Eigen::Index n = e.rows(), k = e.cols();
  Eigen::MatrixXd alpha(n, k);
  alpha.row(0) = head.start_scores.transpose() + e.row(0);
  for (Eigen::Index i = 1; i < n; ++i) {
    for (Eigen::Index j = 0; j < k; ++j)
      alpha(i, j) = log_sum_exp(alpha.row(i - 1).transpose() + head.transitions.col(j)) + e(i, j);
  }
  return alpha;
}

// beta(i, j): log-sum of all suffixes after token i given tag j at i (incl. end score).
Eigen::MatrixXd backward_scores(const EmissionScores& e, const DomainHead& head) {
  const Eigen::Index n = e.rows(), k = e.cols();
  Eigen::MatrixXd beta(n, k);
  beta.row(n - 1) = head.end_scores.transpose();
  for (Eigen::Index i = n - 2; i >= 0; --i) {
    const Eigen::VectorXd next = e.row(i + 1).transpose() + beta.row(i + 1).transpose();
    for (Eigen::Index j = 0; j < k; ++j)
      beta(i, j) = log_sum_exp(head.transitions.row(j).transpose() + next);
  }
  return beta;
}

}  // namespace

double crf_path_score(const EmissionScores& e, const std::vector<int>& path, const DomainHead& head) {
  check_shapes(e, head);
  check_path(path, e.rows(), e.cols());
  double s = head.start_scores(path[0]) + e(0, path[0]);
  for (std::size_t i = 1; i < path.size(); ++i) {
    s += head.transitions(path[i - 1], path[i]);
    s += e(static_cast<Eigen::Index>(i), path[i]);
  }
  return s + head.end_scores(path.back());
}

double crf_log_partition(const EmissionScores& e, const DomainHead& head) {
  check_shapes(e, head);
  const Eigen::MatrixXd alpha = forward_scores(e, head);
  return log_sum_exp(alpha.row(e.rows() - 1).transpose() + head.end_scores);
}

double crf_log_likelihood(const EmissionScores& e, const std::vector<int>& gold, const DomainHead& head) {
  const double score = crf_path_score(e, gold, head);
  return std::min(0.0, score - crf_log_partition(e, head));
}

std::vector<int> viterbi_decode(const EmissionScores& e, const DomainHead& head) {
  check_shapes(e, head);
  const Eigen::Index n = e.rows(), k = e.cols();
  Eigen::MatrixXd delta(n, k);
  Eigen::MatrixXi back(n, k);
  delta.row(0) = head.start_scores.transpose() + e.row(0);
  for (Eigen::Index i = 1; i < n; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      double best = -std::numeric_limits<double>::infinity();
      int arg = 0;
      for (Eigen::Index p = 0; p < k; ++p) {
        const double cand = delta(i - 1, p) + head.transitions(p, j);
        if (cand > best) {
          best = cand;
          arg = static_cast<int>(p);
        }
      }
      delta(i, j) = best + e(i, j);
      back(i, j) = arg;
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  int last = 0;
  for (Eigen::Index j = 0; j < k; ++j) {
    const double cand = delta(n - 1, j) + head.end_scores(j);
    if (cand > best) {
      best = cand;
      last = static_cast<int>(j);
    }
  }
  std::vector<int> path(static_cast<std::size_t>(n));
  path.back() = last;
  for (Eigen::Index i = n - 1; i > 0; --i) path[i - 1] = back(i, path[i]);
  return path;
}

std::vector<int> softmax_decode(const EmissionScores& e) {
  if (e.rows() < 1 || e.cols() < 1) throw ShapeError("softmax_decode needs a non-empty score matrix");
  std::vector<int> out(static_cast<std::size_t>(e.rows()));
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    Eigen::Index arg = 0;
    for (Eigen::Index j = 1; j < e.cols(); ++j)
      if (e(i, j) > e(i, arg)) arg = j;
    out[i] = static_cast<int>(arg);
  }
  return out;
}

CrfLossGradient crf_nll_gradient(const EmissionScores& e, const std::vector<int>& gold, const DomainHead& head,
                                 DomainHead& head_grad) {
  check_shapes(e, head);
  check_path(gold, e.rows(), e.cols());
  const Eigen::Index n = e.rows(), k = e.cols();
  const Eigen::MatrixXd alpha = forward_scores(e, head);
  const Eigen::MatrixXd beta = backward_scores(e, head);
  const double log_z = log_sum_exp(alpha.row(n - 1).transpose() + head.end_scores);

  CrfLossGradient out;
  out.loss = log_z - crf_path_score(e, gold, head);
  // Node marginals minus gold indicators.
  out.d_emissions = ((alpha + beta).array() - log_z).exp().matrix();
  for (Eigen::Index i = 0; i < n; ++i) out.d_emissions(i, gold[i]) -= 1.0;

  head_grad.start_scores += out.d_emissions.row(0).transpose();
  head_grad.end_scores += out.d_emissions.row(n - 1).transpose();
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const Eigen::VectorXd next = e.row(i + 1).transpose() + beta.row(i + 1).transpose();
    for (Eigen::Index a = 0; a < k; ++a) {
      for (Eigen::Index b = 0; b < k; ++b)
        head_grad.transitions(a, b) += std::exp(alpha(i, a) + head.transitions(a, b) + next(b) - log_z);
    }
    head_grad.transitions(gold[i], gold[i + 1]) -= 1.0;
  }
  return out;
}

CrfLossGradient softmax_nll_gradient(const EmissionScores& e, const std::vector<int>& gold) {
  if (e.rows() < 1) throw ShapeError("softmax loss needs at least one token");
  if (!e.allFinite()) throw Error("emissions contain non-finite values");
  check_path(gold, e.rows(), e.cols());
  CrfLossGradient out;
  out.d_emissions.resize(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    const double lse = log_sum_exp(e.row(i).transpose());
    out.loss += lse - e(i, gold[i]);
    out.d_emissions.row(i) = (e.row(i).array() - lse).exp();
    out.d_emissions(i, gold[i]) -= 1.0;
  }
  return out;
}

}  // namespace hltag
