#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hltag/parameters.hpp"

namespace hltag {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.99;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Bias-corrected Adam update of one flat tensor at 1-based step `t`:
///   m <- b1 m + (1 - b1) g;  v <- b2 v + (1 - b2) g^2
///   theta <- theta - lr * m_hat / (sqrt(v_hat) + eps)
void adam_update(std::span<double> theta, std::span<const double> grad, std::span<double> first_moment,
                 std::span<double> second_moment, std::int64_t t, const AdamConfig& config);

struct AdamState {
  std::int64_t step_count = 0;
  Parameters first_moment;
  Parameters second_moment;
  /// Updates applied to each tensor, in visit_tensors order; drives bias correction.
  std::vector<std::int64_t> tensor_steps;
};

/// Zero moments shaped like `params`.
AdamState make_adam_state(const Parameters& params);

/// One optimiser step over every tensor. A tensor whose gradient is entirely
/// zero is skipped: neither it nor its moments change. Hence an all-zero
/// gradient leaves the parameters untouched for any state, and decoder heads
/// absent from a batch are left exactly as they were.
void adam_step(Parameters& params, const Parameters& grads, AdamState& state, const AdamConfig& config);

/// Global L2 norm over all tensors.
double global_norm(const Parameters& grads);

/// Rescales `grads` so their global norm is at most `max_norm` (no-op when
/// max_norm <= 0). Returns the norm before clipping.
double clip_global_norm(Parameters& grads, double max_norm);

}  // namespace hltag
