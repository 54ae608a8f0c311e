#include "hltag/adam.hpp"

#include <cmath>

#include "hltag/error.hpp"

namespace hltag {

void adam_update(std::span<double> theta, std::span<const double> grad, std::span<double> first_moment,
                 std::span<double> second_moment, std::int64_t t, const AdamConfig& c) {
  if (grad.size() != theta.size() || first_moment.size() != theta.size() || second_moment.size() != theta.size())
    throw ShapeError("adam_update: parameter, gradient and moment sizes differ");
  if (t < 1) throw Error("adam_update: step must be >= 1");
  const double correction1 = 1.0 - std::pow(c.beta1, static_cast<double>(t));
  const double correction2 = 1.0 - std::pow(c.beta2, static_cast<double>(t));
  for (std::size_t i = 0; i < theta.size(); ++i) {
    first_moment[i] = c.beta1 * first_moment[i] + (1.0 - c.beta1) * grad[i];
    second_moment[i] = c.beta2 * second_moment[i] + (1.0 - c.beta2) * grad[i] * grad[i];
    const double m_hat = first_moment[i] / correction1;
    const double v_hat = second_moment[i] / correction2;
    theta[i] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
  }
}

AdamState make_adam_state(const Parameters& params) {
  AdamState s;
  s.first_moment = zeros_like(params);
  s.second_moment = zeros_like(params);
  visit_tensors([&s](const std::string&, const auto&) { s.tensor_steps.push_back(0); }, params);
  return s;
}

void adam_step(Parameters& params, const Parameters& grads, AdamState& state, const AdamConfig& config) {
  if (!(config.learning_rate > 0.0)) throw Error("Adam learning rate must be positive");
  std::size_t index = 0;
  visit_tensors(
      [&](const std::string& name, auto& p, const auto& g, auto& m, auto& v) {
        if (p.rows() != g.rows() || p.cols() != g.cols() || p.rows() != m.rows() || p.cols() != m.cols() ||
            p.rows() != v.rows() || p.cols() != v.cols())
          throw ShapeError("adam_step: shape mismatch for tensor '" + name + "'");
        if (index >= state.tensor_steps.size()) throw ShapeError("adam_step: optimiser state has too few tensors");
        std::int64_t& t = state.tensor_steps[index++];
        if (g.size() == 0 || (g.array() == 0.0).all()) return;
        ++t;
        adam_update({p.data(), static_cast<std::size_t>(p.size())},
                    {g.data(), static_cast<std::size_t>(g.size())},
                    {m.data(), static_cast<std::size_t>(m.size())},
                    {v.data(), static_cast<std::size_t>(v.size())}, t, config);
      },
      params, grads, state.first_moment, state.second_moment);
  if (index != state.tensor_steps.size()) throw ShapeError("adam_step: optimiser state has too many tensors");
  ++state.step_count;
}

double global_norm(const Parameters& grads) {
  double sq = 0.0;
  visit_tensors([&sq](const std::string&, const auto& t) { sq += t.squaredNorm(); }, grads);
  return std::sqrt(sq);
}

double clip_global_norm(Parameters& grads, double max_norm) {
  const double norm = global_norm(grads);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    visit_tensors([scale](const std::string&, auto& t) { t *= scale; }, grads);
  }
  return norm;
}

}  // namespace hltag
