#include "hltag/gru.hpp"

#include "hltag/error.hpp"

namespace hltag {
namespace {

Eigen::VectorXd sigmoid(const Eigen::VectorXd& x) {
  return (1.0 + (-x.array()).exp()).inverse().matrix();
}

}  // namespace

GruTrace gru_forward(const GruCell& cell, const Eigen::MatrixXd& inputs, bool reverse) {
  const int h = cell.hidden_size();
  const int steps = static_cast<int>(inputs.cols());
  if (inputs.rows() != cell.input_size())
    throw ShapeError("GRU expects inputs of width " + std::to_string(cell.input_size()) + ", got " +
                     std::to_string(inputs.rows()));

  GruTrace tr;
  tr.inputs = inputs;
  tr.reverse = reverse;
  tr.outputs.resize(h, steps);
  tr.update.resize(h, steps);
  tr.reset.resize(h, steps);
  tr.candidate.resize(h, steps);

  // Input projections for all positions at once.
  const Eigen::MatrixXd projected = (cell.input_weight * inputs).colwise() + cell.bias;
  const auto u_zr = cell.hidden_weight.topRows(2 * h);
  const auto u_n = cell.hidden_weight.bottomRows(h);

  Eigen::VectorXd prev = Eigen::VectorXd::Zero(h);
  for (int k = 0; k < steps; ++k) {
    const int t = reverse ? steps - 1 - k : k;
    const Eigen::VectorXd zr = projected.col(t).head(2 * h) + u_zr * prev;
    const Eigen::VectorXd z = sigmoid(zr.head(h));
    const Eigen::VectorXd r = sigmoid(zr.tail(h));
    const Eigen::VectorXd n =
        (projected.col(t).tail(h) + u_n * r.cwiseProduct(prev)).array().tanh().matrix();
    prev = (1.0 - z.array()) * n.array() + z.array() * prev.array();
    tr.update.col(t) = z;
    tr.reset.col(t) = r;
    tr.candidate.col(t) = n;
    tr.outputs.col(t) = prev;
  }
  return tr;
}

Eigen::MatrixXd gru_backward(const GruCell& cell, const GruTrace& tr, const Eigen::MatrixXd& output_grad,
                             GruCell& grad) {
  const int h = cell.hidden_size();
  const int steps = static_cast<int>(tr.inputs.cols());
  if (output_grad.rows() != h || output_grad.cols() != steps) throw ShapeError("GRU output gradient shape");

  Eigen::MatrixXd d_projected(3 * h, steps);
  const auto u_zr = cell.hidden_weight.topRows(2 * h);
  const auto u_n = cell.hidden_weight.bottomRows(h);

  Eigen::VectorXd carry = Eigen::VectorXd::Zero(h);  // gradient flowing into the state from later steps
  for (int k = steps - 1; k >= 0; --k) {
    const int t = tr.reverse ? steps - 1 - k : k;
    const int prev_t = tr.reverse ? t + 1 : t - 1;
    const Eigen::VectorXd prev = (k == 0) ? Eigen::VectorXd::Zero(h) : Eigen::VectorXd(tr.outputs.col(prev_t));
    const auto z = tr.update.col(t).array();
    const auto r = tr.reset.col(t).array();
    const auto n = tr.candidate.col(t).array();

    const Eigen::ArrayXd dh = (output_grad.col(t) + carry).array();
    const Eigen::ArrayXd dn = dh * (1.0 - z);
    const Eigen::ArrayXd dz = dh * (prev.array() - n);
    Eigen::VectorXd d_prev = (dh * z).matrix();

    const Eigen::VectorXd da_n = (dn * (1.0 - n.square())).matrix();
    const Eigen::VectorXd gated = (r * prev.array()).matrix();
    grad.hidden_weight.bottomRows(h).noalias() += da_n * gated.transpose();
    const Eigen::ArrayXd d_gated = (u_n.transpose() * da_n).array();
    const Eigen::ArrayXd dr = d_gated * prev.array();
    d_prev.array() += d_gated * r;

    Eigen::VectorXd da_zr(2 * h);
    da_zr.head(h) = (dz * z * (1.0 - z)).matrix();
    da_zr.tail(h) = (dr * r * (1.0 - r)).matrix();
    grad.hidden_weight.topRows(2 * h).noalias() += da_zr * prev.transpose();
    d_prev.noalias() += u_zr.transpose() * da_zr;

    d_projected.col(t).head(2 * h) = da_zr;
    d_projected.col(t).tail(h) = da_n;
    carry = d_prev;
  }

  grad.input_weight.noalias() += d_projected * tr.inputs.transpose();
  grad.bias += d_projected.rowwise().sum();
  return cell.input_weight.transpose() * d_projected;
}

Eigen::MatrixXd bigru_outputs(const BiGruTrace& trace) {
  const auto& f = trace.forward.outputs;
  const auto& b = trace.backward.outputs;
  Eigen::MatrixXd out(f.rows() + b.rows(), f.cols());
  out.topRows(f.rows()) = f;
  out.bottomRows(b.rows()) = b;
  return out;
}

BiGruTrace bigru_forward(const BiGru& layer, const Eigen::MatrixXd& inputs) {
  return {gru_forward(layer.forward, inputs, false), gru_forward(layer.backward, inputs, true)};
}

Eigen::MatrixXd bigru_backward(const BiGru& layer, const BiGruTrace& trace, const Eigen::MatrixXd& output_grad,
                               BiGru& grad) {
  const int hf = layer.forward.hidden_size();
  const int hb = layer.backward.hidden_size();
  if (output_grad.rows() != hf + hb) throw ShapeError("BiGRU output gradient shape");
  Eigen::MatrixXd d_in = gru_backward(layer.forward, trace.forward, output_grad.topRows(hf), grad.forward);
  d_in += gru_backward(layer.backward, trace.backward, output_grad.bottomRows(hb), grad.backward);
  return d_in;
}

}  // namespace hltag
