#pragma once

#include <Eigen/Dense>

#include "hltag/parameters.hpp"

namespace hltag {

/// Activations recorded by gru_forward for use in gru_backward. Column t of
/// every matrix refers to input position t, whatever the scan direction.
struct GruTrace {
  Eigen::MatrixXd inputs;     // I x T
  Eigen::MatrixXd outputs;    // H x T, state after consuming position t
  Eigen::MatrixXd update;     // H x T
  Eigen::MatrixXd reset;      // H x T
  Eigen::MatrixXd candidate;  // H x T
  bool reverse = false;
};

/// Runs one GRU direction over the columns of `inputs` (right-to-left when
/// `reverse`), starting from a zero state:
///   z = sigmoid(Wz x + Uz h + bz), r = sigmoid(Wr x + Ur h + br)
///   n = tanh(Wn x + Un (r * h) + bn), h' = (1 - z) * n + z * h
GruTrace gru_forward(const GruCell& cell, const Eigen::MatrixXd& inputs, bool reverse);

/// Back-propagates `output_grad` (H x T, gradient w.r.t. trace.outputs),
/// accumulating parameter gradients into `grad` and returning d inputs (I x T).
Eigen::MatrixXd gru_backward(const GruCell& cell, const GruTrace& trace, const Eigen::MatrixXd& output_grad,
                             GruCell& grad);

struct BiGruTrace {
  GruTrace forward;
  GruTrace backward;
};

/// Concatenated outputs [forward; backward], 2H x T.
Eigen::MatrixXd bigru_outputs(const BiGruTrace& trace);

BiGruTrace bigru_forward(const BiGru& layer, const Eigen::MatrixXd& inputs);

/// `output_grad` is 2H x T w.r.t. bigru_outputs(trace).
Eigen::MatrixXd bigru_backward(const BiGru& layer, const BiGruTrace& trace, const Eigen::MatrixXd& output_grad,
                               BiGru& grad);

}  // namespace hltag
