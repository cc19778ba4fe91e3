#pragma once

#include <cstddef>

#include "paedgl/matrix.hpp"

namespace paedgl {

// Probabilities are clamped to this floor before log().
inline constexpr double kLogFloor = 1e-12;

// y = W x + b.  W is (out x in); b may be empty for no bias.
Vec affine(const DenseMatrix& weights, const Vec& x, const Vec& bias);

// Accumulates gradients for y = W x + b given dL/dy.  Null outputs are
// skipped, so a caller can ask only for the pieces it needs.
void affine_backward(const DenseMatrix& weights, const Vec& x,
                     const Vec& grad_out, DenseMatrix* grad_weights,
                     Vec* grad_bias, Vec* grad_x);

// Numerically stable softmax (max subtraction).
Vec softmax(const Vec& logits);

// dL/dlogits given softmax output and dL/dprobs.
Vec softmax_backward(const Vec& probs, const Vec& grad_probs);

// -sum_i truth[i] * log(max(pred[i], kLogFloor)).
double cross_entropy(const Vec& pred, const Vec& truth);

// dL/dpred for cross_entropy, scaled by grad_loss.
Vec cross_entropy_backward(const Vec& pred, const Vec& truth,
                           double grad_loss = 1.0);

// Fused gradient of cross_entropy(softmax(z), onehot(truth_index)) w.r.t. the
// logits z: probs - onehot.  The model's heads use this stable form.
Vec softmax_xent_grad(const Vec& probs, std::size_t truth_index,
                      double grad_loss = 1.0);

// LSTM cell.  Weights are packed along rows in gate order [i, f, g, o]:
// input_weights (4H x in), recurrent_weights (4H x H), bias (4H).
struct LstmWeights {
  const DenseMatrix* input_weights = nullptr;
  const DenseMatrix* recurrent_weights = nullptr;
  const Vec* bias = nullptr;
};

struct LstmGrads {
  DenseMatrix* input_weights = nullptr;
  DenseMatrix* recurrent_weights = nullptr;
  Vec* bias = nullptr;
};

// Everything the backward pass needs from one forward step.
struct LstmStepCache {
  Vec input, h_prev, c_prev;
  Vec gate_i, gate_f, gate_g, gate_o;
  Vec c, tanh_c;
};

// One step: c = f*c_prev + i*g, h = o*tanh(c).  cache may be null when the
// caller only needs the forward values.
void lstm_cell(const LstmWeights& w, const Vec& x, const Vec& h_prev,
               const Vec& c_prev, Vec* h_out, Vec* c_out,
               LstmStepCache* cache);

// Accumulates parameter gradients and returns upstream gradients through
// grad_x / grad_h_prev / grad_c_prev (each nullable).  grad_h and grad_c are
// dL/dh and dL/dc flowing into this step.
void lstm_cell_backward(const LstmWeights& w, const LstmStepCache& cache,
                        const Vec& grad_h, const Vec& grad_c,
                        const LstmGrads& grads, Vec* grad_x, Vec* grad_h_prev,
                        Vec* grad_c_prev);

}  // namespace paedgl
