#include "paedgl/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace paedgl {

Vec affine(const DenseMatrix& weights, const Vec& x, const Vec& bias) {
  require_size(x, weights.cols, "affine: x");
  if (!bias.empty()) require_size(bias, weights.rows, "affine: bias");
  Vec y(weights.rows, 0.0);
  for (std::size_t r = 0; r < weights.rows; ++r) {
    const double* wr = &weights.data[r * weights.cols];
    double acc = bias.empty() ? 0.0 : bias[r];
    for (std::size_t c = 0; c < weights.cols; ++c) acc += wr[c] * x[c];
    y[r] = acc;
  }
  return y;
}

void affine_backward(const DenseMatrix& weights, const Vec& x,
                     const Vec& grad_out, DenseMatrix* grad_weights,
                     Vec* grad_bias, Vec* grad_x) {
  require_size(x, weights.cols, "affine_backward: x");
  require_size(grad_out, weights.rows, "affine_backward: grad_out");
  if (grad_weights != nullptr) {
    require_shape(*grad_weights, weights.rows, weights.cols,
                  "affine_backward: grad_weights");
    for (std::size_t r = 0; r < weights.rows; ++r) {
      double g = grad_out[r];
      double* gr = &grad_weights->data[r * weights.cols];
      for (std::size_t c = 0; c < weights.cols; ++c) gr[c] += g * x[c];
    }
  }
  if (grad_bias != nullptr) {
    require_size(*grad_bias, weights.rows, "affine_backward: grad_bias");
    for (std::size_t r = 0; r < weights.rows; ++r)
      (*grad_bias)[r] += grad_out[r];
  }
  if (grad_x != nullptr) {
    require_size(*grad_x, weights.cols, "affine_backward: grad_x");
    for (std::size_t r = 0; r < weights.rows; ++r) {
      double g = grad_out[r];
      const double* wr = &weights.data[r * weights.cols];
      for (std::size_t c = 0; c < weights.cols; ++c) (*grad_x)[c] += g * wr[c];
    }
  }
}

Vec softmax(const Vec& logits) {
  if (logits.empty()) throw ArgumentError("softmax: empty input");
  double m = *std::max_element(logits.begin(), logits.end());
  Vec probs(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - m);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

Vec softmax_backward(const Vec& probs, const Vec& grad_probs) {
  require_size(grad_probs, probs.size(), "softmax_backward: grad_probs");
  double dot = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) dot += probs[i] * grad_probs[i];
  Vec grad_logits(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i)
    grad_logits[i] = probs[i] * (grad_probs[i] - dot);
  return grad_logits;
}

double cross_entropy(const Vec& pred, const Vec& truth) {
  require_size(truth, pred.size(), "cross_entropy: truth");
  double loss = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (truth[i] != 0.0) loss -= truth[i] * std::log(std::max(pred[i], kLogFloor));
  }
  return loss;
}

Vec cross_entropy_backward(const Vec& pred, const Vec& truth,
                           double grad_loss) {
  require_size(truth, pred.size(), "cross_entropy_backward: truth");
  Vec grad(pred.size(), 0.0);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (truth[i] != 0.0)
      grad[i] = -grad_loss * truth[i] / std::max(pred[i], kLogFloor);
  }
  return grad;
}

Vec softmax_xent_grad(const Vec& probs, std::size_t truth_index,
                      double grad_loss) {
  if (truth_index >= probs.size())
    throw IndexError("softmax_xent_grad: truth index out of range");
  Vec grad(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) grad[i] = grad_loss * probs[i];
  grad[truth_index] -= grad_loss;
  return grad;
}

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_lstm_shapes(const LstmWeights& w, const Vec& x, const Vec& h_prev,
                       const Vec& c_prev) {
  const std::size_t hidden = w.recurrent_weights->cols;
  if (w.input_weights->rows != 4 * hidden ||
      w.recurrent_weights->rows != 4 * hidden)
    throw ShapeError("lstm_cell: weight rows must be 4*hidden");
  require_size(x, w.input_weights->cols, "lstm_cell: x");
  require_size(h_prev, hidden, "lstm_cell: h_prev");
  require_size(c_prev, hidden, "lstm_cell: c_prev");
  require_size(*w.bias, 4 * hidden, "lstm_cell: bias");
}

}  // namespace

void lstm_cell(const LstmWeights& w, const Vec& x, const Vec& h_prev,
               const Vec& c_prev, Vec* h_out, Vec* c_out,
               LstmStepCache* cache) {
  check_lstm_shapes(w, x, h_prev, c_prev);
  const std::size_t hidden = w.recurrent_weights->cols;

  Vec pre = affine(*w.input_weights, x, *w.bias);
  Vec rec = affine(*w.recurrent_weights, h_prev, Vec{});
  for (std::size_t i = 0; i < pre.size(); ++i) pre[i] += rec[i];

  Vec gi(hidden), gf(hidden), gg(hidden), go(hidden), c(hidden), tc(hidden);
  for (std::size_t k = 0; k < hidden; ++k) {
    gi[k] = sigmoid(pre[k]);
    gf[k] = sigmoid(pre[hidden + k]);
    gg[k] = std::tanh(pre[2 * hidden + k]);
    go[k] = sigmoid(pre[3 * hidden + k]);
    c[k] = gf[k] * c_prev[k] + gi[k] * gg[k];
    tc[k] = std::tanh(c[k]);
  }

  if (h_out != nullptr) {
    h_out->resize(hidden);
    for (std::size_t k = 0; k < hidden; ++k) (*h_out)[k] = go[k] * tc[k];
  }
  if (c_out != nullptr) *c_out = c;
  if (cache != nullptr) {
    cache->input = x;
    cache->h_prev = h_prev;
    cache->c_prev = c_prev;
    cache->gate_i = std::move(gi);
    cache->gate_f = std::move(gf);
    cache->gate_g = std::move(gg);
    cache->gate_o = std::move(go);
    cache->c = std::move(c);
    cache->tanh_c = std::move(tc);
  }
}

void lstm_cell_backward(const LstmWeights& w, const LstmStepCache& cache,
                        const Vec& grad_h, const Vec& grad_c,
                        const LstmGrads& grads, Vec* grad_x, Vec* grad_h_prev,
                        Vec* grad_c_prev) {
  const std::size_t hidden = w.recurrent_weights->cols;
  require_size(grad_h, hidden, "lstm_cell_backward: grad_h");
  require_size(grad_c, hidden, "lstm_cell_backward: grad_c");

  // Through h = o * tanh(c) and c = f*c_prev + i*g.
  Vec grad_pre(4 * hidden);
  Vec gc(hidden);
  for (std::size_t k = 0; k < hidden; ++k) {
    const double go = cache.gate_o[k];
    const double tc = cache.tanh_c[k];
    gc[k] = grad_c[k] + grad_h[k] * go * (1.0 - tc * tc);
    const double gi = cache.gate_i[k];
    const double gf = cache.gate_f[k];
    const double gg = cache.gate_g[k];
    grad_pre[k] = gc[k] * gg * gi * (1.0 - gi);                    // i
    grad_pre[hidden + k] = gc[k] * cache.c_prev[k] * gf * (1.0 - gf);  // f
    grad_pre[2 * hidden + k] = gc[k] * gi * (1.0 - gg * gg);       // g
    grad_pre[3 * hidden + k] = grad_h[k] * tc * go * (1.0 - go);   // o
  }

  affine_backward(*w.input_weights, cache.input, grad_pre, grads.input_weights,
                  grads.bias, grad_x);
  affine_backward(*w.recurrent_weights, cache.h_prev, grad_pre,
                  grads.recurrent_weights, nullptr, grad_h_prev);

  if (grad_c_prev != nullptr) {
    require_size(*grad_c_prev, hidden, "lstm_cell_backward: grad_c_prev");
    for (std::size_t k = 0; k < hidden; ++k)
      (*grad_c_prev)[k] += gc[k] * cache.gate_f[k];
  }
}

}  // namespace paedgl
