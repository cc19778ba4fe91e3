#include "paedgl/encoder.hpp"

#include <cmath>

namespace paedgl {

namespace {

void copy_row(const DenseMatrix& table, std::size_t row, Vec& out,
              std::size_t offset) {
  for (std::size_t c = 0; c < table.cols; ++c)
    out[offset + c] = table.at(row, c);
}

void add_to_row(DenseMatrix& table, std::size_t row, const Vec& grad,
                std::size_t offset) {
  for (std::size_t c = 0; c < table.cols; ++c)
    table.at(row, c) += grad[offset + c];
}

}  // namespace

std::vector<std::size_t> clause_token_ids(const Vocabulary& vocab,
                                          const Clause& clause) {
  std::vector<std::size_t> ids;
  ids.reserve(clause.size());
  for (const std::string& tok : clause) ids.push_back(vocab.id(tok));
  return ids;
}

std::vector<Vec> augment_embedding(const Model& model,
                                   std::span<const std::size_t> token_ids,
                                   int position) {
  if (token_ids.empty())
    throw ArgumentError("augment_embedding: empty clause");
  const ModelDims& dims = model.dims();
  const DenseMatrix& words = model.params().value(tensor::kWordTable);
  for (std::size_t id : token_ids) {
    if (id >= dims.vocab)
      throw IndexError("augment_embedding: token id " + std::to_string(id) +
                       " outside vocabulary of size " +
                       std::to_string(dims.vocab));
  }
  const std::size_t cls = position_class(position, dims.window);
  const std::size_t in = model.input_dim();

  std::vector<Vec> out;
  out.reserve(token_ids.size() + 1);
  for (std::size_t id : token_ids) {
    Vec e(in, 0.0);
    copy_row(words, id, e, 0);
    if (model.flags().position_mode == PositionMode::kPae)
      copy_row(model.params().value(tensor::kPositionTable), cls, e,
               dims.word_dim);
    out.push_back(std::move(e));
  }
  if (model.has_position_tokens()) {
    Vec e(in, 0.0);
    copy_row(model.params().value(tensor::kPositionTokenTable), cls, e, 0);
    out.push_back(std::move(e));
  }
  return out;
}

ClauseCache encode_clause(const Model& model,
                          std::span<const std::size_t> token_ids,
                          int position) {
  const ParameterStore& p = model.params();
  const std::size_t h = model.dims().hidden;

  ClauseCache cache;
  cache.token_ids.assign(token_ids.begin(), token_ids.end());
  cache.pos_class = position_class(position, model.dims().window);
  cache.has_position_token = model.has_position_tokens();
  cache.inputs = augment_embedding(model, token_ids, position);
  const std::size_t steps = cache.inputs.size();

  const LstmWeights fwd_w{&p.value(tensor::kFwdInput),
                          &p.value(tensor::kFwdRecurrent),
                          &p.value(tensor::kFwdBias).data};
  const LstmWeights bwd_w{&p.value(tensor::kBwdInput),
                          &p.value(tensor::kBwdRecurrent),
                          &p.value(tensor::kBwdBias).data};

  std::vector<Vec> fwd_h(steps), bwd_h(steps);
  cache.fwd.resize(steps);
  cache.bwd.resize(steps);
  Vec hs(h, 0.0), cs(h, 0.0);
  for (std::size_t t = 0; t < steps; ++t) {
    Vec h_out, c_out;
    lstm_cell(fwd_w, cache.inputs[t], hs, cs, &h_out, &c_out, &cache.fwd[t]);
    hs = std::move(h_out);
    cs = std::move(c_out);
    fwd_h[t] = hs;
  }
  hs.assign(h, 0.0);
  cs.assign(h, 0.0);
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t t = steps - 1 - s;
    Vec h_out, c_out;
    lstm_cell(bwd_w, cache.inputs[t], hs, cs, &h_out, &c_out, &cache.bwd[s]);
    hs = std::move(h_out);
    cs = std::move(c_out);
    bwd_h[t] = hs;
  }

  cache.hidden.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    Vec& ht = cache.hidden[t];
    ht.resize(2 * h);
    std::copy(fwd_h[t].begin(), fwd_h[t].end(), ht.begin());
    std::copy(bwd_h[t].begin(), bwd_h[t].end(), ht.begin() + h);
  }

  // Additive attention: s_j = v . tanh(W_a h_j + b_a).
  const DenseMatrix& attn_w = p.value(tensor::kAttnProj);
  const Vec& attn_b = p.value(tensor::kAttnBias).data;
  const DenseMatrix& attn_v = p.value(tensor::kAttnScore);
  cache.attn_pre.resize(steps);
  cache.scores.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    Vec pre = affine(attn_w, cache.hidden[t], attn_b);
    for (double& x : pre) x = std::tanh(x);
    double score = 0.0;
    for (std::size_t k = 0; k < pre.size(); ++k)
      score += attn_v.at(0, k) * pre[k];
    cache.attn_pre[t] = std::move(pre);
    cache.scores[t] = score;
  }
  cache.alpha = softmax(cache.scores);

  cache.rep.assign(2 * h, 0.0);
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t k = 0; k < 2 * h; ++k)
      cache.rep[k] += cache.alpha[t] * cache.hidden[t][k];
  }
  return cache;
}

void encode_clause_backward(Model& model, const ClauseCache& cache,
                            const Vec& grad_rep) {
  ParameterStore& p = model.params();
  const std::size_t h = model.dims().hidden;
  const std::size_t steps = cache.inputs.size();
  require_size(grad_rep, 2 * h, "encode_clause_backward: grad_rep");

  // r = sum_j alpha_j h_j.
  Vec grad_alpha(steps, 0.0);
  std::vector<Vec> grad_hidden(steps, Vec(2 * h, 0.0));
  for (std::size_t t = 0; t < steps; ++t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < 2 * h; ++k) {
      acc += grad_rep[k] * cache.hidden[t][k];
      grad_hidden[t][k] += cache.alpha[t] * grad_rep[k];
    }
    grad_alpha[t] = acc;
  }

  // Attention scores.
  const Vec grad_scores = softmax_backward(cache.alpha, grad_alpha);
  const DenseMatrix& attn_w = p.value(tensor::kAttnProj);
  const DenseMatrix& attn_v = p.value(tensor::kAttnScore);
  DenseMatrix& g_attn_w = p.grad(tensor::kAttnProj);
  Vec& g_attn_b = p.grad(tensor::kAttnBias).data;
  DenseMatrix& g_attn_v = p.grad(tensor::kAttnScore);
  for (std::size_t t = 0; t < steps; ++t) {
    const Vec& pre = cache.attn_pre[t];
    Vec grad_act(pre.size());
    for (std::size_t k = 0; k < pre.size(); ++k) {
      g_attn_v.at(0, k) += grad_scores[t] * pre[k];
      grad_act[k] =
          grad_scores[t] * attn_v.at(0, k) * (1.0 - pre[k] * pre[k]);
    }
    affine_backward(attn_w, cache.hidden[t], grad_act, &g_attn_w, &g_attn_b,
                    &grad_hidden[t]);
  }

  // Backprop through time, both directions; gather input gradients.
  std::vector<Vec> grad_inputs(steps, Vec(model.input_dim(), 0.0));

  const LstmWeights fwd_w{&p.value(tensor::kFwdInput),
                          &p.value(tensor::kFwdRecurrent),
                          &p.value(tensor::kFwdBias).data};
  const LstmGrads fwd_g{&p.grad(tensor::kFwdInput),
                        &p.grad(tensor::kFwdRecurrent),
                        &p.grad(tensor::kFwdBias).data};
  Vec carry_h(h, 0.0), carry_c(h, 0.0);
  for (std::size_t t = steps; t-- > 0;) {
    Vec grad_h(h, 0.0), grad_c(h, 0.0);
    for (std::size_t k = 0; k < h; ++k) {
      grad_h[k] = grad_hidden[t][k] + carry_h[k];
      grad_c[k] = carry_c[k];
    }
    carry_h.assign(h, 0.0);
    carry_c.assign(h, 0.0);
    lstm_cell_backward(fwd_w, cache.fwd[t], grad_h, grad_c, fwd_g,
                       &grad_inputs[t], &carry_h, &carry_c);
  }

  const LstmWeights bwd_w{&p.value(tensor::kBwdInput),
                          &p.value(tensor::kBwdRecurrent),
                          &p.value(tensor::kBwdBias).data};
  const LstmGrads bwd_g{&p.grad(tensor::kBwdInput),
                        &p.grad(tensor::kBwdRecurrent),
                        &p.grad(tensor::kBwdBias).data};
  carry_h.assign(h, 0.0);
  carry_c.assign(h, 0.0);
  for (std::size_t s = steps; s-- > 0;) {
    const std::size_t t = steps - 1 - s;  // element covered by bwd[s]
    Vec grad_h(h, 0.0), grad_c(h, 0.0);
    for (std::size_t k = 0; k < h; ++k) {
      grad_h[k] = grad_hidden[t][h + k] + carry_h[k];
      grad_c[k] = carry_c[k];
    }
    carry_h.assign(h, 0.0);
    carry_c.assign(h, 0.0);
    lstm_cell_backward(bwd_w, cache.bwd[s], grad_h, grad_c, bwd_g,
                       &grad_inputs[t], &carry_h, &carry_c);
  }

  // Scatter input gradients into the embedding tables.
  DenseMatrix& g_words = p.grad(tensor::kWordTable);
  const std::size_t real_tokens = cache.token_ids.size();
  for (std::size_t t = 0; t < real_tokens; ++t)
    add_to_row(g_words, cache.token_ids[t], grad_inputs[t], 0);
  if (model.flags().position_mode == PositionMode::kPae) {
    DenseMatrix& g_pos = p.grad(tensor::kPositionTable);
    for (std::size_t t = 0; t < real_tokens; ++t)
      add_to_row(g_pos, cache.pos_class, grad_inputs[t], model.dims().word_dim);
  }
  if (cache.has_position_token) {
    DenseMatrix& g_ptok = p.grad(tensor::kPositionTokenTable);
    add_to_row(g_ptok, cache.pos_class, grad_inputs[real_tokens], 0);
  }
}

}  // namespace paedgl
