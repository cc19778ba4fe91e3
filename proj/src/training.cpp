#include "paedgl/training.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace paedgl {

void validate_config(const TrainConfig& cfg) {
  if (cfg.lambda_p < 0.0 || cfg.lambda_c < 0.0 || cfg.l2 < 0.0)
    throw ConfigError("train: loss weights must be nonnegative");
  if (cfg.learning_rate < 0.0)
    throw ConfigError("train: learning rate must be nonnegative");
  if (cfg.clip_norm <= 0.0)
    throw ConfigError("train: clip norm must be positive");
  if (cfg.min_count == 0)
    throw ConfigError("train: min_count must be >= 1");
}

double position_loss(std::span<const Vec> predictions,
                     std::span<const int> positions, int window) {
  if (predictions.size() != positions.size())
    throw ShapeError("position_loss: prediction/position count mismatch");
  double loss = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const std::size_t cls = position_class(positions[i], window);
    if (cls >= predictions[i].size())
      throw IndexError("position_loss: class outside prediction length");
    loss -= std::log(std::max(predictions[i][cls], kLogFloor));
  }
  return loss;
}

double cause_loss(std::span<const Vec> predictions,
                  std::span<const std::uint8_t> gold) {
  if (predictions.size() != gold.size())
    throw ShapeError("cause_loss: prediction/label count mismatch");
  double loss = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    require_size(predictions[i], 2, "cause_loss: prediction");
    loss -= std::log(std::max(predictions[i][gold[i] == 1 ? 1 : 0], kLogFloor));
  }
  return loss;
}

LossBreakdown document_loss(Model& model, const Document& doc,
                            const TrainConfig& cfg, bool with_grads,
                            DocumentLossDetail* detail) {
  const std::size_t n = doc.size();
  const std::size_t q = model.dims().max_doc_len;
  if (n > q)
    throw CapacityError("document_loss: document '" + doc.doc_id + "' has " +
                        std::to_string(n) + " clauses, model capacity " +
                        std::to_string(q));
  ParameterStore& params = model.params();
  const std::vector<int> positions =
      relative_positions(doc, model.dims().window);

  std::vector<ClauseCache> caches(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ids = clause_token_ids(model.vocab(), doc.clauses[i]);
    caches[i] = encode_clause(model, ids, positions[i]);
  }
  std::vector<Vec> grad_rep(n, Vec(model.dims().rep_dim(), 0.0));

  LossBreakdown out;

  // Position head (auxiliary supervision).
  if (model.flags().use_pae_loss) {
    std::vector<Vec> probs(n);
    for (std::size_t i = 0; i < n; ++i)
      probs[i] = predict_position(model, caches[i].rep);
    out.position = position_loss(probs, positions, model.dims().window);
    if (with_grads && cfg.lambda_p != 0.0) {
      const DenseMatrix& w = params.value(tensor::kPositionHeadW);
      DenseMatrix& gw = params.grad(tensor::kPositionHeadW);
      Vec& gb = params.grad(tensor::kPositionHeadB).data;
      for (std::size_t i = 0; i < n; ++i) {
        const Vec grad_logits =
            softmax_xent_grad(probs[i], caches[i].pos_class, cfg.lambda_p);
        affine_backward(w, caches[i].rep, grad_logits, &gw, &gb, &grad_rep[i]);
      }
    }
  }

  // Sequential cause loop with teacher forcing: the DGL entries come from
  // gold labels, so no gradient flows between steps.
  {
    const ReorderPlan plan = model.flags().order == OrderMode::kReordered
                                 ? reorder(positions)
                                 : identity_order(positions);
    if (detail != nullptr) {
      detail->dgl_states.clear();
      detail->visit = plan.visit;
    }
    const DenseMatrix& w = params.value(tensor::kCauseHeadW);
    DenseMatrix& gw = params.grad(tensor::kCauseHeadW);
    Vec& gb = params.grad(tensor::kCauseHeadB).data;
    const std::size_t d = model.dims().rep_dim();
    const std::size_t d_ext = model.extended_rep_dim();

    std::vector<Vec> probs(n);
    DglState state(q);
    for (std::size_t step = 0; step < n; ++step) {
      const std::size_t ci = plan.visit[step];
      if (detail != nullptr) detail->dgl_states.push_back(state.values());
      const Vec rep_ext = extend_rep(model, caches[ci].rep, caches[ci].pos_class);
      probs[ci] = predict_cause(model, rep_ext, state);
      if (with_grads && cfg.lambda_c != 0.0) {
        Vec input;
        input.reserve(model.cause_input_dim());
        input.insert(input.end(), rep_ext.begin(), rep_ext.end());
        input.insert(input.end(), state.values().begin(),
                     state.values().end());
        const Vec grad_logits = softmax_xent_grad(
            probs[ci], doc.gold_causes[ci] == 1 ? 1 : 0, cfg.lambda_c);
        Vec grad_input(input.size(), 0.0);
        affine_backward(w, input, grad_logits, &gw, &gb, &grad_input);
        for (std::size_t k = 0; k < d; ++k) grad_rep[ci][k] += grad_input[k];
        if (model.flags().position_mode == PositionMode::kPec) {
          DenseMatrix& g_pos = params.grad(tensor::kPositionTable);
          for (std::size_t k = d; k < d_ext; ++k)
            g_pos.at(caches[ci].pos_class, k - d) += grad_input[k];
        }
        // grad_input beyond d_ext covers the DGL slots: teacher-forced
        // constants, no gradient to propagate.
      }
      if (model.flags().use_dgl) state.update(doc.gold_causes[ci] == 1);
    }
    out.cause = cause_loss(probs, doc.gold_causes);
  }

  if (with_grads) {
    for (std::size_t i = 0; i < n; ++i)
      encode_clause_backward(model, caches[i], grad_rep[i]);
  }

  out.l2 = params.weight_squared_norm();
  if (with_grads && cfg.l2 != 0.0) params.add_l2_gradient(cfg.l2);

  out.total = cfg.lambda_p * out.position + cfg.lambda_c * out.cause +
              cfg.l2 * out.l2;
  return out;
}

namespace {

TrainResult train_impl(std::span<const Document> docs, const TrainConfig& cfg,
                       Vocabulary vocab) {
  validate_config(cfg);
  if (docs.empty()) throw ArgumentError("train: empty corpus");

  ModelDims dims = cfg.dims;
  dims.vocab = vocab.size();
  TrainResult result{
      Model::init(dims, cfg.flags, std::move(vocab),
                  mix_seed(cfg.seed, 0x1717ull)),
      {}};
  Model& model = result.model;

  Rng shuffle_rng(mix_seed(cfg.seed, 0x5affull));
  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    LossBreakdown mean;
    for (std::size_t idx : order) {
      const Document& doc = docs[idx];
      model.params().zero_grads();
      const LossBreakdown loss = document_loss(model, doc, cfg, true);
      if (!std::isfinite(loss.total))
        throw DivergenceError("train: non-finite loss at document '" +
                              doc.doc_id + "', epoch " +
                              std::to_string(epoch + 1));
      model.params().clip_grads(cfg.clip_norm);
      model.params().sgd_step(cfg.learning_rate);
      mean.position += loss.position;
      mean.cause += loss.cause;
      mean.l2 += loss.l2;
      mean.total += loss.total;
    }
    const double count = static_cast<double>(docs.size());
    mean.position /= count;
    mean.cause /= count;
    mean.l2 /= count;
    mean.total /= count;
    result.epoch_mean.push_back(mean);
  }
  return result;
}

}  // namespace

TrainResult train(std::span<const Document> docs, const TrainConfig& cfg) {
  if (docs.empty()) throw ArgumentError("train: empty corpus");
  return train_impl(docs, cfg, Vocabulary::build(docs, cfg.min_count));
}

TrainResult train(std::span<const Document> docs, const TrainConfig& cfg,
                  Vocabulary vocab) {
  return train_impl(docs, cfg, std::move(vocab));
}

}  // namespace paedgl
