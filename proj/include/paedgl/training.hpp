#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "paedgl/dgl.hpp"
#include "paedgl/model.hpp"

namespace paedgl {

struct TrainConfig {
  ModelDims dims;
  ModelFlags flags;
  double lambda_p = 1.0;       // weight of the position loss
  double lambda_c = 1.0;       // weight of the cause loss
  double l2 = 1e-5;            // L2 coefficient (weights only)
  double learning_rate = 0.005;
  std::size_t epochs = 10;
  double clip_norm = 5.0;      // global gradient-norm clip
  std::size_t min_count = 1;   // vocabulary threshold
  std::uint64_t seed = 1;
};

void validate_config(const TrainConfig& cfg);

struct LossBreakdown {
  double position = 0.0;  // unweighted
  double cause = 0.0;     // unweighted
  double l2 = 0.0;        // squared weight norm
  double total = 0.0;     // lambda_p*position + lambda_c*cause + l2_coeff*l2
};

// Sum of per-clause cross-entropies against one-hot position classes.
double position_loss(std::span<const Vec> predictions,
                     std::span<const int> positions, int window);

// Sum of per-clause cross-entropies against the gold cause labels.
double cause_loss(std::span<const Vec> predictions,
                  std::span<const std::uint8_t> gold);

// Optional trace of one document_loss call, for inspection in tests.
struct DocumentLossDetail {
  // DGL vector in effect at each step of the cause loop (pre-update).
  std::vector<Vec> dgl_states;
  std::vector<std::size_t> visit;
};

// Teacher-forced combined loss for one document.  With with_grads set,
// accumulates dtotal/dtheta into the model's gradient buffers (which the
// caller is expected to have zeroed).
LossBreakdown document_loss(Model& model, const Document& doc,
                            const TrainConfig& cfg, bool with_grads,
                            DocumentLossDetail* detail = nullptr);

struct TrainResult {
  Model model;
  std::vector<LossBreakdown> epoch_mean;  // one entry per epoch
};

// Seeded SGD, one clipped gradient step per document, shuffled each epoch.
// Throws DivergenceError (naming the document) if the loss goes non-finite.
TrainResult train(std::span<const Document> docs, const TrainConfig& cfg);

// Same, with a caller-supplied vocabulary (checkpoint compatibility paths).
TrainResult train(std::span<const Document> docs, const TrainConfig& cfg,
                  Vocabulary vocab);

}  // namespace paedgl
