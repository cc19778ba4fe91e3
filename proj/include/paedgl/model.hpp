#pragma once

#include <cstdint>
#include <string_view>

#include "paedgl/corpus.hpp"
#include "paedgl/param_store.hpp"

namespace paedgl {

// How relative position enters the clause representation.
//   kNone: not at all.
//   kPae:  per-word concatenation of a position embedding (dim n).
//   kPl:   extra final pseudo-token carrying an m-dim position embedding.
//   kPec:  position embedding concatenated to r at the classifier input.
enum class PositionMode { kNone, kPae, kPl, kPec };

// Clause visiting order for the sequential cause loop.
enum class OrderMode { kReordered, kOriginal };

// Where the DGL entries come from at inference time.
enum class InferMode { kPredicted, kOracle };

struct ModelDims {
  std::size_t vocab = 0;       // |V|, including UNK
  std::size_t word_dim = 200;  // m
  std::size_t pos_dim = 50;    // n
  std::size_t hidden = 100;    // per direction
  int window = kDefaultWindow;
  std::size_t max_doc_len = kDefaultMaxDocLen;  // q, DGL length

  std::size_t position_classes() const {
    return 2 * static_cast<std::size_t>(window) + 1;
  }
  std::size_t rep_dim() const { return 2 * hidden; }  // d
};

struct ModelFlags {
  PositionMode position_mode = PositionMode::kPae;
  bool use_pae_loss = true;
  bool use_dgl = true;
  OrderMode order = OrderMode::kReordered;
};

// The full parameter set plus its structural metadata.  Tensor names and
// registration order are fixed; checkpoints serialize them in this order.
class Model {
 public:
  Model(ModelDims dims, ModelFlags flags, Vocabulary vocab);

  // All tensors drawn i.i.d. from U(-0.01, 0.01), deterministic in seed.
  static Model init(ModelDims dims, ModelFlags flags, Vocabulary vocab,
                    std::uint64_t seed);

  const ModelDims& dims() const { return dims_; }
  const ModelFlags& flags() const { return flags_; }
  const Vocabulary& vocab() const { return vocab_; }
  ParameterStore& params() { return params_; }
  const ParameterStore& params() const { return params_; }

  // Per-token input width of the recurrent cells.
  std::size_t input_dim() const;
  // Classifier-side clause representation width: d, or d+n under kPec.
  std::size_t extended_rep_dim() const;
  // Cause-head input width: extended_rep_dim() + q.
  std::size_t cause_input_dim() const;

  bool has_position_table() const;     // kPae or kPec
  bool has_position_tokens() const;    // kPl

 private:
  void register_tensors();

  ModelDims dims_;
  ModelFlags flags_;
  Vocabulary vocab_;
  ParameterStore params_;
};

// Tensor names (see Model::register_tensors for shapes).
namespace tensor {
inline constexpr std::string_view kWordTable = "embed.word";
inline constexpr std::string_view kPositionTable = "embed.position";
inline constexpr std::string_view kPositionTokenTable = "embed.position_token";
inline constexpr std::string_view kFwdInput = "lstm.fwd.W";
inline constexpr std::string_view kFwdRecurrent = "lstm.fwd.U";
inline constexpr std::string_view kFwdBias = "lstm.fwd.b";
inline constexpr std::string_view kBwdInput = "lstm.bwd.W";
inline constexpr std::string_view kBwdRecurrent = "lstm.bwd.U";
inline constexpr std::string_view kBwdBias = "lstm.bwd.b";
inline constexpr std::string_view kAttnProj = "attn.W";
inline constexpr std::string_view kAttnBias = "attn.b";
inline constexpr std::string_view kAttnScore = "attn.v";
inline constexpr std::string_view kPositionHeadW = "head.position.W";
inline constexpr std::string_view kPositionHeadB = "head.position.b";
inline constexpr std::string_view kCauseHeadW = "head.cause.W";
inline constexpr std::string_view kCauseHeadB = "head.cause.b";
}  // namespace tensor

}  // namespace paedgl
