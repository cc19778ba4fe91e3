#include "paedgl/model.hpp"

namespace paedgl {

Model::Model(ModelDims dims, ModelFlags flags, Vocabulary vocab)
    : dims_(dims), flags_(flags), vocab_(std::move(vocab)) {
  if (dims_.vocab == 0) dims_.vocab = vocab_.size();
  if (dims_.vocab != vocab_.size())
    throw ArgumentError("Model: dims.vocab disagrees with vocabulary size");
  if (dims_.word_dim == 0 || dims_.hidden == 0 || dims_.max_doc_len == 0)
    throw ArgumentError("Model: zero-sized dimension");
  if (dims_.window < 1) throw ArgumentError("Model: window must be >= 1");
  if (has_position_table() && dims_.pos_dim == 0)
    throw ArgumentError("Model: pos_dim must be positive in this mode");
  register_tensors();
}

Model Model::init(ModelDims dims, ModelFlags flags, Vocabulary vocab,
                  std::uint64_t seed) {
  Model model(dims, flags, std::move(vocab));
  Rng rng(seed);
  model.params_.uniform_init(-0.01, 0.01, rng);
  return model;
}

std::size_t Model::input_dim() const {
  return flags_.position_mode == PositionMode::kPae
             ? dims_.word_dim + dims_.pos_dim
             : dims_.word_dim;
}

std::size_t Model::extended_rep_dim() const {
  return flags_.position_mode == PositionMode::kPec
             ? dims_.rep_dim() + dims_.pos_dim
             : dims_.rep_dim();
}

std::size_t Model::cause_input_dim() const {
  return extended_rep_dim() + dims_.max_doc_len;
}

bool Model::has_position_table() const {
  return flags_.position_mode == PositionMode::kPae ||
         flags_.position_mode == PositionMode::kPec;
}

bool Model::has_position_tokens() const {
  return flags_.position_mode == PositionMode::kPl;
}

void Model::register_tensors() {
  const std::size_t classes = dims_.position_classes();
  const std::size_t d = dims_.rep_dim();
  const std::size_t h = dims_.hidden;

  params_.add(std::string(tensor::kWordTable), dims_.vocab, dims_.word_dim,
              /*is_weight=*/false);
  if (has_position_table())
    params_.add(std::string(tensor::kPositionTable), classes, dims_.pos_dim,
                false);
  if (has_position_tokens())
    params_.add(std::string(tensor::kPositionTokenTable), classes,
                dims_.word_dim, false);

  const std::size_t in = input_dim();
  params_.add(std::string(tensor::kFwdInput), 4 * h, in, true);
  params_.add(std::string(tensor::kFwdRecurrent), 4 * h, h, true);
  params_.add(std::string(tensor::kFwdBias), 4 * h, 1, false);
  params_.add(std::string(tensor::kBwdInput), 4 * h, in, true);
  params_.add(std::string(tensor::kBwdRecurrent), 4 * h, h, true);
  params_.add(std::string(tensor::kBwdBias), 4 * h, 1, false);

  params_.add(std::string(tensor::kAttnProj), h, d, true);
  params_.add(std::string(tensor::kAttnBias), h, 1, false);
  params_.add(std::string(tensor::kAttnScore), 1, h, true);

  if (flags_.use_pae_loss) {
    params_.add(std::string(tensor::kPositionHeadW), classes, d, true);
    params_.add(std::string(tensor::kPositionHeadB), classes, 1, false);
  }

  params_.add(std::string(tensor::kCauseHeadW), 2, cause_input_dim(), true);
  params_.add(std::string(tensor::kCauseHeadB), 2, 1, false);
}

}  // namespace paedgl
