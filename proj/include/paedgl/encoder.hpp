#pragma once

#include <span>
#include <vector>

#include "paedgl/model.hpp"
#include "paedgl/numerics.hpp"

namespace paedgl {

// Forward-pass record for one clause, sufficient to run the backward pass.
struct ClauseCache {
  std::vector<std::size_t> token_ids;  // pseudo-token appended under kPl
  std::size_t pos_class = 0;
  bool has_position_token = false;     // last id indexes the position-token table
  std::vector<Vec> inputs;             // e_j, one per sequence element
  std::vector<LstmStepCache> fwd;      // left-to-right, per element
  std::vector<LstmStepCache> bwd;      // right-to-left, bwd[s] covers element T-1-s
  std::vector<Vec> hidden;             // [fwd_h ; bwd_h], dim d
  std::vector<Vec> attn_pre;           // tanh(W_a h_j + b_a)
  Vec scores;                          // a . attn_pre_j
  Vec alpha;                           // softmax(scores)
  Vec rep;                             // r = sum_j alpha_j h_j
};

// Position-augmented input vectors for one clause: each token's word
// embedding, with the clause's position embedding appended under kPae.
// Under kPl a final pseudo-token input is added.  Token ids must be < |V|.
std::vector<Vec> augment_embedding(const Model& model,
                                   std::span<const std::size_t> token_ids,
                                   int position);

// Bidirectional recurrent pass + additive attention pooling.
ClauseCache encode_clause(const Model& model,
                          std::span<const std::size_t> token_ids,
                          int position);

// Accumulates dL/dparams and the embedding-row gradients for dL/drep.
void encode_clause_backward(Model& model, const ClauseCache& cache,
                            const Vec& grad_rep);

// Maps clause tokens to vocabulary ids (UNK for unseen tokens).
std::vector<std::size_t> clause_token_ids(const Vocabulary& vocab,
                                          const Clause& clause);

}  // namespace paedgl
