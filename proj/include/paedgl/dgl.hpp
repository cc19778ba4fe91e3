#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paedgl/encoder.hpp"
#include "paedgl/model.hpp"

namespace paedgl {

// Visiting order for the sequential cause loop.
struct ReorderPlan {
  std::vector<int> positions;        // original order
  std::vector<std::size_t> visit;    // visit[k] = clause index at step k
};

// Stable sort by (|position|, negative-before-positive); ties (clipping
// duplicates) keep document order.  The emotion clause comes first.
ReorderPlan reorder(std::span<const int> positions);

// Identity visiting order (original document order).
ReorderPlan identity_order(std::span<const int> positions);

// Length-q signed label vector built up one prediction at a time.
class DglState {
 public:
  explicit DglState(std::size_t q);

  // Writes +1 (cause) or -1 at the current step slot.
  void update(bool is_cause);

  const Vec& values() const { return values_; }
  std::size_t step() const { return step_; }
  std::size_t capacity() const { return values_.size(); }

 private:
  Vec values_;
  std::size_t step_ = 0;
};

// p-hat = softmax(W_s r + b_s) over 2L+1 position classes.
Vec predict_position(const Model& model, const Vec& rep);

// y-hat = softmax(W_c [rep_ext; DGL] + b_c); index 1 = cause probability.
// rep_ext is rep, with the clause's position embedding appended under kPec.
Vec predict_cause(const Model& model, const Vec& rep_ext,
                  const DglState& state);

// Classifier input assembly: rep (+ position embedding row under kPec).
Vec extend_rep(const Model& model, const Vec& rep, std::size_t pos_class);

// Sequential greedy inference; returns 0/1 labels in document order.
// Oracle mode feeds gold labels into the DGL updates (upper-bound probe).
std::vector<std::uint8_t> infer_document(const Model& model,
                                         const Document& doc,
                                         InferMode mode = InferMode::kPredicted);

}  // namespace paedgl
