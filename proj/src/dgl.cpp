#include "paedgl/dgl.hpp"

#include <algorithm>
#include <numeric>

namespace paedgl {

ReorderPlan reorder(std::span<const int> positions) {
  ReorderPlan plan;
  plan.positions.assign(positions.begin(), positions.end());
  plan.visit.resize(positions.size());
  std::iota(plan.visit.begin(), plan.visit.end(), std::size_t{0});
  std::stable_sort(plan.visit.begin(), plan.visit.end(),
                   [&](std::size_t a, std::size_t b) {
                     const int pa = positions[a], pb = positions[b];
                     const int ma = std::abs(pa), mb = std::abs(pb);
                     if (ma != mb) return ma < mb;
                     return (pa < 0 ? 0 : 1) < (pb < 0 ? 0 : 1);
                   });
  return plan;
}

ReorderPlan identity_order(std::span<const int> positions) {
  ReorderPlan plan;
  plan.positions.assign(positions.begin(), positions.end());
  plan.visit.resize(positions.size());
  std::iota(plan.visit.begin(), plan.visit.end(), std::size_t{0});
  return plan;
}

DglState::DglState(std::size_t q) : values_(q, 0.0) {
  if (q == 0) throw ArgumentError("DglState: q must be >= 1");
}

void DglState::update(bool is_cause) {
  if (step_ >= values_.size())
    throw CapacityError("DglState: update past capacity q=" +
                        std::to_string(values_.size()));
  values_[step_] = is_cause ? 1.0 : -1.0;
  ++step_;
}

Vec predict_position(const Model& model, const Vec& rep) {
  const auto& p = model.params();
  if (!model.flags().use_pae_loss)
    throw ArgumentError("predict_position: model has no position head");
  return softmax(affine(p.value(tensor::kPositionHeadW), rep,
                        p.value(tensor::kPositionHeadB).data));
}

Vec extend_rep(const Model& model, const Vec& rep, std::size_t pos_class) {
  require_size(rep, model.dims().rep_dim(), "extend_rep: rep");
  if (model.flags().position_mode != PositionMode::kPec) return rep;
  const DenseMatrix& table = model.params().value(tensor::kPositionTable);
  Vec out = rep;
  out.reserve(rep.size() + table.cols);
  for (std::size_t c = 0; c < table.cols; ++c)
    out.push_back(table.at(pos_class, c));
  return out;
}

Vec predict_cause(const Model& model, const Vec& rep_ext,
                  const DglState& state) {
  require_size(rep_ext, model.extended_rep_dim(), "predict_cause: rep");
  if (state.capacity() != model.dims().max_doc_len)
    throw ShapeError("predict_cause: DGL length disagrees with model q");
  Vec input;
  input.reserve(model.cause_input_dim());
  input.insert(input.end(), rep_ext.begin(), rep_ext.end());
  input.insert(input.end(), state.values().begin(), state.values().end());
  const auto& p = model.params();
  return softmax(affine(p.value(tensor::kCauseHeadW), input,
                        p.value(tensor::kCauseHeadB).data));
}

std::vector<std::uint8_t> infer_document(const Model& model,
                                         const Document& doc,
                                         InferMode mode) {
  const std::size_t n = doc.size();
  const std::size_t q = model.dims().max_doc_len;
  if (n > q)
    throw CapacityError("infer_document: document '" + doc.doc_id + "' has " +
                        std::to_string(n) + " clauses, model capacity " +
                        std::to_string(q));
  const std::vector<int> positions =
      relative_positions(doc, model.dims().window);
  const ReorderPlan plan = model.flags().order == OrderMode::kReordered
                               ? reorder(positions)
                               : identity_order(positions);

  std::vector<Vec> reps(n);
  std::vector<std::size_t> classes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ids = clause_token_ids(model.vocab(), doc.clauses[i]);
    ClauseCache cache = encode_clause(model, ids, positions[i]);
    classes[i] = cache.pos_class;
    reps[i] = std::move(cache.rep);
  }

  std::vector<std::uint8_t> labels(n, 0);
  DglState state(q);
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t ci = plan.visit[step];
    const Vec probs =
        predict_cause(model, extend_rep(model, reps[ci], classes[ci]), state);
    const bool is_cause = probs[1] > probs[0];  // tie resolves to non-cause
    labels[ci] = is_cause ? 1 : 0;
    if (model.flags().use_dgl) {
      const bool fed = mode == InferMode::kOracle ? doc.gold_causes[ci] == 1
                                                  : is_cause;
      state.update(fed);
    }
  }
  return labels;
}

}  // namespace paedgl
