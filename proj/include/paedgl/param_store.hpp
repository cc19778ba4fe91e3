#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "paedgl/matrix.hpp"
#include "paedgl/rng.hpp"

namespace paedgl {

// Named parameter tensors with matching gradient buffers.  Tensors flagged
// as weights take part in L2 regularization; biases and embedding tables do
// not.  Iteration order is registration order, which fixes the layout of
// checkpoints and the traversal order of SGD updates.
class ParameterStore {
 public:
  struct Entry {
    std::string name;
    DenseMatrix value;
    DenseMatrix grad;
    bool is_weight = false;
  };

  // Registers a tensor; duplicate names throw ArgumentError.
  DenseMatrix& add(std::string name, std::size_t rows, std::size_t cols,
                   bool is_weight);

  bool contains(std::string_view name) const;
  DenseMatrix& value(std::string_view name);
  const DenseMatrix& value(std::string_view name) const;
  DenseMatrix& grad(std::string_view name);
  const DenseMatrix& grad(std::string_view name) const;

  std::deque<Entry>& entries() { return entries_; }
  const std::deque<Entry>& entries() const { return entries_; }

  std::size_t parameter_count() const;

  void zero_grads();

  // sum of squared entries over weight-flagged tensors.
  double weight_squared_norm() const;

  // grad += 2 * lambda * value on weight-flagged tensors.
  void add_l2_gradient(double lambda);

  // Global L2 norm over every gradient buffer.
  double grad_norm() const;

  // Scales all gradients by max_norm/norm when norm exceeds max_norm.
  // Returns the pre-clip norm.
  double clip_grads(double max_norm);

  // value -= lr * grad, all tensors.
  void sgd_step(double learning_rate);

  // Fills every tensor with U(lo, hi) draws in registration order.
  void uniform_init(double lo, double hi, Rng& rng);

 private:
  std::size_t index_of(std::string_view name) const;

  std::deque<Entry> entries_;  // deque: references from add() stay valid
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace paedgl
