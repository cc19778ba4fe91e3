#include "paedgl/param_store.hpp"

#include <cmath>

namespace paedgl {

DenseMatrix& ParameterStore::add(std::string name, std::size_t rows,
                                 std::size_t cols, bool is_weight) {
  if (index_.contains(name))
    throw ArgumentError("ParameterStore: duplicate tensor '" + name + "'");
  if (rows == 0 || cols == 0)
    throw ShapeError("ParameterStore: tensor '" + name + "' has zero extent");
  index_.emplace(name, entries_.size());
  entries_.push_back(Entry{std::move(name), DenseMatrix(rows, cols),
                           DenseMatrix(rows, cols), is_weight});
  return entries_.back().value;
}

std::size_t ParameterStore::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw ArgumentError("ParameterStore: unknown tensor '" +
                        std::string(name) + "'");
  return it->second;
}

bool ParameterStore::contains(std::string_view name) const {
  return index_.find(name) != index_.end();
}

DenseMatrix& ParameterStore::value(std::string_view name) {
  return entries_[index_of(name)].value;
}

const DenseMatrix& ParameterStore::value(std::string_view name) const {
  return entries_[index_of(name)].value;
}

DenseMatrix& ParameterStore::grad(std::string_view name) {
  return entries_[index_of(name)].grad;
}

const DenseMatrix& ParameterStore::grad(std::string_view name) const {
  return entries_[index_of(name)].grad;
}

std::size_t ParameterStore::parameter_count() const {
  std::size_t n = 0;
  for (const Entry& e : entries_) n += e.value.size();
  return n;
}

void ParameterStore::zero_grads() {
  for (Entry& e : entries_) e.grad.fill(0.0);
}

double ParameterStore::weight_squared_norm() const {
  double total = 0.0;
  for (const Entry& e : entries_) {
    if (!e.is_weight) continue;
    for (double v : e.value.data) total += v * v;
  }
  return total;
}

void ParameterStore::add_l2_gradient(double lambda) {
  for (Entry& e : entries_) {
    if (!e.is_weight) continue;
    for (std::size_t i = 0; i < e.value.data.size(); ++i)
      e.grad.data[i] += 2.0 * lambda * e.value.data[i];
  }
}

double ParameterStore::grad_norm() const {
  double total = 0.0;
  for (const Entry& e : entries_) {
    for (double g : e.grad.data) total += g * g;
  }
  return std::sqrt(total);
}

double ParameterStore::clip_grads(double max_norm) {
  if (max_norm <= 0.0) throw ArgumentError("clip_grads: max_norm must be > 0");
  double norm = grad_norm();
  if (norm > max_norm) {
    double scale = max_norm / norm;
    for (Entry& e : entries_) {
      for (double& g : e.grad.data) g *= scale;
    }
  }
  return norm;
}

void ParameterStore::sgd_step(double learning_rate) {
  for (Entry& e : entries_) {
    for (std::size_t i = 0; i < e.value.data.size(); ++i)
      e.value.data[i] -= learning_rate * e.grad.data[i];
  }
}

void ParameterStore::uniform_init(double lo, double hi, Rng& rng) {
  for (Entry& e : entries_) {
    for (double& v : e.value.data) v = rng.uniform(lo, hi);
  }
}

}  // namespace paedgl
