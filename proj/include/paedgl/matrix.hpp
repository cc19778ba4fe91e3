#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "paedgl/errors.hpp"

namespace paedgl {

using Vec = std::vector<double>;

// Row-major dense matrix of doubles.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::size_t size() const { return data.size(); }

  void fill(double v) { data.assign(data.size(), v); }
};

inline bool all_finite(const Vec& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

inline bool all_finite(const DenseMatrix& m) { return all_finite(m.data); }

inline void require_size(const Vec& v, std::size_t n, std::string_view name) {
  if (v.size() != n) {
    throw ShapeError(std::string(name) + ": expected length " +
                     std::to_string(n) + ", got " + std::to_string(v.size()));
  }
}

inline void require_shape(const DenseMatrix& m, std::size_t r, std::size_t c,
                          std::string_view name) {
  if (m.rows != r || m.cols != c) {
    throw ShapeError(std::string(name) + ": expected " + std::to_string(r) +
                     "x" + std::to_string(c) + ", got " +
                     std::to_string(m.rows) + "x" + std::to_string(m.cols));
  }
}

}  // namespace paedgl
