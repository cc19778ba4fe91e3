#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "paedgl/param_store.hpp"

namespace paedgl {

struct GradCheckEntry {
  std::string tensor;
  std::size_t checked = 0;       // elements compared
  double max_rel_err = 0.0;
  std::size_t worst_index = 0;   // flat index of the worst element
  double analytic = 0.0;         // gradients at the worst element
  double numeric = 0.0;
};

struct GradCheckReport {
  std::vector<GradCheckEntry> entries;
  double tolerance = 0.0;
  double max_rel_err = 0.0;
  bool passed = false;

  std::string summary() const;
};

// Central-difference validation of analytic gradients.
//
// `loss_fn` must recompute the loss from the store's current values and
// accumulate gradients into the store (which is zeroed before each call).
// It is called twice up front; if the two loss values differ bitwise a
// DeterminismError is thrown.  When sample_per_tensor > 0, at most that many
// elements per tensor are perturbed, chosen by a deterministic draw from
// sample_seed.
GradCheckReport grad_check(ParameterStore& store,
                           const std::function<double()>& loss_fn,
                           double tolerance, double step = 1e-5,
                           std::size_t sample_per_tensor = 0,
                           std::uint64_t sample_seed = 0);

}  // namespace paedgl
