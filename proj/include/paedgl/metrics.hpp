#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "paedgl/errors.hpp"

namespace paedgl {

struct Metrics {
  std::size_t proposed = 0;   // clauses predicted as cause
  std::size_t annotated = 0;  // gold cause clauses
  std::size_t correct = 0;    // intersection
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

using LabelSet = std::vector<std::vector<std::uint8_t>>;

// Clause-level counts aggregated over all documents.  precision = 0 when
// nothing is proposed; f1 = 0 when precision + recall = 0.
Metrics compute_metrics(std::span<const std::vector<std::uint8_t>> predicted,
                        std::span<const std::vector<std::uint8_t>> gold);

// Share of documents with 0, 1, 2, and 3-or-more predicted causes.
// Keys 0..3; the key 3 bucket aggregates everything >= 3.
std::map<std::size_t, double> cause_count_histogram(
    std::span<const std::vector<std::uint8_t>> predicted);

}  // namespace paedgl
