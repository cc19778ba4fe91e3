#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paedgl/metrics.hpp"
#include "paedgl/model.hpp"
#include "paedgl/training.hpp"

namespace paedgl {

// Named model variants for the ablation grid.
inline constexpr std::string_view kVariantNames[] = {
    "bilstm", "pl", "pec", "pae", "pae-dgl", "dgl-po", "dgl-upper"};

// Flag assignment for a variant name; ConfigError lists valid names.
ModelFlags variant_flags(std::string_view name);

// dgl-upper evaluates with oracle-label DGL updates.
InferMode variant_infer_mode(std::string_view name);

// Labels for every document; parallel version splits documents over
// OpenMP threads (results independent of thread count).
LabelSet infer_corpus_serial(const Model& model,
                             std::span<const Document> docs, InferMode mode);
LabelSet infer_corpus(const Model& model, std::span<const Document> docs,
                      InferMode mode, int threads = 0);

struct AblationConfig {
  std::vector<std::string> variants;
  std::size_t repetitions = 5;
  double split = 0.9;         // train fraction
  int threads = 0;            // 0 = OpenMP default
  TrainConfig base;           // flags overridden per variant; seed is the base
};

struct AblationRow {
  std::string variant;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;     // derived seed actually used
  Metrics metrics;
  double zero_cause_share = 0.0;   // documents predicted with no cause
  double multi_cause_share = 0.0;  // documents predicted with >= 2 causes
  double wall_clock_seconds = 0.0;
};

// Trains and evaluates every (variant, repetition) cell on a seeded
// train/test split (the split depends only on the repetition, so variants
// compare on identical data).  Cells run in parallel; row order is fixed.
std::vector<AblationRow> run_ablation(std::span<const Document> docs,
                                      const AblationConfig& cfg);

// Line-delimited records, one per row.
void write_results(const std::filesystem::path& path,
                   std::span<const AblationRow> rows);
std::vector<AblationRow> read_results(const std::filesystem::path& path);

// Aligned human-readable table with per-variant means.
std::string format_results_table(std::span<const AblationRow> rows);

}  // namespace paedgl
