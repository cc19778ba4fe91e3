#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "paedgl/corpus.hpp"

namespace paedgl {

// Synthetic corpus generator.  Cause positions follow a configurable
// relative-position probability table; cause clauses carry an inserted
// marker token with probability content_signal, on top of a uniform
// background token stream in which markers occur at rate
// marker_types / vocab_size.  With probability distractor a document also
// plants one marker in a non-cause clause drawn from the same position
// table, so marker presence alone cannot settle the label.  The emotion
// clause opens with a dedicated emotion token and draws its filler from
// the marker-free range, so it is never spuriously marked.
struct GeneratorConfig {
  std::size_t docs = 5000;
  std::size_t vocab_size = 150;   // content vocabulary, marker types included
  std::size_t marker_types = 4;
  std::size_t emotion_types = 4;
  std::size_t clause_len_min = 3;
  std::size_t clause_len_max = 7;
  std::size_t clauses_min = 8;
  std::size_t clauses_max = 13;
  std::size_t emotion_margin = 3;  // clauses on each side of the emotion clause
  int window = kDefaultWindow;
  // position -> probability weight of being a cause; normalized internally.
  std::map<int, double> position_table;
  // P(document has 1, 2, ... causes); normalized internally.
  std::vector<double> cause_counts = {0.9720, 0.0266, 0.0014};
  double content_signal = 0.7;
  double distractor = 0.25;
  std::uint64_t seed = 7;
};

// Default cause-position distribution: mass concentrates just before the
// emotion clause (54.45% at -1), a named share for each |p| <= 3, and a
// small residual split evenly over the remaining positions up to +-window.
std::map<int, double> default_position_table(int window = kDefaultWindow);

void validate_config(const GeneratorConfig& cfg);

// Deterministic given cfg.seed.
std::vector<Document> generate_synthetic(const GeneratorConfig& cfg);

}  // namespace paedgl
