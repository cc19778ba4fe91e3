#include "paedgl/generator.hpp"

#include <algorithm>
#include <string>

#include "paedgl/rng.hpp"

namespace paedgl {

std::map<int, double> default_position_table(int window) {
  if (window < 3) throw ArgumentError("default_position_table: window < 3");
  std::map<int, double> table = {
      {-3, 0.0171}, {-2, 0.0771}, {-1, 0.5445}, {0, 0.2358},
      {+1, 0.0747}, {+2, 0.0222}, {+3, 0.0051},
  };
  const int others = 2 * (window - 3);
  if (others > 0) {
    const double share = 0.0194 / others;
    for (int p = 4; p <= window; ++p) {
      table[-p] = share;
      table[+p] = share;
    }
  }
  return table;
}

void validate_config(const GeneratorConfig& cfg) {
  if (cfg.docs == 0) throw ConfigError("generator: docs must be positive");
  if (cfg.vocab_size <= cfg.marker_types)
    throw ConfigError("generator: vocab_size must exceed marker_types");
  if (cfg.marker_types == 0 || cfg.emotion_types == 0)
    throw ConfigError("generator: marker/emotion token types must be positive");
  if (cfg.clause_len_min < 2 || cfg.clause_len_min > cfg.clause_len_max)
    throw ConfigError("generator: bad clause length range");
  if (cfg.clauses_min < 1 || cfg.clauses_min > cfg.clauses_max)
    throw ConfigError("generator: bad clause count range");
  if (cfg.clauses_max > kDefaultMaxDocLen)
    throw ConfigError("generator: clauses_max exceeds document capacity " +
                      std::to_string(kDefaultMaxDocLen));
  if (cfg.clauses_min < 2 * cfg.emotion_margin + 1)
    throw ConfigError(
        "generator: clauses_min too small for emotion_margin (need >= " +
        std::to_string(2 * cfg.emotion_margin + 1) + ")");
  if (cfg.window < 1) throw ConfigError("generator: window must be >= 1");
  if (cfg.content_signal < 0.0 || cfg.content_signal > 1.0)
    throw ConfigError("generator: content_signal outside [0, 1]");
  if (cfg.distractor < 0.0 || cfg.distractor > 1.0)
    throw ConfigError("generator: distractor outside [0, 1]");
  if (cfg.cause_counts.empty())
    throw ConfigError("generator: empty cause-count distribution");
  double total = 0.0;
  for (double p : cfg.cause_counts) {
    if (p < 0.0) throw ConfigError("generator: negative cause-count weight");
    total += p;
  }
  if (total <= 0.0)
    throw ConfigError("generator: cause-count distribution sums to zero");
  const auto& table =
      cfg.position_table.empty() ? default_position_table(cfg.window)
                                 : cfg.position_table;
  double table_total = 0.0;
  for (const auto& [pos, w] : table) {
    if (w < 0.0) throw ConfigError("generator: negative position weight");
    if (pos < -cfg.window || pos > cfg.window)
      throw ConfigError("generator: position table entry outside window");
    table_total += w;
  }
  if (table_total <= 0.0)
    throw ConfigError("generator: position table sums to zero");
}

namespace {

std::string filler_token(std::size_t idx) { return "w" + std::to_string(idx); }
std::string marker_token(std::size_t idx) { return "cm" + std::to_string(idx); }
std::string emotion_token(std::size_t idx) { return "em" + std::to_string(idx); }

}  // namespace

std::vector<Document> generate_synthetic(const GeneratorConfig& cfg) {
  validate_config(cfg);
  const auto table = cfg.position_table.empty()
                         ? default_position_table(cfg.window)
                         : cfg.position_table;
  Rng rng(cfg.seed);
  std::vector<Document> docs;
  docs.reserve(cfg.docs);

  for (std::size_t di = 0; di < cfg.docs; ++di) {
    Document doc;
    doc.doc_id = "d" + std::to_string(1000000 + di).substr(1);

    const std::size_t n = static_cast<std::size_t>(
        rng.range(static_cast<long long>(cfg.clauses_min),
                  static_cast<long long>(cfg.clauses_max)));
    doc.emotion_index = static_cast<std::size_t>(rng.range(
        static_cast<long long>(cfg.emotion_margin),
        static_cast<long long>(n - cfg.emotion_margin - 1)));

    // Per-clause weight of being a cause, from the clipped position table.
    std::vector<double> weights(n, 0.0);
    std::size_t feasible = 0;
    for (std::size_t i = 0; i < n; ++i) {
      long long p = static_cast<long long>(i) -
                    static_cast<long long>(doc.emotion_index);
      p = std::clamp<long long>(p, -cfg.window, cfg.window);
      auto it = table.find(static_cast<int>(p));
      weights[i] = it == table.end() ? 0.0 : it->second;
      if (weights[i] > 0.0) ++feasible;
    }
    if (feasible == 0)
      throw ConfigError("generator: no feasible cause position in document " +
                        doc.doc_id);

    // Cause count; infeasible draws (more causes than weighted clauses)
    // are resampled.
    std::size_t k = 0;
    for (int attempt = 0;; ++attempt) {
      k = rng.weighted_index(cfg.cause_counts) + 1;
      if (k <= feasible) break;
      if (attempt >= 1000)
        throw ConfigError(
            "generator: cause-count distribution infeasible for document " +
            doc.doc_id);
    }

    doc.gold_causes.assign(n, 0);
    std::vector<double> w = weights;
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t pick = rng.weighted_index(w);
      doc.gold_causes[pick] = 1;
      w[pick] = 0.0;
    }

    // Distractor: plant a marker in one non-cause clause, drawn from the
    // same position weights, so it sits where causes usually sit.
    std::size_t distractor_index = n;  // n means none
    if (rng.uniform01() < cfg.distractor) {
      std::vector<double> dw = w;  // causes already zeroed above
      dw[doc.emotion_index] = 0.0;
      double left = 0.0;
      for (double x : dw) left += x;
      if (left > 0.0) distractor_index = rng.weighted_index(dw);
    }

    std::vector<std::size_t> lens(n);
    for (std::size_t i = 0; i < n; ++i)
      lens[i] = static_cast<std::size_t>(
          rng.range(static_cast<long long>(cfg.clause_len_min),
                    static_cast<long long>(cfg.clause_len_max)));

    doc.clauses.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      Clause& clause = doc.clauses[i];
      clause.resize(lens[i]);
      std::vector<std::size_t> filler_slots;
      if (i == doc.emotion_index) {
        // Emotion clause: emotion token first, marker-free filler after.
        clause[0] = emotion_token(rng.index(cfg.emotion_types));
        for (std::size_t t = 1; t < lens[i]; ++t) {
          clause[t] = filler_token(cfg.marker_types +
                                   rng.index(cfg.vocab_size - cfg.marker_types));
          filler_slots.push_back(t);
        }
      } else {
        // Uniform stream over the content vocabulary; the first
        // marker_types ids render as markers.
        for (std::size_t t = 0; t < lens[i]; ++t) {
          const std::size_t draw = rng.index(cfg.vocab_size);
          if (draw < cfg.marker_types) {
            clause[t] = marker_token(draw);
          } else {
            clause[t] = filler_token(draw);
            filler_slots.push_back(t);
          }
        }
      }
      // Content signal: a cause clause gets one inserted marker with
      // probability content_signal (replacing a filler token).
      if (doc.gold_causes[i] == 1 && rng.uniform01() < cfg.content_signal &&
          !filler_slots.empty()) {
        const std::size_t slot = filler_slots[rng.index(filler_slots.size())];
        clause[slot] = marker_token(rng.index(cfg.marker_types));
      }
      if (i == distractor_index && !filler_slots.empty()) {
        const std::size_t slot = filler_slots[rng.index(filler_slots.size())];
        clause[slot] = marker_token(rng.index(cfg.marker_types));
      }
    }

    validate_document(doc);
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace paedgl
