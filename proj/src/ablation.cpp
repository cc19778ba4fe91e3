#include "paedgl/ablation.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "paedgl/dgl.hpp"

namespace paedgl {

namespace {
using ordered_json = nlohmann::ordered_json;

std::string valid_names() {
  std::string out;
  for (std::string_view name : kVariantNames) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}
}  // namespace

ModelFlags variant_flags(std::string_view name) {
  ModelFlags f;
  if (name == "bilstm") {
    f.position_mode = PositionMode::kNone;
    f.use_pae_loss = false;
    f.use_dgl = false;
  } else if (name == "pl") {
    f.position_mode = PositionMode::kPl;
    f.use_pae_loss = false;
    f.use_dgl = false;
  } else if (name == "pec") {
    f.position_mode = PositionMode::kPec;
    f.use_pae_loss = false;
    f.use_dgl = false;
  } else if (name == "pae") {
    f.position_mode = PositionMode::kPae;
    f.use_pae_loss = true;
    f.use_dgl = false;
  } else if (name == "pae-dgl" || name == "dgl-upper") {
    f.position_mode = PositionMode::kPae;
    f.use_pae_loss = true;
    f.use_dgl = true;
    f.order = OrderMode::kReordered;
  } else if (name == "dgl-po") {
    f.position_mode = PositionMode::kPae;
    f.use_pae_loss = true;
    f.use_dgl = true;
    f.order = OrderMode::kOriginal;
  } else {
    throw ConfigError("unknown variant '" + std::string(name) +
                      "' (valid: " + valid_names() + ")");
  }
  return f;
}

InferMode variant_infer_mode(std::string_view name) {
  variant_flags(name);  // validates the name
  return name == "dgl-upper" ? InferMode::kOracle : InferMode::kPredicted;
}

LabelSet infer_corpus_serial(const Model& model,
                             std::span<const Document> docs, InferMode mode) {
  LabelSet out(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i)
    out[i] = infer_document(model, docs[i], mode);
  return out;
}

LabelSet infer_corpus(const Model& model, std::span<const Document> docs,
                      InferMode mode, int threads) {
  LabelSet out(docs.size());
  const int n = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(n)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(docs.size());
       ++i) {
    out[static_cast<std::size_t>(i)] =
        infer_document(model, docs[static_cast<std::size_t>(i)], mode);
  }
  return out;
}

namespace {

struct Split {
  std::vector<Document> train;
  std::vector<Document> test;
};

Split split_corpus(std::span<const Document> docs, double fraction,
                   std::uint64_t seed) {
  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(mix_seed(seed, 0x5b117ull));
  rng.shuffle(order);
  const auto train_count =
      static_cast<std::size_t>(fraction * static_cast<double>(docs.size()));
  if (train_count == 0 || train_count >= docs.size())
    throw ConfigError("ablation: split " + std::to_string(fraction) +
                      " leaves an empty train or test set");
  Split split;
  split.train.reserve(train_count);
  split.test.reserve(docs.size() - train_count);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    (i < train_count ? split.train : split.test).push_back(docs[order[i]]);
  }
  return split;
}

AblationRow run_cell(std::span<const Document> docs, const AblationConfig& cfg,
                     const std::string& variant, std::size_t rep) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t rep_seed = mix_seed(cfg.base.seed, rep);

  const Split split = split_corpus(docs, cfg.split, rep_seed);

  TrainConfig train_cfg = cfg.base;
  train_cfg.flags = variant_flags(variant);
  train_cfg.seed = rep_seed;
  TrainResult trained = train(split.train, train_cfg);

  const LabelSet predicted = infer_corpus(
      trained.model, split.test, variant_infer_mode(variant), cfg.threads);
  LabelSet gold;
  gold.reserve(split.test.size());
  for (const Document& d : split.test) gold.push_back(d.gold_causes);

  AblationRow row;
  row.variant = variant;
  row.repetition = rep;
  row.seed = rep_seed;
  row.metrics = compute_metrics(predicted, gold);
  const auto hist = cause_count_histogram(predicted);
  row.zero_cause_share = hist.at(0);
  row.multi_cause_share = hist.at(2) + hist.at(3);
  row.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return row;
}

}  // namespace

std::vector<AblationRow> run_ablation(std::span<const Document> docs,
                                      const AblationConfig& cfg) {
  if (cfg.variants.empty()) throw ConfigError("ablation: no variants given");
  if (cfg.repetitions == 0)
    throw ConfigError("ablation: repetitions must be positive");
  for (const std::string& v : cfg.variants) variant_flags(v);  // validate all

  const std::size_t cells = cfg.variants.size() * cfg.repetitions;
  std::vector<AblationRow> rows(cells);
  const int n = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(n)
  for (std::ptrdiff_t cell = 0; cell < static_cast<std::ptrdiff_t>(cells);
       ++cell) {
    const std::size_t v = static_cast<std::size_t>(cell) / cfg.repetitions;
    const std::size_t rep = static_cast<std::size_t>(cell) % cfg.repetitions;
    try {
      rows[static_cast<std::size_t>(cell)] =
          run_cell(docs, cfg, cfg.variants[v], rep);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_results(const std::filesystem::path& path,
                   std::span<const AblationRow> rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write results: " + path.string());
  for (const AblationRow& r : rows) {
    ordered_json rec;
    rec["variant"] = r.variant;
    rec["repetition"] = r.repetition;
    rec["seed"] = r.seed;
    rec["precision"] = r.metrics.precision;
    rec["recall"] = r.metrics.recall;
    rec["f1"] = r.metrics.f1;
    rec["zero_cause_share"] = r.zero_cause_share;
    rec["multi_cause_share"] = r.multi_cause_share;
    rec["wall_clock_seconds"] = r.wall_clock_seconds;
    out << rec.dump() << '\n';
  }
  if (!out) throw IoError("results write failed: " + path.string());
}

std::vector<AblationRow> read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open results: " + path.string());
  std::vector<AblationRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto rec = ordered_json::parse(line);
      AblationRow r;
      r.variant = rec.at("variant").get<std::string>();
      r.repetition = rec.at("repetition").get<std::size_t>();
      r.seed = rec.at("seed").get<std::uint64_t>();
      r.metrics.precision = rec.at("precision").get<double>();
      r.metrics.recall = rec.at("recall").get<double>();
      r.metrics.f1 = rec.at("f1").get<double>();
      r.zero_cause_share = rec.at("zero_cause_share").get<double>();
      r.multi_cause_share = rec.at("multi_cause_share").get<double>();
      r.wall_clock_seconds = rec.at("wall_clock_seconds").get<double>();
      rows.push_back(std::move(r));
    } catch (const ordered_json::exception& e) {
      throw ParseError("results line " + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  return rows;
}

std::string format_results_table(std::span<const AblationRow> rows) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-10s %4s  %9s %9s %9s %8s %8s %9s\n",
                "variant", "rep", "precision", "recall", "f1", "zero", "multi",
                "seconds");
  out << buf;
  std::vector<std::string> seen;
  for (const AblationRow& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%-10s %4zu  %9.4f %9.4f %9.4f %8.4f %8.4f %9.2f\n",
                  r.variant.c_str(), r.repetition, r.metrics.precision,
                  r.metrics.recall, r.metrics.f1, r.zero_cause_share,
                  r.multi_cause_share, r.wall_clock_seconds);
    out << buf;
    if (std::find(seen.begin(), seen.end(), r.variant) == seen.end())
      seen.push_back(r.variant);
  }
  out << '\n';
  for (const std::string& variant : seen) {
    double p = 0, rc = 0, f = 0, zero = 0, multi = 0;
    std::size_t count = 0;
    for (const AblationRow& r : rows) {
      if (r.variant != variant) continue;
      p += r.metrics.precision;
      rc += r.metrics.recall;
      f += r.metrics.f1;
      zero += r.zero_cause_share;
      multi += r.multi_cause_share;
      ++count;
    }
    const double c = static_cast<double>(count);
    std::snprintf(buf, sizeof(buf),
                  "%-10s %4s  %9.4f %9.4f %9.4f %8.4f %8.4f %9s\n",
                  variant.c_str(), "mean", p / c, rc / c, f / c, zero / c,
                  multi / c, "");
    out << buf;
  }
  return out.str();
}

}  // namespace paedgl
