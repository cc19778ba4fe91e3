#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "paedgl/ablation.hpp"
#include "paedgl/generator.hpp"
#include "paedgl/rng.hpp"

using namespace paedgl;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

LabelSet random_labels(Rng& rng, std::size_t docs, double p_one) {
  LabelSet out(docs);
  for (auto& doc : out) {
    doc.resize(1 + rng.index(8));
    for (auto& y : doc) y = rng.uniform01() < p_one ? 1 : 0;
  }
  return out;
}

}  // namespace

TEST_CASE("metrics on a worked example") {
  const LabelSet predicted{{1, 0, 1}, {1, 1, 0}};
  const LabelSet gold{{1, 1, 0}, {1, 1, 1}};
  const Metrics m = compute_metrics(predicted, gold);
  CHECK(m.proposed == 4);
  CHECK(m.annotated == 5);
  CHECK(m.correct == 3);
  CHECK(m.precision == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(m.recall == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(m.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("metrics guard the degenerate denominators") {
  const Metrics none = compute_metrics(LabelSet{{0, 0}}, LabelSet{{1, 0}});
  CHECK(none.proposed == 0);
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(none.f1 == 0.0);

  const Metrics exact = compute_metrics(LabelSet{{1, 0, 1}},
                                        LabelSet{{1, 0, 1}});
  CHECK(exact.precision == 1.0);
  CHECK(exact.recall == 1.0);
  CHECK(exact.f1 == 1.0);

  CHECK_THROWS_AS(compute_metrics(LabelSet{{1}}, LabelSet{{1}, {0}}),
                  ArgumentError);
  CHECK_THROWS_AS(compute_metrics(LabelSet{{1, 0}}, LabelSet{{1}}),
                  ArgumentError);
}

TEST_CASE("metrics agree with direct counting on random label sets") {
  Rng rng(2718);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t docs = 1 + rng.index(6);
    LabelSet predicted = random_labels(rng, docs, 0.3);
    LabelSet gold = predicted;
    for (auto& doc : gold)
      for (auto& y : doc)
        if (rng.uniform01() < 0.4) y = rng.uniform01() < 0.5 ? 1 : 0;

    std::size_t proposed = 0, annotated = 0, correct = 0;
    for (std::size_t i = 0; i < docs; ++i) {
      for (std::size_t j = 0; j < predicted[i].size(); ++j) {
        proposed += predicted[i][j];
        annotated += gold[i][j];
        correct += predicted[i][j] == 1 && gold[i][j] == 1 ? 1 : 0;
      }
    }
    const Metrics m = compute_metrics(predicted, gold);
    REQUIRE(m.proposed == proposed);
    REQUIRE(m.annotated == annotated);
    REQUIRE(m.correct == correct);
    const double p = proposed ? double(correct) / double(proposed) : 0.0;
    const double r = annotated ? double(correct) / double(annotated) : 0.0;
    const double f = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
    REQUIRE(m.precision == p);
    REQUIRE(m.recall == r);
    REQUIRE(m.f1 == f);

    // Document order is irrelevant to clause-level totals.
    LabelSet rp = predicted, rg = gold;
    std::reverse(rp.begin(), rp.end());
    std::reverse(rg.begin(), rg.end());
    const Metrics rev = compute_metrics(rp, rg);
    REQUIRE(rev.precision == m.precision);
    REQUIRE(rev.recall == m.recall);
    REQUIRE(rev.f1 == m.f1);

    // Perfect F1 exactly when the label sets coincide (given any gold).
    if (m.f1 == 1.0) REQUIRE(predicted == gold);
  }
}

TEST_CASE("cause-count histogram buckets and aggregation") {
  const LabelSet predicted{
      {0, 0, 0},        // 0 causes
      {1, 0},           // 1
      {1, 1, 0},        // 2
      {1, 1, 1},        // 3
      {1, 1, 1, 1, 1},  // 5 -> bucket 3
  };
  const auto hist = cause_count_histogram(predicted);
  REQUIRE(hist.size() == 4);
  CHECK(hist.at(0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(hist.at(1) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(hist.at(2) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(hist.at(3) == doctest::Approx(0.4).epsilon(1e-12));
  double total = 0.0;
  for (const auto& [k, v] : hist) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(cause_count_histogram(LabelSet{}), ArgumentError);
}

TEST_CASE("forced single-cause corpora land in bucket 1") {
  GeneratorConfig gen;
  gen.docs = 100;
  gen.cause_counts = {1.0};
  gen.seed = 9;
  const auto docs = generate_synthetic(gen);
  LabelSet gold;
  for (const auto& d : docs) gold.push_back(d.gold_causes);
  const auto hist = cause_count_histogram(gold);
  CHECK(hist.at(0) == 0.0);
  CHECK(hist.at(1) == 1.0);
  CHECK(hist.at(2) == 0.0);
  CHECK(hist.at(3) == 0.0);
}

TEST_CASE("variant names map to the intended flag sets") {
  const ModelFlags bilstm = variant_flags("bilstm");
  CHECK(bilstm.position_mode == PositionMode::kNone);
  CHECK_FALSE(bilstm.use_pae_loss);
  CHECK_FALSE(bilstm.use_dgl);

  CHECK(variant_flags("pl").position_mode == PositionMode::kPl);
  CHECK_FALSE(variant_flags("pl").use_pae_loss);
  CHECK(variant_flags("pec").position_mode == PositionMode::kPec);

  const ModelFlags pae = variant_flags("pae");
  CHECK(pae.position_mode == PositionMode::kPae);
  CHECK(pae.use_pae_loss);
  CHECK_FALSE(pae.use_dgl);

  const ModelFlags full = variant_flags("pae-dgl");
  CHECK(full.use_dgl);
  CHECK(full.order == OrderMode::kReordered);

  // Upper bound trains the very same model.
  const ModelFlags upper = variant_flags("dgl-upper");
  CHECK(upper.position_mode == full.position_mode);
  CHECK(upper.use_pae_loss == full.use_pae_loss);
  CHECK(upper.use_dgl == full.use_dgl);
  CHECK(upper.order == full.order);

  CHECK(variant_flags("dgl-po").order == OrderMode::kOriginal);
  CHECK(variant_flags("dgl-po").use_dgl);

  CHECK(variant_infer_mode("dgl-upper") == InferMode::kOracle);
  CHECK(variant_infer_mode("pae-dgl") == InferMode::kPredicted);
  CHECK(variant_infer_mode("bilstm") == InferMode::kPredicted);

  CHECK_THROWS_WITH_AS(variant_flags("resnet"),
                       doctest::Contains("pae-dgl"), ConfigError);
}

namespace {

std::vector<Document> eval_corpus(std::size_t docs, std::uint64_t seed) {
  GeneratorConfig gen;
  gen.docs = docs;
  gen.vocab_size = 25;
  gen.clause_len_min = 3;
  gen.clause_len_max = 4;
  gen.emotion_margin = 2;
  gen.clauses_min = 5;
  gen.clauses_max = 7;
  gen.seed = seed;
  return generate_synthetic(gen);
}

TrainConfig eval_train_config() {
  TrainConfig cfg;
  cfg.dims.word_dim = 4;
  cfg.dims.pos_dim = 2;
  cfg.dims.hidden = 3;
  cfg.dims.max_doc_len = 7;
  cfg.epochs = 1;
  cfg.seed = 31;
  return cfg;
}

}  // namespace

TEST_CASE("parallel corpus inference matches the serial reference") {
  const auto docs = eval_corpus(40, 77);
  TrainConfig cfg = eval_train_config();
  const Model model = train(docs, cfg).model;

  const LabelSet serial =
      infer_corpus_serial(model, docs, InferMode::kPredicted);
  for (int threads : {1, 2, 4}) {
    const LabelSet parallel =
        infer_corpus(model, docs, InferMode::kPredicted, threads);
    CHECK(parallel == serial);
  }
  const LabelSet oracle_serial =
      infer_corpus_serial(model, docs, InferMode::kOracle);
  CHECK(infer_corpus(model, docs, InferMode::kOracle, 2) == oracle_serial);
}

TEST_CASE("ablation grid: row order, shared splits, determinism") {
  const auto docs = eval_corpus(60, 123);
  AblationConfig cfg;
  cfg.variants = {"bilstm", "pae"};
  cfg.repetitions = 2;
  cfg.split = 0.8;
  cfg.base = eval_train_config();

  const auto rows = run_ablation(docs, cfg);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].variant == "bilstm");
  CHECK(rows[1].variant == "bilstm");
  CHECK(rows[2].variant == "pae");
  CHECK(rows[3].variant == "pae");
  CHECK(rows[0].repetition == 0);
  CHECK(rows[1].repetition == 1);

  // Same repetition -> same derived seed for every variant (shared split).
  CHECK(rows[0].seed == rows[2].seed);
  CHECK(rows[1].seed == rows[3].seed);
  CHECK(rows[0].seed != rows[1].seed);

  for (const AblationRow& r : rows) {
    CHECK(r.metrics.precision >= 0.0);
    CHECK(r.metrics.precision <= 1.0);
    CHECK(r.metrics.recall >= 0.0);
    CHECK(r.metrics.recall <= 1.0);
    CHECK(r.metrics.f1 >= 0.0);
    CHECK(r.metrics.f1 <= 1.0);
    CHECK(r.zero_cause_share >= 0.0);
    CHECK(r.zero_cause_share + r.multi_cause_share <= 1.0 + 1e-12);
    CHECK(r.wall_clock_seconds > 0.0);
  }

  // Bitwise repeatable apart from wall-clock time.
  const auto again = run_ablation(docs, cfg);
  REQUIRE(again.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(again[i].seed == rows[i].seed);
    CHECK(again[i].metrics.precision == rows[i].metrics.precision);
    CHECK(again[i].metrics.recall == rows[i].metrics.recall);
    CHECK(again[i].metrics.f1 == rows[i].metrics.f1);
    CHECK(again[i].zero_cause_share == rows[i].zero_cause_share);
    CHECK(again[i].multi_cause_share == rows[i].multi_cause_share);
  }
}

TEST_CASE("ablation config errors") {
  const auto docs = eval_corpus(20, 5);
  AblationConfig cfg;
  cfg.base = eval_train_config();
  cfg.variants = {};
  CHECK_THROWS_AS(run_ablation(docs, cfg), ConfigError);

  cfg.variants = {"bilstm", "transformer"};
  CHECK_THROWS_AS(run_ablation(docs, cfg), ConfigError);

  cfg.variants = {"bilstm"};
  cfg.repetitions = 0;
  CHECK_THROWS_AS(run_ablation(docs, cfg), ConfigError);

  cfg.repetitions = 1;
  cfg.split = 1.0;  // empty test side
  CHECK_THROWS_AS(run_ablation(docs, cfg), ConfigError);
}

TEST_CASE("results files round-trip and report bad lines") {
  std::vector<AblationRow> rows(2);
  rows[0].variant = "pae-dgl";
  rows[0].repetition = 0;
  rows[0].seed = 0xdeadbeefULL;
  rows[0].metrics.precision = 0.8125;
  rows[0].metrics.recall = 1.0 / 3.0;  // not exactly representable in decimal
  rows[0].metrics.f1 = 0.47272727272727272;
  rows[0].zero_cause_share = 0.015625;
  rows[0].multi_cause_share = 0.1;
  rows[0].wall_clock_seconds = 12.25;
  rows[1] = rows[0];
  rows[1].variant = "bilstm";
  rows[1].repetition = 3;

  const auto path = temp_file("paedgl_results_rt.jsonl");
  write_results(path, rows);
  const auto loaded = read_results(path);
  REQUIRE(loaded.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(loaded[i].variant == rows[i].variant);
    CHECK(loaded[i].repetition == rows[i].repetition);
    CHECK(loaded[i].seed == rows[i].seed);
    CHECK(loaded[i].metrics.precision == rows[i].metrics.precision);
    CHECK(loaded[i].metrics.recall == rows[i].metrics.recall);  // bitwise
    CHECK(loaded[i].metrics.f1 == rows[i].metrics.f1);
    CHECK(loaded[i].zero_cause_share == rows[i].zero_cause_share);
    CHECK(loaded[i].multi_cause_share == rows[i].multi_cause_share);
    CHECK(loaded[i].wall_clock_seconds == rows[i].wall_clock_seconds);
  }

  std::ofstream(path, std::ios::app) << "{\"variant\": 12}\n";
  CHECK_THROWS_WITH_AS(read_results(path), doctest::Contains("line 3"),
                       ParseError);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(read_results(temp_file("paedgl_results_missing.jsonl")),
                  IoError);
}

TEST_CASE("results table lists every row and a mean per variant") {
  const auto docs = eval_corpus(40, 7);
  AblationConfig cfg;
  cfg.variants = {"bilstm"};
  cfg.repetitions = 2;
  cfg.split = 0.8;
  cfg.base = eval_train_config();
  const auto rows = run_ablation(docs, cfg);

  const std::string table = format_results_table(rows);
  CHECK(table.find("variant") != std::string::npos);
  CHECK(table.find("bilstm") != std::string::npos);
  CHECK(table.find("mean") != std::string::npos);
  const auto lines = std::count(table.begin(), table.end(), '\n');
  CHECK(lines == 1 + 2 + 1 + 1);  // header, rows, blank, one mean line
}
