// Compares serial vs OpenMP corpus inference on a synthetic corpus and
// verifies the outputs are identical.
#include <omp.h>

#include <chrono>
#include <cstdio>

#include "paedgl/ablation.hpp"
#include "paedgl/generator.hpp"

using namespace paedgl;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t docs = 2000;
  int repeats = 3;
  if (argc > 1) docs = static_cast<std::size_t>(std::atoll(argv[1]));
  if (argc > 2) repeats = std::atoi(argv[2]);

  GeneratorConfig gen;
  gen.docs = docs;
  gen.seed = 42;
  const auto corpus = generate_synthetic(gen);

  TrainConfig cfg;
  cfg.dims.word_dim = 16;
  cfg.dims.pos_dim = 8;
  cfg.dims.hidden = 16;
  cfg.epochs = 1;
  cfg.seed = 42;
  const TrainResult trained = train(corpus, cfg);
  const Model& model = trained.model;

  std::printf("corpus: %zu documents; threads available: %d\n", corpus.size(),
              omp_get_max_threads());

  double serial_best = 1e300, parallel_best = 1e300;
  LabelSet serial_labels, parallel_labels;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    serial_labels = infer_corpus_serial(model, corpus, InferMode::kPredicted);
    serial_best = std::min(serial_best, seconds_since(t0));

    t0 = std::chrono::steady_clock::now();
    parallel_labels = infer_corpus(model, corpus, InferMode::kPredicted, 0);
    parallel_best = std::min(parallel_best, seconds_since(t0));
  }

  if (serial_labels != parallel_labels) {
    std::printf("MISMATCH: serial and parallel labels differ\n");
    return 1;
  }
  std::printf("serial:   %8.3f s (best of %d)\n", serial_best, repeats);
  std::printf("parallel: %8.3f s (best of %d)\n", parallel_best, repeats);
  std::printf("speedup:  %8.2fx (outputs identical)\n",
              serial_best / parallel_best);
  return 0;
}
