#include "paedgl/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <sstream>

namespace paedgl {

namespace {

bool bit_equal(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

double rel_err(double analytic, double numeric) {
  double scale = std::max({1.0, std::abs(analytic), std::abs(numeric)});
  return std::abs(analytic - numeric) / scale;
}

}  // namespace

std::string GradCheckReport::summary() const {
  std::ostringstream out;
  out << (passed ? "PASS" : "FAIL") << "  max_rel_err=" << max_rel_err
      << "  tolerance=" << tolerance << "\n";
  for (const GradCheckEntry& e : entries) {
    out << "  " << e.tensor << ": checked=" << e.checked
        << " max_rel_err=" << e.max_rel_err << " worst_index=" << e.worst_index
        << " analytic=" << e.analytic << " numeric=" << e.numeric << "\n";
  }
  return out.str();
}

GradCheckReport grad_check(ParameterStore& store,
                           const std::function<double()>& loss_fn,
                           double tolerance, double step,
                           std::size_t sample_per_tensor,
                           std::uint64_t sample_seed) {
  if (step <= 0.0) throw ArgumentError("grad_check: step must be positive");

  store.zero_grads();
  const double loss_a = loss_fn();
  std::vector<DenseMatrix> analytic;
  analytic.reserve(store.entries().size());
  for (const auto& e : store.entries()) analytic.push_back(e.grad);

  store.zero_grads();
  const double loss_b = loss_fn();
  if (!bit_equal(loss_a, loss_b))
    throw DeterminismError(
        "grad_check: loss function is not deterministic (two evaluations "
        "differ)");

  Rng rng(mix_seed(sample_seed, 0x6d5a56c737e7a7b1ull));
  GradCheckReport report;
  report.tolerance = tolerance;

  for (std::size_t t = 0; t < store.entries().size(); ++t) {
    auto& entry = store.entries()[t];
    std::vector<std::size_t> indices(entry.value.size());
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    if (sample_per_tensor > 0 && indices.size() > sample_per_tensor) {
      rng.shuffle(indices);
      indices.resize(sample_per_tensor);
      std::sort(indices.begin(), indices.end());
    }

    GradCheckEntry result;
    result.tensor = entry.name;
    for (std::size_t flat : indices) {
      const double saved = entry.value.data[flat];

      entry.value.data[flat] = saved + step;
      store.zero_grads();
      const double loss_plus = loss_fn();

      entry.value.data[flat] = saved - step;
      store.zero_grads();
      const double loss_minus = loss_fn();

      entry.value.data[flat] = saved;

      const double numeric = (loss_plus - loss_minus) / (2.0 * step);
      const double ana = analytic[t].data[flat];
      const double err = rel_err(ana, numeric);
      ++result.checked;
      if (err > result.max_rel_err) {
        result.max_rel_err = err;
        result.worst_index = flat;
        result.analytic = ana;
        result.numeric = numeric;
      }
    }
    report.max_rel_err = std::max(report.max_rel_err, result.max_rel_err);
    report.entries.push_back(std::move(result));
  }

  report.passed = report.max_rel_err <= tolerance;
  return report;
}

}  // namespace paedgl
