#include "paedgl/metrics.hpp"

namespace paedgl {

Metrics compute_metrics(std::span<const std::vector<std::uint8_t>> predicted,
                        std::span<const std::vector<std::uint8_t>> gold) {
  if (predicted.size() != gold.size())
    throw ArgumentError("compute_metrics: document count mismatch");
  Metrics m;
  for (std::size_t d = 0; d < predicted.size(); ++d) {
    if (predicted[d].size() != gold[d].size())
      throw ArgumentError("compute_metrics: clause count mismatch at document " +
                          std::to_string(d));
    for (std::size_t i = 0; i < predicted[d].size(); ++i) {
      const bool p = predicted[d][i] == 1;
      const bool g = gold[d][i] == 1;
      m.proposed += p;
      m.annotated += g;
      m.correct += p && g;
    }
  }
  m.precision = m.proposed == 0
                    ? 0.0
                    : static_cast<double>(m.correct) /
                          static_cast<double>(m.proposed);
  m.recall = m.annotated == 0
                 ? 0.0
                 : static_cast<double>(m.correct) /
                       static_cast<double>(m.annotated);
  m.f1 = m.precision + m.recall == 0.0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

std::map<std::size_t, double> cause_count_histogram(
    std::span<const std::vector<std::uint8_t>> predicted) {
  if (predicted.empty())
    throw ArgumentError("cause_count_histogram: empty prediction set");
  std::map<std::size_t, double> shares{{0, 0.0}, {1, 0.0}, {2, 0.0}, {3, 0.0}};
  for (const auto& labels : predicted) {
    std::size_t count = 0;
    for (std::uint8_t y : labels) count += y == 1;
    shares[std::min<std::size_t>(count, 3)] += 1.0;
  }
  for (auto& [count, share] : shares)
    share /= static_cast<double>(predicted.size());
  return shares;
}

}  // namespace paedgl
