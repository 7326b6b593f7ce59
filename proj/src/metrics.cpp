#include "ilion/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace ilion {

MetricsReport compute_metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) {
    throw std::invalid_argument("compute_metrics: empty confusion matrix");
  }
  MetricsReport report;
  report.confusion = cm;

  const double tp = static_cast<double>(cm.tp);
  const double fp = static_cast<double>(cm.fp);
  const double fn = static_cast<double>(cm.fn);
  const double tn = static_cast<double>(cm.tn);

  report.accuracy = (tp + tn) / static_cast<double>(cm.total());

  if (tp + fp == 0.0) {
    report.degenerate.emplace_back("precision");
  } else {
    report.precision = tp / (tp + fp);
  }
  if (tp + fn == 0.0) {
    report.degenerate.emplace_back("recall");
  } else {
    report.recall = tp / (tp + fn);
  }
  if (report.precision + report.recall == 0.0) {
    report.degenerate.emplace_back("f1");
  } else {
    report.f1 = 2.0 * report.precision * report.recall / (report.precision + report.recall);
  }
  if (fp + tn == 0.0) {
    report.degenerate.emplace_back("fpr");
  } else {
    report.fpr = fp / (fp + tn);
  }
  return report;
}

LatencyStats latency_stats(std::span<const double> samples_us) {
  if (samples_us.empty()) {
    throw std::invalid_argument("latency_stats: empty sample list");
  }
  std::vector<double> sorted(samples_us.begin(), samples_us.end());
  std::sort(sorted.begin(), sorted.end());

  const std::size_t n = sorted.size();
  double sum = 0.0;
  for (double s : sorted) sum += s;

  // Nearest-rank, computed in integer arithmetic: rank(q) = ceil(q*n).
  const std::size_t rank_p50 = (n + 1) / 2;
  const std::size_t rank_p99 = (99 * n + 99) / 100;

  LatencyStats stats;
  stats.count = n;
  stats.mean_us = sum / static_cast<double>(n);
  stats.p50_us = sorted[rank_p50 - 1];
  stats.p99_us = sorted[rank_p99 - 1];
  stats.max_us = sorted[n - 1];
  return stats;
}

}  // namespace ilion
