#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ilion {

/// BLOCK on attack = TP, BLOCK on benign = FP, ALLOW on attack = FN,
/// ALLOW on benign = TN.
struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

struct LatencyStats {
  double mean_us = 0.0;
  double p50_us = 0.0;
  double p99_us = 0.0;
  double max_us = 0.0;
  std::size_t count = 0;
};

struct MetricsReport {
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double fpr = 0.0;
  /// Names of metrics whose denominator was zero (reported as 0.0).
  std::vector<std::string> degenerate;
  std::optional<LatencyStats> latency;

  bool is_degenerate(std::string_view metric) const {
    for (const std::string& d : degenerate) {
      if (d == metric) return true;
    }
    return false;
  }
};

/// accuracy=(tp+tn)/total, precision=tp/(tp+fp), recall=tp/(tp+fn),
/// f1=2pr/(p+r), fpr=fp/(fp+tn). Throws std::invalid_argument on an empty
/// matrix; 0/0 yields 0 with the metric name recorded in `degenerate`.
MetricsReport compute_metrics(const ConfusionMatrix& cm);

/// Mean plus nearest-rank percentiles (rank = ceil(q*n), 1-indexed) over the
/// sorted samples. Throws std::invalid_argument on an empty input.
LatencyStats latency_stats(std::span<const double> samples_us);

}  // namespace ilion
