#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilion/cascade.hpp"
#include "ilion/metrics.hpp"
#include "ilion/types.hpp"

namespace ilion {

struct ScenarioSet {
  std::vector<Scenario> scenarios;
  std::string split_label = "test";  // "test" or "dev"
};

class ScenarioLoadError : public std::runtime_error {
 public:
  explicit ScenarioLoadError(const std::string& message) : std::runtime_error(message) {}
};

/// Parses line-delimited scenario records (one JSON object per line).
/// Every malformed line is reported with its line number; any error throws.
ScenarioSet parse_scenarios(std::string_view text, std::string_view origin,
                            std::string split_label = "test");
ScenarioSet load_scenarios(const std::filesystem::path& path, std::string split_label = "test");

struct EvaluationResult {
  std::string scenario_id;
  Verdict verdict;
  Decision expected = Decision::kAllow;
  bool correct = false;
};

struct CategoryBreakdown {
  std::size_t n = 0;
  std::uint64_t tp = 0;
  std::uint64_t fn = 0;
  double miss_rate = 0.0;  // fn / n
};

struct BenignBreakdown {
  std::size_t n = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  double fpr = 0.0;  // fp / n
};

/// Trigger counts over true positives; the sum may exceed true_positives
/// because one block can co-activate several layers.
struct LayerAttribution {
  std::uint64_t idc = 0;
  std::uint64_t irs = 0;
  std::uint64_t cvl = 0;
  std::uint64_t true_positives = 0;
};

struct BenchmarkReport {
  std::string split_label;
  std::size_t scenario_count = 0;
  MetricsReport overall;
  std::array<CategoryBreakdown, kAttackCategoryCount> by_category{};
  BenignBreakdown benign;
  std::map<Difficulty, MetricsReport> by_difficulty;
  LayerAttribution layers;
  Thresholds thresholds;
  EngineOptions options;
  std::string pack_version;
  std::string engine_version;
  std::string timestamp;  // ISO 8601 UTC; excluded from stable renderings
  std::vector<EvaluationResult> results;  // sorted by scenario id
};

/// Evaluates every scenario through the engine. Results are ordered by
/// scenario id, so serial and multi-threaded runs produce identical reports
/// (latency aside). Throws std::invalid_argument on an empty set.
BenchmarkReport run_benchmark(const ScenarioSet& set, const Engine& engine,
                              std::size_t threads = 1);
BenchmarkReport run_benchmark(const ScenarioSet& set, const LexiconPack& pack,
                              const Thresholds& thresholds, const EngineOptions& options = {},
                              std::size_t threads = 1);

enum class SweepParam { kIdc, kCvl, kIrs };

std::string_view to_string(SweepParam param);
std::optional<SweepParam> sweep_param_from_string(std::string_view name);

struct SweepPoint {
  double value = 0.0;
  MetricsReport metrics;  // latency omitted
};

struct SweepReport {
  SweepParam param = SweepParam::kIdc;
  Thresholds base;
  std::string split_label;
  std::string pack_version;
  std::vector<SweepPoint> points;
};

/// One full evaluation per grid value, varying only `param`. The grid must be
/// non-empty, strictly increasing, and inside (0,1).
SweepReport sweep_threshold(const ScenarioSet& set, const LexiconPack& pack,
                            const Thresholds& base, SweepParam param,
                            std::span<const double> grid, const EngineOptions& options = {},
                            std::size_t threads = 1);

struct CalibrationResult {
  Thresholds thresholds;
  MetricsReport dev_metrics;  // latency omitted
  std::size_t configurations = 0;
  bool degenerate = false;  // best configuration had a degenerate F1
};

/// Exhaustive grid search maximizing F1 on the dev split. Ties break toward
/// lower FPR, then lower tau_idc, lower tau_cvl, lower tau_irs, which makes
/// the result fully deterministic.
CalibrationResult calibrate(const ScenarioSet& dev, const LexiconPack& pack,
                            std::span<const double> cvl_grid, std::span<const double> idc_grid,
                            std::span<const double> irs_grid, const EngineOptions& options = {});

enum class ReportFormat { kJson, kMarkdown };

/// stable=true drops latency and timestamp so repeated runs are byte-equal.
std::string render_report(const BenchmarkReport& report, ReportFormat format,
                          bool stable = false);
void emit_report(const BenchmarkReport& report, ReportFormat format,
                 const std::filesystem::path& out, bool stable = false);

std::string render_sweep_report(const SweepReport& report, ReportFormat format);
void emit_sweep_report(const SweepReport& report, ReportFormat format,
                       const std::filesystem::path& out);

}  // namespace ilion
