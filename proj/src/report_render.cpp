#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ilion/harness.hpp"
#include "ilion/json_io.hpp"

namespace ilion {

namespace {

using nlohmann::json;

constexpr int kReportSchemaVersion = 1;

std::string pct(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.1f%%", 100.0 * x);
  return buffer;
}

std::string f4(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4f", x);
  return buffer;
}

std::string f2(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", x);
  return buffer;
}

json confusion_to_json(const ConfusionMatrix& cm) {
  return json{{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
}

json metrics_to_json(const MetricsReport& metrics) {
  json j;
  j["accuracy"] = metrics.accuracy;
  j["precision"] = metrics.precision;
  j["recall"] = metrics.recall;
  j["f1"] = metrics.f1;
  j["fpr"] = metrics.fpr;
  j["degenerate"] = metrics.degenerate;
  return j;
}

json latency_to_json(const LatencyStats& latency) {
  json j;
  j["mean_us"] = latency.mean_us;
  j["p50_us"] = latency.p50_us;
  j["p99_us"] = latency.p99_us;
  j["max_us"] = latency.max_us;
  j["count"] = latency.count;
  return j;
}

json thresholds_to_json(const Thresholds& thresholds) {
  json j;
  j["tau_idc"] = thresholds.tau_idc;
  j["tau_cvl"] = thresholds.tau_cvl;
  j["tau_irs"] = thresholds.tau_irs;
  return j;
}

json report_to_json(const BenchmarkReport& report, bool stable) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["split_label"] = report.split_label;
  j["scenario_count"] = report.scenario_count;
  j["engine_version"] = report.engine_version;
  j["pack_version"] = report.pack_version;
  j["thresholds"] = thresholds_to_json(report.thresholds);
  j["include_trigger"] = report.options.include_trigger;
  j["fail_closed_on_empty"] = report.options.fail_closed_on_empty;
  j["confusion"] = confusion_to_json(report.overall.confusion);
  j["metrics"] = metrics_to_json(report.overall);
  if (!stable) {
    j["timestamp"] = report.timestamp;
    if (report.overall.latency) j["latency"] = latency_to_json(*report.overall.latency);
  }

  json categories;
  for (AttackCategory category : kAllAttackCategories) {
    const CategoryBreakdown& cat = report.by_category[static_cast<std::size_t>(category)];
    categories[std::string(to_string(category))] =
        json{{"n", cat.n}, {"tp", cat.tp}, {"fn", cat.fn}, {"miss_rate", cat.miss_rate}};
  }
  j["by_category"] = std::move(categories);
  j["benign"] = json{{"n", report.benign.n},
                     {"fp", report.benign.fp},
                     {"tn", report.benign.tn},
                     {"fpr", report.benign.fpr}};

  json difficulties;
  for (const auto& [difficulty, metrics] : report.by_difficulty) {
    json d;
    d["confusion"] = confusion_to_json(metrics.confusion);
    d["metrics"] = metrics_to_json(metrics);
    difficulties[std::string(to_string(difficulty))] = std::move(d);
  }
  j["by_difficulty"] = std::move(difficulties);

  j["layer_attribution"] = json{{"idc", report.layers.idc},
                                {"irs", report.layers.irs},
                                {"cvl", report.layers.cvl},
                                {"true_positives", report.layers.true_positives}};

  json results = json::array();
  for (const EvaluationResult& result : report.results) {
    json r;
    r["id"] = result.scenario_id;
    r["expected"] = std::string(to_string(result.expected));
    r["decision"] = std::string(to_string(result.verdict.decision));
    r["correct"] = result.correct;
    if (result.verdict.drift) {
      r["drift"] = *result.verdict.drift;
    } else {
      r["drift"] = nullptr;
    }
    if (result.verdict.resonance) {
      r["resonance"] = *result.verdict.resonance;
    } else {
      r["resonance"] = nullptr;
    }
    json layers = json::array();
    for (LayerId layer : result.verdict.triggered_layers) {
      layers.push_back(std::string(to_string(layer)));
    }
    r["triggered_layers"] = std::move(layers);
    r["coverage_flag"] = std::string(to_string(result.verdict.coverage));
    results.push_back(std::move(r));
  }
  j["results"] = std::move(results);
  return j;
}

std::string report_to_markdown(const BenchmarkReport& report, bool stable) {
  std::ostringstream out;
  out << "# Benchmark report\n\n";
  out << "- split: " << report.split_label << "\n";
  out << "- scenarios: " << report.scenario_count << "\n";
  out << "- engine: " << report.engine_version << ", pack: " << report.pack_version << "\n";
  out << "- thresholds: tau_idc=" << f2(report.thresholds.tau_idc)
      << " tau_cvl=" << f2(report.thresholds.tau_cvl)
      << " tau_irs=" << f2(report.thresholds.tau_irs) << "\n";
  if (!stable) out << "- generated: " << report.timestamp << "\n";
  out << "\n## Summary\n\n";
  out << "| Accuracy | Precision | Recall | F1 | FPR | Mean latency |\n";
  out << "|---:|---:|---:|---:|---:|---:|\n";
  out << "| " << pct(report.overall.accuracy) << " | " << pct(report.overall.precision) << " | "
      << pct(report.overall.recall) << " | " << f4(report.overall.f1) << " | "
      << pct(report.overall.fpr) << " | ";
  if (!stable && report.overall.latency) {
    out << f2(report.overall.latency->mean_us) << " us";
  } else {
    out << "-";
  }
  out << " |\n";

  out << "\n## Attack categories\n\n";
  out << "| Category | N | TP | FN | Miss rate |\n";
  out << "|---|---:|---:|---:|---:|\n";
  std::size_t total_n = 0;
  std::uint64_t total_tp = 0;
  std::uint64_t total_fn = 0;
  for (AttackCategory category : kAllAttackCategories) {
    const CategoryBreakdown& cat = report.by_category[static_cast<std::size_t>(category)];
    out << "| " << to_string(category) << " | " << cat.n << " | " << cat.tp << " | " << cat.fn
        << " | " << pct(cat.miss_rate) << " |\n";
    total_n += cat.n;
    total_tp += cat.tp;
    total_fn += cat.fn;
  }
  const double total_miss =
      total_n == 0 ? 0.0 : static_cast<double>(total_fn) / static_cast<double>(total_n);
  out << "| total | " << total_n << " | " << total_tp << " | " << total_fn << " | "
      << pct(total_miss) << " |\n";

  out << "\n## Benign\n\n";
  out << "| N | FP | TN | FPR |\n";
  out << "|---:|---:|---:|---:|\n";
  out << "| " << report.benign.n << " | " << report.benign.fp << " | " << report.benign.tn
      << " | " << pct(report.benign.fpr) << " |\n";

  out << "\n## Difficulty\n\n";
  out << "| Difficulty | N | Accuracy | Precision | Recall | F1 |\n";
  out << "|---|---:|---:|---:|---:|---:|\n";
  for (const auto& [difficulty, metrics] : report.by_difficulty) {
    out << "| " << to_string(difficulty) << " | " << metrics.confusion.total() << " | "
        << pct(metrics.accuracy) << " | " << pct(metrics.precision) << " | "
        << pct(metrics.recall) << " | " << f4(metrics.f1) << " |\n";
  }

  out << "\n## Layer attribution (over true positives)\n\n";
  out << "| Layer | Triggered |\n";
  out << "|---|---:|\n";
  out << "| IDC | " << report.layers.idc << " |\n";
  out << "| IRS | " << report.layers.irs << " |\n";
  out << "| CVL | " << report.layers.cvl << " |\n";
  out << "\nTrue positives: " << report.layers.true_positives
      << ". Trigger counts can exceed that total due to co-activation.\n";
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace

std::string render_report(const BenchmarkReport& report, ReportFormat format, bool stable) {
  if (format == ReportFormat::kJson) {
    return report_to_json(report, stable).dump(2) + "\n";
  }
  return report_to_markdown(report, stable);
}

void emit_report(const BenchmarkReport& report, ReportFormat format,
                 const std::filesystem::path& out, bool stable) {
  write_file(out, render_report(report, format, stable));
}

std::string render_sweep_report(const SweepReport& report, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["param"] = std::string(to_string(report.param));
    j["split_label"] = report.split_label;
    j["pack_version"] = report.pack_version;
    j["base_thresholds"] = thresholds_to_json(report.base);
    json grid = json::array();
    json points = json::array();
    for (const SweepPoint& point : report.points) {
      grid.push_back(point.value);
      json p;
      p["value"] = point.value;
      p["confusion"] = confusion_to_json(point.metrics.confusion);
      p["metrics"] = metrics_to_json(point.metrics);
      points.push_back(std::move(p));
    }
    j["grid"] = std::move(grid);
    j["points"] = std::move(points);
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "# Threshold sweep: " << to_string(report.param) << "\n\n";
  out << "- split: " << report.split_label << ", pack: " << report.pack_version << "\n";
  out << "- base thresholds: tau_idc=" << f2(report.base.tau_idc)
      << " tau_cvl=" << f2(report.base.tau_cvl) << " tau_irs=" << f2(report.base.tau_irs)
      << "\n\n";
  out << "| " << to_string(report.param) << " | F1 | Precision | Recall | FPR | Blocks |\n";
  out << "|---:|---:|---:|---:|---:|---:|\n";
  for (const SweepPoint& point : report.points) {
    out << "| " << f2(point.value) << " | " << f4(point.metrics.f1) << " | "
        << pct(point.metrics.precision) << " | " << pct(point.metrics.recall) << " | "
        << pct(point.metrics.fpr) << " | "
        << (point.metrics.confusion.tp + point.metrics.confusion.fp) << " |\n";
  }
  return out.str();
}

void emit_sweep_report(const SweepReport& report, ReportFormat format,
                       const std::filesystem::path& out) {
  write_file(out, render_sweep_report(report, format));
}

}  // namespace ilion
