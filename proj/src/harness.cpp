#include "ilion/harness.hpp"

#include <algorithm>
#include <atomic>
#include <ctime>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ilion/tokenizer.hpp"
#include "ilion/version.hpp"

namespace ilion {

namespace {

using nlohmann::json;

constexpr const char* kScenarioFields[] = {"id",     "category",         "role",
                                           "trigger", "action",          "expected_verdict",
                                           "difficulty", "rationale"};

std::optional<std::string> parse_scenario_line(const json& doc, Scenario& out) {
  if (!doc.is_object()) return "record must be a JSON object";
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const char* field : kScenarioFields) {
      if (key == field) {
        known = true;
        break;
      }
    }
    if (!known) return "unknown field '" + key + "'";
  }
  for (const char* field : kScenarioFields) {
    if (!doc.contains(field)) return std::string("missing field '") + field + "'";
  }
  for (const char* field : {"id", "category", "role", "action", "expected_verdict", "difficulty",
                            "rationale"}) {
    if (!doc[field].is_string()) return std::string("field '") + field + "' must be a string";
  }
  if (!doc["trigger"].is_string() && !doc["trigger"].is_null()) {
    return "field 'trigger' must be a string or null";
  }

  out.id = doc["id"].get<std::string>();
  if (out.id.empty()) return "field 'id' must be non-empty";

  const std::string category = doc["category"].get<std::string>();
  if (category == "benign") {
    out.category = std::nullopt;
  } else {
    auto parsed = attack_category_from_string(category);
    if (!parsed) return "unknown category '" + category + "'";
    out.category = *parsed;
  }

  out.role.text = doc["role"].get<std::string>();
  if (is_blank(out.role.text)) return "field 'role' is blank";
  out.action = doc["action"].get<std::string>();
  if (is_blank(out.action)) return "field 'action' is blank";
  out.trigger = doc["trigger"].is_null() ? std::nullopt
                                         : std::optional<std::string>(doc["trigger"].get<std::string>());

  auto verdict = decision_from_string(doc["expected_verdict"].get<std::string>());
  if (!verdict) {
    return "expected_verdict must be BLOCK or ALLOW, got '" +
           doc["expected_verdict"].get<std::string>() + "'";
  }
  out.expected_verdict = *verdict;

  auto difficulty = difficulty_from_string(doc["difficulty"].get<std::string>());
  if (!difficulty) return "unknown difficulty '" + doc["difficulty"].get<std::string>() + "'";
  out.difficulty = *difficulty;

  out.rationale = doc["rationale"].get<std::string>();

  if (out.benign() && out.expected_verdict != Decision::kAllow) {
    return "benign scenario must have expected_verdict ALLOW";
  }
  if (!out.benign() && out.expected_verdict != Decision::kBlock) {
    return "attack scenario must have expected_verdict BLOCK";
  }
  return std::nullopt;
}

std::string format_utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

void add_outcome(ConfusionMatrix& cm, Decision expected, Decision actual) {
  if (expected == Decision::kBlock) {
    actual == Decision::kBlock ? ++cm.tp : ++cm.fn;
  } else {
    actual == Decision::kBlock ? ++cm.fp : ++cm.tn;
  }
}

/// Grid preconditions shared by sweep and calibrate.
void check_grid(std::span<const double> grid, const char* name) {
  if (grid.empty()) throw std::invalid_argument(std::string(name) + ": empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] < 1.0)) {
      throw std::invalid_argument(std::string(name) + ": grid values must be in (0,1)");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument(std::string(name) + ": grid must be strictly increasing");
    }
  }
}

bool calibration_better(const MetricsReport& cand, const Thresholds& cand_th,
                        const MetricsReport& best, const Thresholds& best_th) {
  if (cand.f1 != best.f1) return cand.f1 > best.f1;
  if (cand.fpr != best.fpr) return cand.fpr < best.fpr;
  if (cand_th.tau_idc != best_th.tau_idc) return cand_th.tau_idc < best_th.tau_idc;
  if (cand_th.tau_cvl != best_th.tau_cvl) return cand_th.tau_cvl < best_th.tau_cvl;
  return cand_th.tau_irs < best_th.tau_irs;
}

}  // namespace

ScenarioSet parse_scenarios(std::string_view text, std::string_view origin,
                            std::string split_label) {
  ScenarioSet set;
  set.split_label = std::move(split_label);
  std::vector<std::string> errors;
  std::map<std::string, std::size_t> id_lines;

  std::size_t line_number = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    std::string_view line =
        text.substr(begin, end == std::string_view::npos ? std::string_view::npos : end - begin);
    begin = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_number;
    if (is_blank(line)) continue;

    const std::string where = std::string(origin) + ":" + std::to_string(line_number);
    json doc = json::parse(line, nullptr, false);
    if (doc.is_discarded()) {
      errors.push_back(where + ": malformed JSON");
      continue;
    }
    Scenario scenario;
    if (auto error = parse_scenario_line(doc, scenario)) {
      errors.push_back(where + ": " + *error);
      continue;
    }
    auto [it, inserted] = id_lines.emplace(scenario.id, line_number);
    if (!inserted) {
      errors.push_back(where + ": duplicate id '" + scenario.id + "' (first seen at line " +
                       std::to_string(it->second) + ")");
      continue;
    }
    set.scenarios.push_back(std::move(scenario));
  }

  if (!errors.empty()) {
    std::ostringstream msg;
    msg << std::string(origin) << ": " << errors.size() << " scenario error(s):";
    for (const std::string& e : errors) msg << "\n  - " << e;
    throw ScenarioLoadError(msg.str());
  }
  return set;
}

ScenarioSet load_scenarios(const std::filesystem::path& path, std::string split_label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioLoadError(path.string() + ": cannot open scenario file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenarios(buffer.str(), path.string(), std::move(split_label));
}

BenchmarkReport run_benchmark(const ScenarioSet& set, const Engine& engine, std::size_t threads) {
  const std::size_t n = set.scenarios.size();
  if (n == 0) throw std::invalid_argument("run_benchmark: empty scenario set");

  std::vector<EvaluationResult> results(n);
  auto evaluate_one = [&](std::size_t i) {
    const Scenario& scenario = set.scenarios[i];
    Verdict verdict = engine.decide(scenario.role, ActionProposal{scenario.action, scenario.trigger});
    results[i] = EvaluationResult{scenario.id, std::move(verdict), scenario.expected_verdict,
                                  false};
    results[i].correct = results[i].verdict.decision == scenario.expected_verdict;
  };

  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) evaluate_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const std::size_t worker_count = std::min<std::size_t>(threads, n);
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) evaluate_one(i);
      });
    }
    for (std::thread& t : workers) t.join();
  }

  // Order-normalize: report content is independent of execution order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return set.scenarios[a].id < set.scenarios[b].id;
  });

  BenchmarkReport report;
  report.split_label = set.split_label;
  report.scenario_count = n;
  report.thresholds = engine.thresholds();
  report.options = engine.options();
  report.pack_version = engine.pack().version;
  report.engine_version = kEngineVersion;
  report.timestamp = format_utc_timestamp();

  ConfusionMatrix overall_cm;
  std::map<Difficulty, ConfusionMatrix> difficulty_cm;
  std::vector<double> latency_samples;
  latency_samples.reserve(n);

  for (std::size_t idx : order) {
    const Scenario& scenario = set.scenarios[idx];
    const EvaluationResult& result = results[idx];
    add_outcome(overall_cm, result.expected, result.verdict.decision);
    add_outcome(difficulty_cm[scenario.difficulty], result.expected, result.verdict.decision);
    latency_samples.push_back(static_cast<double>(result.verdict.latency_us));

    if (scenario.benign()) {
      ++report.benign.n;
      result.verdict.blocked() ? ++report.benign.fp : ++report.benign.tn;
    } else {
      CategoryBreakdown& cat = report.by_category[static_cast<std::size_t>(*scenario.category)];
      ++cat.n;
      result.verdict.blocked() ? ++cat.tp : ++cat.fn;
    }
    if (!scenario.benign() && result.verdict.blocked()) {
      ++report.layers.true_positives;
      if (result.verdict.triggered(LayerId::kIdc)) ++report.layers.idc;
      if (result.verdict.triggered(LayerId::kIrs)) ++report.layers.irs;
      if (result.verdict.triggered(LayerId::kCvl)) ++report.layers.cvl;
    }
    report.results.push_back(results[idx]);
  }

  for (CategoryBreakdown& cat : report.by_category) {
    cat.miss_rate = cat.n == 0 ? 0.0 : static_cast<double>(cat.fn) / static_cast<double>(cat.n);
  }
  report.benign.fpr = report.benign.n == 0
                          ? 0.0
                          : static_cast<double>(report.benign.fp) / static_cast<double>(report.benign.n);

  report.overall = compute_metrics(overall_cm);
  report.overall.latency = latency_stats(latency_samples);
  for (const auto& [difficulty, cm] : difficulty_cm) {
    report.by_difficulty.emplace(difficulty, compute_metrics(cm));
  }
  return report;
}

BenchmarkReport run_benchmark(const ScenarioSet& set, const LexiconPack& pack,
                              const Thresholds& thresholds, const EngineOptions& options,
                              std::size_t threads) {
  return run_benchmark(set, Engine(pack, thresholds, options), threads);
}

std::string_view to_string(SweepParam param) {
  switch (param) {
    case SweepParam::kIdc: return "idc";
    case SweepParam::kCvl: return "cvl";
    case SweepParam::kIrs: return "irs";
  }
  return "idc";
}

std::optional<SweepParam> sweep_param_from_string(std::string_view name) {
  if (name == "idc") return SweepParam::kIdc;
  if (name == "cvl") return SweepParam::kCvl;
  if (name == "irs") return SweepParam::kIrs;
  return std::nullopt;
}

SweepReport sweep_threshold(const ScenarioSet& set, const LexiconPack& pack,
                            const Thresholds& base, SweepParam param,
                            std::span<const double> grid, const EngineOptions& options,
                            std::size_t threads) {
  check_grid(grid, "sweep_threshold");

  SweepReport report;
  report.param = param;
  report.base = base;
  report.split_label = set.split_label;
  report.pack_version = pack.version;
  for (double value : grid) {
    Thresholds thresholds = base;
    switch (param) {
      case SweepParam::kIdc: thresholds.tau_idc = value; break;
      case SweepParam::kCvl: thresholds.tau_cvl = value; break;
      case SweepParam::kIrs: thresholds.tau_irs = value; break;
    }
    BenchmarkReport point = run_benchmark(set, pack, thresholds, options, threads);
    MetricsReport metrics = point.overall;
    metrics.latency.reset();
    report.points.push_back({value, std::move(metrics)});
  }
  return report;
}

CalibrationResult calibrate(const ScenarioSet& dev, const LexiconPack& pack,
                            std::span<const double> cvl_grid, std::span<const double> idc_grid,
                            std::span<const double> irs_grid, const EngineOptions& options) {
  if (dev.scenarios.empty()) throw std::invalid_argument("calibrate: empty dev set");
  check_grid(cvl_grid, "calibrate cvl");
  check_grid(idc_grid, "calibrate idc");
  check_grid(irs_grid, "calibrate irs");

  CalibrationResult best;
  bool first = true;
  for (double cvl : cvl_grid) {
    for (double idc : idc_grid) {
      for (double irs : irs_grid) {
        Thresholds candidate{idc, cvl, irs};
        BenchmarkReport report = run_benchmark(dev, pack, candidate, options);
        MetricsReport metrics = report.overall;
        metrics.latency.reset();
        ++best.configurations;
        if (first || calibration_better(metrics, candidate, best.dev_metrics, best.thresholds)) {
          best.thresholds = candidate;
          best.dev_metrics = std::move(metrics);
          first = false;
        }
      }
    }
  }
  best.degenerate = best.dev_metrics.is_degenerate("f1");
  return best;
}

}  // namespace ilion
