// ilion - deterministic pre-execution safety gate for agent actions.
//
// Exit codes for `check`: 0 = ALLOW, 2 = BLOCK, 1 = operational error, so
// pipelines can distinguish "gate said no" from "gate broke".

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ilion/harness.hpp"
#include "ilion/json_io.hpp"
#include "ilion/lexicon.hpp"
#include "ilion/service.hpp"
#include "ilion/version.hpp"

namespace {

using namespace ilion;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// "start:stop:step", endpoints inclusive when reachable by step. A step
/// larger than the range yields the single start point.
std::vector<double> parse_grid_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3) {
    throw std::runtime_error("grid spec '" + spec + "' must be start:stop:step");
  }
  auto parse_number = [&spec](const std::string& part) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
      value = std::stod(part, &consumed);
    } catch (const std::exception&) {
      throw std::runtime_error("grid spec '" + spec + "' has non-numeric parts");
    }
    if (consumed != part.size()) {
      throw std::runtime_error("grid spec '" + spec + "' has non-numeric parts");
    }
    return value;
  };
  const double start = parse_number(parts[0]);
  const double stop = parse_number(parts[1]);
  const double step = parse_number(parts[2]);
  if (step <= 0.0) throw std::runtime_error("grid spec '" + spec + "': step must be positive");
  if (stop < start) throw std::runtime_error("grid spec '" + spec + "': non-increasing range");
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    double value = start + k * step;
    if (value > stop + 1e-9) break;
    value = std::round(value * 1e9) / 1e9;  // keep grid points tidy
    if (!(value > 0.0 && value < 1.0)) {
      throw std::runtime_error("grid spec '" + spec + "': values must be in (0,1)");
    }
    grid.push_back(value);
  }
  return grid;
}

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

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "markdown") return ReportFormat::kMarkdown;
  throw std::runtime_error("unknown format '" + name + "' (expected json or markdown)");
}

void print_human_verdict(const Verdict& verdict, const std::string& pack_version) {
  std::cout << "decision: " << to_string(verdict.decision) << "\n";
  if (verdict.drift) {
    std::cout << "drift: " << f4(*verdict.drift) << "\n";
    std::cout << "resonance: " << f4(*verdict.resonance) << "\n";
  } else {
    std::cout << "drift: n/a (" << to_string(verdict.coverage) << ")\n";
    std::cout << "resonance: n/a\n";
  }
  std::cout << "signals:";
  bool any = false;
  for (AttackCategory category : kAllAttackCategories) {
    if (verdict.signals[category] > 0.0) {
      std::cout << " " << to_string(category) << "=" << f4(verdict.signals[category]);
      any = true;
    }
  }
  if (!any) std::cout << " none";
  std::cout << "\n";
  std::cout << "triggered_layers:";
  if (verdict.triggered_layers.empty()) {
    std::cout << " none";
  } else {
    for (LayerId layer : verdict.triggered_layers) std::cout << " " << to_string(layer);
  }
  std::cout << "\n";
  std::cout << "coverage: " << to_string(verdict.coverage) << "\n";
  std::cout << "latency_us: " << verdict.latency_us << "\n";
  std::cout << "engine: " << verdict.engine_version << ", pack: " << pack_version << "\n";
}

void print_summary_line(const BenchmarkReport& report) {
  std::cout << "scenarios=" << report.scenario_count << " accuracy="
            << pct(report.overall.accuracy) << " precision=" << pct(report.overall.precision)
            << " recall=" << pct(report.overall.recall) << " f1=" << f4(report.overall.f1)
            << " fpr=" << pct(report.overall.fpr);
  if (report.overall.latency) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.1f", report.overall.latency->mean_us);
    std::cout << " mean_latency_us=" << buffer;
  }
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ilion - deterministic pre-execution safety gate for agent actions"};
  app.require_subcommand(1);

  std::string pack_path;
  std::string config_path;
  double tau_idc = 0.0;
  double tau_cvl = 0.0;
  double tau_irs = 0.0;
  bool include_trigger = false;
  bool fail_closed = false;
  bool json_out = false;
  bool stable = false;

  app.add_option("--pack", pack_path, "Lexicon pack file (default: built-in, or $ILION_PACK)");
  app.add_option("--config", config_path, "Thresholds config file (see calibrate --out)");
  auto* tau_idc_opt = app.add_option("--tau-idc", tau_idc, "IDC drift threshold, in (0,1)");
  auto* tau_cvl_opt = app.add_option("--tau-cvl", tau_cvl, "CVL category threshold, in (0,1)");
  auto* tau_irs_opt = app.add_option("--tau-irs", tau_irs, "IRS resonance threshold, in [0,1)");
  app.add_flag("--include-trigger", include_trigger, "Append trigger text to the action text");
  app.add_flag("--fail-closed-on-empty", fail_closed,
               "Block (synthetic IDC) when role or action has no lexicon coverage");
  app.add_flag("--json", json_out, "Machine-readable output for check");
  app.add_flag("--stable", stable, "Deterministic reports: omit latency and timestamp");

  auto* cmd_check = app.add_subcommand("check", "Gate one action against a role");
  cmd_check->fallthrough();
  std::string role_text;
  std::string role_file;
  std::string action_text;
  std::string action_file;
  std::string trigger_text;
  auto* trigger_opt = cmd_check->add_option("--trigger", trigger_text, "Optional trigger text");
  cmd_check->add_option("--role", role_text, "Role definition text");
  cmd_check->add_option("--role-file", role_file, "Read the role definition from a file");
  cmd_check->add_option("--action", action_text, "Proposed action text");
  cmd_check->add_option("--action-file", action_file, "Read the proposed action from a file");

  auto* cmd_bench = app.add_subcommand("bench", "Evaluate a scenario file and report metrics");
  cmd_bench->fallthrough();
  std::string bench_scenarios;
  std::string bench_out;
  std::string bench_format = "json";
  std::size_t bench_threads = 1;
  cmd_bench->add_option("--scenarios", bench_scenarios, "Scenario file (JSON lines)")->required();
  cmd_bench->add_option("--out", bench_out, "Write the report to this path");
  cmd_bench->add_option("--format", bench_format, "Report format: json or markdown");
  cmd_bench->add_option("--threads", bench_threads, "Worker threads for evaluation");

  auto* cmd_sweep = app.add_subcommand("sweep", "Threshold ablation over a grid");
  cmd_sweep->fallthrough();
  std::string sweep_scenarios;
  std::string sweep_param = "idc";
  std::string sweep_grid;
  std::string sweep_out;
  std::string sweep_format = "json";
  std::size_t sweep_threads = 1;
  cmd_sweep->add_option("--scenarios", sweep_scenarios, "Scenario file (JSON lines)")->required();
  cmd_sweep->add_option("--param", sweep_param, "Threshold to vary: idc, cvl or irs")->required();
  cmd_sweep->add_option("--grid", sweep_grid, "Grid spec start:stop:step")->required();
  cmd_sweep->add_option("--out", sweep_out, "Write the sweep report to this path");
  cmd_sweep->add_option("--format", sweep_format, "Report format: json or markdown");
  cmd_sweep->add_option("--threads", sweep_threads, "Worker threads for evaluation");

  auto* cmd_calibrate = app.add_subcommand("calibrate", "Grid-search thresholds on a dev split");
  cmd_calibrate->fallthrough();
  std::string dev_path;
  std::string cvl_grid_spec = "0.15:0.50:0.05";
  std::string idc_grid_spec = "0.15:0.50:0.05";
  std::string irs_grid_spec = "0.10:0.10:0.05";
  std::string calibrate_out;
  cmd_calibrate->add_option("--dev", dev_path, "Dev-split scenario file")->required();
  cmd_calibrate->add_option("--cvl-grid", cvl_grid_spec, "CVL grid spec (default 0.15:0.50:0.05)");
  cmd_calibrate->add_option("--idc-grid", idc_grid_spec, "IDC grid spec (default 0.15:0.50:0.05)");
  cmd_calibrate->add_option("--irs-grid", irs_grid_spec, "IRS grid spec (default fixed 0.10)");
  cmd_calibrate->add_option("--out", calibrate_out, "Write the chosen thresholds as a config file");

  auto* cmd_serve = app.add_subcommand("serve", "Run the HTTP gate service");
  cmd_serve->fallthrough();
  std::string host = "127.0.0.1";
  int port = 8787;
  cmd_serve->add_option("--host", host, "Bind address");
  cmd_serve->add_option("--port", port, "Bind port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (pack_path.empty()) {
      if (const char* env = std::getenv("ILION_PACK")) pack_path = env;
    }
    LexiconPack pack = pack_path.empty() ? default_pack() : load_lexicon_pack(pack_path);

    Thresholds thresholds;
    if (!config_path.empty()) thresholds = thresholds_from_json_file(config_path, thresholds);
    if (tau_idc_opt->count() > 0) thresholds.tau_idc = tau_idc;
    if (tau_cvl_opt->count() > 0) thresholds.tau_cvl = tau_cvl;
    if (tau_irs_opt->count() > 0) thresholds.tau_irs = tau_irs;
    if (auto error = thresholds.validate()) throw std::runtime_error(*error);

    EngineOptions options{include_trigger, fail_closed};

    if (*cmd_check) {
      if (role_text.empty() == role_file.empty()) {
        std::cerr << "error: provide exactly one of --role or --role-file\n";
        return 1;
      }
      if (action_text.empty() == action_file.empty()) {
        std::cerr << "error: provide exactly one of --action or --action-file\n";
        return 1;
      }
      if (!role_file.empty()) role_text = read_text_file(role_file);
      if (!action_file.empty()) action_text = read_text_file(action_file);
      std::optional<std::string> trigger;
      if (trigger_opt->count() > 0) trigger = trigger_text;

      Engine engine(std::move(pack), thresholds, options);
      Verdict verdict = engine.decide(RoleDefinition{role_text},
                                      ActionProposal{action_text, trigger});
      if (json_out) {
        std::cout << verdict_to_json(verdict, engine.pack().version).dump() << "\n";
      } else {
        print_human_verdict(verdict, engine.pack().version);
      }
      return verdict.blocked() ? 2 : 0;
    }

    if (*cmd_bench) {
      ScenarioSet set = load_scenarios(bench_scenarios, "test");
      BenchmarkReport report = run_benchmark(set, pack, thresholds, options, bench_threads);
      print_summary_line(report);
      if (!bench_out.empty()) {
        emit_report(report, parse_format(bench_format), bench_out, stable);
      }
      return 0;
    }

    if (*cmd_sweep) {
      auto param = sweep_param_from_string(sweep_param);
      if (!param) throw std::runtime_error("unknown sweep param '" + sweep_param + "'");
      std::vector<double> grid = parse_grid_spec(sweep_grid);
      ScenarioSet set = load_scenarios(sweep_scenarios, "test");
      SweepReport report =
          sweep_threshold(set, pack, thresholds, *param, grid, options, sweep_threads);
      std::printf("%-6s %-8s %-9s %-8s %-6s\n", sweep_param.c_str(), "f1", "precision", "recall",
                  "fpr");
      for (const SweepPoint& point : report.points) {
        std::printf("%-6.2f %-8s %-9s %-8s %-6s\n", point.value, f4(point.metrics.f1).c_str(),
                    pct(point.metrics.precision).c_str(), pct(point.metrics.recall).c_str(),
                    pct(point.metrics.fpr).c_str());
      }
      if (!sweep_out.empty()) {
        emit_sweep_report(report, parse_format(sweep_format), sweep_out);
      }
      return 0;
    }

    if (*cmd_calibrate) {
      std::vector<double> cvl_grid = parse_grid_spec(cvl_grid_spec);
      std::vector<double> idc_grid = parse_grid_spec(idc_grid_spec);
      std::vector<double> irs_grid = parse_grid_spec(irs_grid_spec);
      ScenarioSet dev = load_scenarios(dev_path, "dev");
      CalibrationResult result = calibrate(dev, pack, cvl_grid, idc_grid, irs_grid, options);
      std::cout << result.configurations << " configurations evaluated\n";
      std::cout << "selected thresholds: tau_idc=" << result.thresholds.tau_idc
                << " tau_cvl=" << result.thresholds.tau_cvl
                << " tau_irs=" << result.thresholds.tau_irs << "\n";
      std::cout << "dev metrics: accuracy=" << pct(result.dev_metrics.accuracy)
                << " precision=" << pct(result.dev_metrics.precision)
                << " recall=" << pct(result.dev_metrics.recall)
                << " f1=" << f4(result.dev_metrics.f1) << " fpr=" << pct(result.dev_metrics.fpr)
                << "\n";
      if (result.degenerate) {
        std::cout << "warning: F1 degenerate on dev split; returned tie-break minimum\n";
      }
      if (!calibrate_out.empty()) {
        std::ofstream out(calibrate_out, std::ios::binary);
        if (!out) throw std::runtime_error(calibrate_out + ": cannot open for writing");
        out << thresholds_to_json_string(result.thresholds);
      }
      return 0;
    }

    if (*cmd_serve) {
      Engine engine(std::move(pack), thresholds, options);
      GateService service(std::move(engine));
      std::cout << "ilion " << kEngineVersion << " listening on " << host << ":" << port << "\n";
      if (!service.listen(host, port)) {
        std::cerr << "error: failed to bind " << host << ":" << port << "\n";
        return 1;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
