#include "ilion/cascade.hpp"

#include <cassert>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ilion/tokenizer.hpp"
#include "ilion/vector_math.hpp"
#include "ilion/version.hpp"

namespace ilion {

namespace {

bool all_zero(std::span<const double> v) {
  for (double x : v) {
    if (x != 0.0) return false;
  }
  return true;
}

void check_nonnegative_finite(std::span<const double> v, const char* name) {
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument(std::string(name) + ": entries must be nonnegative and finite");
    }
  }
}

/// The combined rule over already-encoded inputs. All three conditions are
/// evaluated unconditionally so co-activation is observable; a zero vector
/// makes IDC and IRS abstain (or fire synthetically under fail-closed).
Verdict decide_core(std::span<const double> v_r, std::span<const double> v_a,
                    const CategorySignals& signals, const Thresholds& thresholds,
                    const EngineOptions& options) {
  Verdict verdict;
  verdict.signals = signals;
  verdict.engine_version = kEngineVersion;

  const bool action_empty = all_zero(v_a);
  const bool role_empty = all_zero(v_r);
  verdict.coverage = action_empty  ? CoverageFlag::kActionEmpty
                     : role_empty ? CoverageFlag::kRoleEmpty
                                  : CoverageFlag::kFull;

  bool idc_fired = false;
  bool irs_fired = false;
  if (verdict.coverage == CoverageFlag::kFull) {
    const double rho = *cosine(v_r, v_a);
    const double delta = 1.0 - rho;
    verdict.resonance = rho;
    verdict.drift = delta;
    idc_fired = delta > thresholds.tau_idc;
    irs_fired = rho < thresholds.tau_irs;
  } else if (options.fail_closed_on_empty) {
    idc_fired = true;
  }

  const bool cvl_fired = !cvl_vetoes(signals, thresholds.tau_cvl).empty();

  if (idc_fired) verdict.triggered_layers.push_back(LayerId::kIdc);
  if (irs_fired) verdict.triggered_layers.push_back(LayerId::kIrs);
  if (cvl_fired) verdict.triggered_layers.push_back(LayerId::kCvl);
  verdict.decision = verdict.triggered_layers.empty() ? Decision::kAllow : Decision::kBlock;
  assert((verdict.decision == Decision::kBlock) == !verdict.triggered_layers.empty());
  return verdict;
}

void check_inputs(const RoleDefinition& role, const ActionProposal& action,
                  const Thresholds& thresholds) {
  if (is_blank(role.text)) throw std::invalid_argument("decide: role text is blank");
  if (is_blank(action.action_text)) throw std::invalid_argument("decide: action text is blank");
  if (auto error = thresholds.validate()) throw std::invalid_argument("decide: " + *error);
}

}  // namespace

std::optional<double> idc_drift(std::span<const double> v_r, std::span<const double> v_a) {
  std::optional<double> c = cosine(v_r, v_a);
  if (!c) return std::nullopt;
  return 1.0 - *c;
}

std::optional<double> idc_drift(const FeatureVector& v_r, const FeatureVector& v_a) {
  return idc_drift(std::span<const double>(v_r.values), std::span<const double>(v_a.values));
}

std::optional<double> irs_resonance(std::span<const double> v_r, std::span<const double> v_a) {
  return cosine(v_r, v_a);
}

std::optional<double> irs_resonance(const FeatureVector& v_r, const FeatureVector& v_a) {
  return irs_resonance(std::span<const double>(v_r.values), std::span<const double>(v_a.values));
}

std::vector<AttackCategory> cvl_vetoes(const CategorySignals& signals, double tau_cvl) {
  std::vector<AttackCategory> vetoed;
  for (AttackCategory category : kAllAttackCategories) {
    if (signals[category] > tau_cvl) vetoed.push_back(category);
  }
  return vetoed;
}

Verdict decide(const RoleDefinition& role, const ActionProposal& action, const LexiconPack& pack,
               const Thresholds& thresholds, const EngineOptions& options) {
  std::vector<std::string> violations = validate_pack(pack);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "decide: invalid pack:";
    for (const std::string& v : violations) msg << "\n  - " << v;
    throw PackLoadError(msg.str());
  }
  check_inputs(role, action, thresholds);

  const auto start = std::chrono::steady_clock::now();
  TermIndex index(pack);
  FeatureVector v_r = tii_encode(role, index);
  ActionEncoding enc = svrf_encode(action, index, options.include_trigger);
  Verdict verdict = decide_core(std::span<const double>(v_r.values),
                                std::span<const double>(enc.vector.values), enc.signals,
                                thresholds, options);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  verdict.latency_us = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count());
  return verdict;
}

Engine::Engine(LexiconPack pack, Thresholds thresholds, EngineOptions options)
    : pack_(std::move(pack)), index_(pack_), thresholds_(thresholds), options_(options) {
  std::vector<std::string> violations = validate_pack(pack_);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "Engine: invalid pack:";
    for (const std::string& v : violations) msg << "\n  - " << v;
    throw PackLoadError(msg.str());
  }
  if (auto error = thresholds_.validate()) throw std::invalid_argument("Engine: " + *error);
}

Verdict Engine::decide(const RoleDefinition& role, const ActionProposal& action) const {
  check_inputs(role, action, thresholds_);
  const auto start = std::chrono::steady_clock::now();
  FeatureVector v_r = tii_encode(role, index_);
  ActionEncoding enc = svrf_encode(action, index_, options_.include_trigger);
  Verdict verdict = decide_core(std::span<const double>(v_r.values),
                                std::span<const double>(enc.vector.values), enc.signals,
                                thresholds_, options_);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  verdict.latency_us = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count());
  return verdict;
}

std::vector<double> FeatureVectorSpace::encode_role(std::string_view role_text) const {
  FeatureVector v = tii_encode(RoleDefinition{std::string(role_text)}, index_);
  return {v.values.begin(), v.values.end()};
}

std::pair<std::vector<double>, CategorySignals> FeatureVectorSpace::encode_action(
    std::string_view action_text) const {
  ActionEncoding enc = svrf_encode(ActionProposal{std::string(action_text), std::nullopt}, index_);
  return {{enc.vector.values.begin(), enc.vector.values.end()}, enc.signals};
}

Verdict decide_with_provider(const VectorSpaceProvider& provider, std::string_view role_text,
                             std::string_view action_text, const Thresholds& thresholds,
                             const EngineOptions& options) {
  if (is_blank(role_text)) throw std::invalid_argument("decide: role text is blank");
  if (is_blank(action_text)) throw std::invalid_argument("decide: action text is blank");
  if (auto error = thresholds.validate()) throw std::invalid_argument("decide: " + *error);

  const auto start = std::chrono::steady_clock::now();
  std::vector<double> v_r = provider.encode_role(role_text);
  auto [v_a, signals] = provider.encode_action(action_text);
  if (v_r.size() != v_a.size()) {
    throw std::invalid_argument("decide: provider produced vectors of unequal length");
  }
  check_nonnegative_finite(v_r, "role vector");
  check_nonnegative_finite(v_a, "action vector");
  for (double s : signals.values) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw std::invalid_argument("decide: provider signals must be in [0,1]");
    }
  }
  Verdict verdict = decide_core(v_r, v_a, signals, thresholds, options);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  verdict.latency_us = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count());
  return verdict;
}

}  // namespace ilion
