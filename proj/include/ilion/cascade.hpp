#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ilion/encoder.hpp"
#include "ilion/lexicon.hpp"
#include "ilion/types.hpp"

namespace ilion {

/// Drift between role and action vectors: 1 - cosine. Absent when either
/// vector is zero. Throws std::invalid_argument on length mismatch.
std::optional<double> idc_drift(std::span<const double> v_r, std::span<const double> v_a);
std::optional<double> idc_drift(const FeatureVector& v_r, const FeatureVector& v_a);

/// Resonance between role and action vectors: cosine itself.
std::optional<double> irs_resonance(std::span<const double> v_r, std::span<const double> v_a);
std::optional<double> irs_resonance(const FeatureVector& v_r, const FeatureVector& v_a);

/// Categories whose signal is strictly greater than tau_cvl, in enum order.
std::vector<AttackCategory> cvl_vetoes(const CategorySignals& signals, double tau_cvl);

struct EngineOptions {
  bool include_trigger = false;
  /// When set, a zero role or action vector blocks with a synthetic IDC
  /// trigger instead of abstaining.
  bool fail_closed_on_empty = false;
};

/// Evaluates all three conditions (no short-circuit) and returns the combined
/// verdict with per-layer attribution. Pure up to latency_us.
/// Throws std::invalid_argument on blank role/action text and PackLoadError
/// on an invalid pack; errors never degrade to a silent ALLOW.
Verdict decide(const RoleDefinition& role, const ActionProposal& action, const LexiconPack& pack,
               const Thresholds& thresholds, const EngineOptions& options = {});

/// Immutable pack + thresholds + options bundle with a prebuilt term index.
/// Shareable across any number of concurrent decide() calls.
class Engine {
 public:
  explicit Engine(LexiconPack pack, Thresholds thresholds = {}, EngineOptions options = {});

  Verdict decide(const RoleDefinition& role, const ActionProposal& action) const;

  const LexiconPack& pack() const { return pack_; }
  const Thresholds& thresholds() const { return thresholds_; }
  const EngineOptions& options() const { return options_; }

 private:
  LexiconPack pack_;
  TermIndex index_;
  Thresholds thresholds_;
  EngineOptions options_;
};

/// Extension point for alternative vector spaces. Role and action vectors
/// must have equal length and nonnegative finite entries; signals in [0,1].
class VectorSpaceProvider {
 public:
  virtual ~VectorSpaceProvider() = default;
  virtual std::vector<double> encode_role(std::string_view role_text) const = 0;
  virtual std::pair<std::vector<double>, CategorySignals> encode_action(
      std::string_view action_text) const = 0;
};

/// Default provider: the lexicon feature encoder.
class FeatureVectorSpace final : public VectorSpaceProvider {
 public:
  explicit FeatureVectorSpace(const LexiconPack& pack) : index_(pack) {}
  std::vector<double> encode_role(std::string_view role_text) const override;
  std::pair<std::vector<double>, CategorySignals> encode_action(
      std::string_view action_text) const override;

 private:
  TermIndex index_;
};

/// Same decision rule over an arbitrary provider.
Verdict decide_with_provider(const VectorSpaceProvider& provider, std::string_view role_text,
                             std::string_view action_text, const Thresholds& thresholds,
                             const EngineOptions& options = {});

}  // namespace ilion
