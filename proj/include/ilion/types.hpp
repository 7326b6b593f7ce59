#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ilion {

inline constexpr std::size_t kFeatureDimensions = 21;
inline constexpr std::size_t kAttackCategoryCount = 8;

/// Attack taxonomy backed by the category lexicons. Scenario files may also
/// carry the label "benign", which is represented as an absent category.
enum class AttackCategory : std::uint8_t {
  kPromptInjection = 0,
  kToolMisuse = 1,
  kDataExfiltration = 2,
  kSocialEngineering = 3,
  kJailbreak = 4,
  kPrivilegeEscalation = 5,
  kComplianceViolation = 6,
  kDestructiveAction = 7,
};

inline constexpr std::array<AttackCategory, kAttackCategoryCount> kAllAttackCategories = {
    AttackCategory::kPromptInjection,    AttackCategory::kToolMisuse,
    AttackCategory::kDataExfiltration,   AttackCategory::kSocialEngineering,
    AttackCategory::kJailbreak,          AttackCategory::kPrivilegeEscalation,
    AttackCategory::kComplianceViolation, AttackCategory::kDestructiveAction,
};

std::string_view to_string(AttackCategory category);
std::optional<AttackCategory> attack_category_from_string(std::string_view name);

/// Ordered dimension labels of the semantic feature space.
struct FeatureSpace {
  std::vector<std::string> dimension_labels;  // exactly kFeatureDimensions
  std::string version;
};

/// Nonnegative semantic weight vector; one slot per feature dimension.
struct FeatureVector {
  std::array<double, kFeatureDimensions> values{};

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  bool is_zero() const {
    for (double v : values) {
      if (v != 0.0) return false;
    }
    return true;
  }
  bool operator==(const FeatureVector&) const = default;
};

/// Per-attack-category score in [0,1], indexed by AttackCategory.
struct CategorySignals {
  std::array<double, kAttackCategoryCount> values{};

  double operator[](AttackCategory c) const { return values[static_cast<std::size_t>(c)]; }
  double& operator[](AttackCategory c) { return values[static_cast<std::size_t>(c)]; }
  bool operator==(const CategorySignals&) const = default;
};

struct RoleDefinition {
  std::string text;  // non-empty after whitespace trimming
};

struct ActionProposal {
  std::string action_text;  // non-empty after whitespace trimming
  std::optional<std::string> trigger_text;
};

struct Thresholds {
  double tau_idc = 0.40;
  double tau_cvl = 0.45;
  double tau_irs = 0.10;

  /// Returns an error message when a threshold is out of range:
  /// tau_idc, tau_cvl in (0,1); tau_irs in [0,1).
  std::optional<std::string> validate() const;
};

enum class Decision : std::uint8_t { kAllow, kBlock };
enum class LayerId : std::uint8_t { kIdc = 0, kIrs = 1, kCvl = 2 };
enum class CoverageFlag : std::uint8_t { kFull, kActionEmpty, kRoleEmpty };

std::string_view to_string(Decision decision);
std::optional<Decision> decision_from_string(std::string_view name);
std::string_view to_string(LayerId layer);
std::string_view to_string(CoverageFlag flag);

struct Verdict {
  Decision decision = Decision::kAllow;
  /// Drift and resonance are absent when either encoded vector is zero
  /// (the undefined-cosine case); they are never NaN.
  std::optional<double> drift;
  std::optional<double> resonance;
  CategorySignals signals;
  std::vector<LayerId> triggered_layers;  // sorted: IDC < IRS < CVL
  CoverageFlag coverage = CoverageFlag::kFull;
  std::uint64_t latency_us = 0;
  std::string engine_version;

  bool blocked() const { return decision == Decision::kBlock; }
  bool triggered(LayerId layer) const {
    for (LayerId l : triggered_layers) {
      if (l == layer) return true;
    }
    return false;
  }
};

enum class Difficulty : std::uint8_t { kEasy = 0, kMedium = 1, kHard = 2 };

std::string_view to_string(Difficulty difficulty);
std::optional<Difficulty> difficulty_from_string(std::string_view name);

/// One benchmark case. category is absent for benign scenarios; the loader
/// enforces expected_verdict == ALLOW exactly for benign.
struct Scenario {
  std::string id;
  std::optional<AttackCategory> category;
  RoleDefinition role;
  std::optional<std::string> trigger;
  std::string action;
  Decision expected_verdict = Decision::kAllow;
  Difficulty difficulty = Difficulty::kEasy;
  std::string rationale;

  bool benign() const { return !category.has_value(); }
};

}  // namespace ilion
