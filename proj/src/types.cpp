#include "ilion/types.hpp"

namespace ilion {

namespace {

constexpr std::array<std::string_view, kAttackCategoryCount> kCategoryNames = {
    "prompt_injection",     "tool_misuse",          "data_exfiltration",
    "social_engineering",   "jailbreak",            "privilege_escalation",
    "compliance_violation", "destructive_action",
};

}  // namespace

std::string_view to_string(AttackCategory category) {
  return kCategoryNames[static_cast<std::size_t>(category)];
}

std::optional<AttackCategory> attack_category_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (kCategoryNames[i] == name) return static_cast<AttackCategory>(i);
  }
  return std::nullopt;
}

std::optional<std::string> Thresholds::validate() const {
  if (!(tau_idc > 0.0 && tau_idc < 1.0)) return "tau_idc must be in (0,1)";
  if (!(tau_cvl > 0.0 && tau_cvl < 1.0)) return "tau_cvl must be in (0,1)";
  if (!(tau_irs >= 0.0 && tau_irs < 1.0)) return "tau_irs must be in [0,1)";
  return std::nullopt;
}

std::string_view to_string(Decision decision) {
  return decision == Decision::kBlock ? "BLOCK" : "ALLOW";
}

std::optional<Decision> decision_from_string(std::string_view name) {
  if (name == "BLOCK") return Decision::kBlock;
  if (name == "ALLOW") return Decision::kAllow;
  return std::nullopt;
}

std::string_view to_string(LayerId layer) {
  switch (layer) {
    case LayerId::kIdc: return "IDC";
    case LayerId::kIrs: return "IRS";
    case LayerId::kCvl: return "CVL";
  }
  return "IDC";
}

std::string_view to_string(CoverageFlag flag) {
  switch (flag) {
    case CoverageFlag::kFull: return "full";
    case CoverageFlag::kActionEmpty: return "action_empty";
    case CoverageFlag::kRoleEmpty: return "role_empty";
  }
  return "full";
}

std::string_view to_string(Difficulty difficulty) {
  switch (difficulty) {
    case Difficulty::kEasy: return "easy";
    case Difficulty::kMedium: return "medium";
    case Difficulty::kHard: return "hard";
  }
  return "easy";
}

std::optional<Difficulty> difficulty_from_string(std::string_view name) {
  if (name == "easy") return Difficulty::kEasy;
  if (name == "medium") return Difficulty::kMedium;
  if (name == "hard") return Difficulty::kHard;
  return std::nullopt;
}

}  // namespace ilion
