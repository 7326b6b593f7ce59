#pragma once

#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "ilion/types.hpp"

namespace ilion {

/// Wire/CLI form of a verdict. Drift and resonance are null when undefined.
nlohmann::json verdict_to_json(const Verdict& verdict, std::string_view pack_version);

/// Canonical single-document thresholds config (the calibrate output).
std::string thresholds_to_json_string(const Thresholds& thresholds);

/// Reads a thresholds config, applying any of tau_idc/tau_cvl/tau_irs that
/// are present on top of `base`. Throws std::runtime_error on bad input.
Thresholds thresholds_from_json_file(const std::filesystem::path& path, const Thresholds& base);

}  // namespace ilion
