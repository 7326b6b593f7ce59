#include "ilion/json_io.hpp"

#include <fstream>
#include <sstream>

namespace ilion {

nlohmann::json verdict_to_json(const Verdict& verdict, std::string_view pack_version) {
  nlohmann::json j;
  j["decision"] = std::string(to_string(verdict.decision));
  if (verdict.drift) {
    j["drift"] = *verdict.drift;
  } else {
    j["drift"] = nullptr;
  }
  if (verdict.resonance) {
    j["resonance"] = *verdict.resonance;
  } else {
    j["resonance"] = nullptr;
  }
  nlohmann::json signals;
  for (AttackCategory category : kAllAttackCategories) {
    signals[std::string(to_string(category))] = verdict.signals[category];
  }
  j["signals"] = std::move(signals);
  nlohmann::json layers = nlohmann::json::array();
  for (LayerId layer : verdict.triggered_layers) {
    layers.push_back(std::string(to_string(layer)));
  }
  j["triggered_layers"] = std::move(layers);
  j["coverage_flag"] = std::string(to_string(verdict.coverage));
  j["latency_us"] = verdict.latency_us;
  j["engine_version"] = verdict.engine_version;
  j["pack_version"] = std::string(pack_version);
  return j;
}

std::string thresholds_to_json_string(const Thresholds& thresholds) {
  nlohmann::json j;
  j["tau_idc"] = thresholds.tau_idc;
  j["tau_cvl"] = thresholds.tau_cvl;
  j["tau_irs"] = thresholds.tau_irs;
  return j.dump(2) + "\n";
}

Thresholds thresholds_from_json_file(const std::filesystem::path& path, const Thresholds& base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path.string() + ": cannot open config file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json doc = nlohmann::json::parse(buffer.str(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw std::runtime_error(path.string() + ": malformed thresholds config");
  }
  Thresholds out = base;
  for (const char* key : {"tau_idc", "tau_cvl", "tau_irs"}) {
    if (doc.contains(key) && !doc[key].is_number()) {
      throw std::runtime_error(path.string() + ": '" + key + "' must be a number");
    }
  }
  if (doc.contains("tau_idc")) out.tau_idc = doc["tau_idc"].get<double>();
  if (doc.contains("tau_cvl")) out.tau_cvl = doc["tau_cvl"].get<double>();
  if (doc.contains("tau_irs")) out.tau_irs = doc["tau_irs"].get<double>();
  if (auto error = out.validate()) {
    throw std::runtime_error(path.string() + ": " + *error);
  }
  return out;
}

}  // namespace ilion
