#include "ilion/service.hpp"

#include <chrono>

#include <httplib.h>
#include <json.hpp>

#include "ilion/json_io.hpp"
#include "ilion/tokenizer.hpp"
#include "ilion/version.hpp"

namespace ilion {

namespace {

using nlohmann::json;

void reply_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
  reply_json(res, status, json{{"error", message}});
}

/// Returns an error message, or empty when the request is well formed.
std::string parse_gate_request(const std::string& body, std::string& role, std::string& action,
                               std::optional<std::string>& trigger) {
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded()) return "malformed JSON body";
  if (!doc.is_object()) return "body must be a JSON object";
  for (const auto& [key, value] : doc.items()) {
    if (key != "role" && key != "action" && key != "trigger") {
      return "unknown field '" + key + "'";
    }
  }
  if (!doc.contains("role") || !doc["role"].is_string()) return "missing string field 'role'";
  if (!doc.contains("action") || !doc["action"].is_string()) {
    return "missing string field 'action'";
  }
  if (doc.contains("trigger") && !doc["trigger"].is_string() && !doc["trigger"].is_null()) {
    return "field 'trigger' must be a string or null";
  }
  role = doc["role"].get<std::string>();
  action = doc["action"].get<std::string>();
  if (is_blank(role)) return "field 'role' is blank";
  if (is_blank(action)) return "field 'action' is blank";
  if (doc.contains("trigger") && doc["trigger"].is_string()) {
    trigger = doc["trigger"].get<std::string>();
  } else {
    trigger = std::nullopt;
  }
  return "";
}

}  // namespace

struct GateService::Impl {
  explicit Impl(Engine e) : engine(std::move(e)), started(std::chrono::steady_clock::now()) {}

  Engine engine;
  httplib::Server server;
  std::chrono::steady_clock::time_point started;
};

GateService::GateService(Engine engine) : impl_(std::make_unique<Impl>(std::move(engine))) {
  httplib::Server& server = impl_->server;
  server.set_payload_max_length(kMaxBodyBytes + 4096);

  server.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
        // Fail closed: the caller must treat any 5xx as BLOCK.
        reply_error(res, 500, "internal error");
      });

  server.Post("/v1/gate", [this](const httplib::Request& req, httplib::Response& res) {
    if (req.body.size() > kMaxBodyBytes) {
      reply_error(res, 413, "request body exceeds 64 KiB");
      return;
    }
    std::string role;
    std::string action;
    std::optional<std::string> trigger;
    std::string error = parse_gate_request(req.body, role, action, trigger);
    if (!error.empty()) {
      reply_error(res, 400, error);
      return;
    }
    Verdict verdict =
        impl_->engine.decide(RoleDefinition{role}, ActionProposal{action, trigger});
    reply_json(res, 200, verdict_to_json(verdict, impl_->engine.pack().version));
  });

  server.Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
    const auto uptime = std::chrono::steady_clock::now() - impl_->started;
    json body;
    body["status"] = "ok";
    body["engine_version"] = kEngineVersion;
    body["pack_version"] = impl_->engine.pack().version;
    body["thresholds"] = json{{"tau_idc", impl_->engine.thresholds().tau_idc},
                              {"tau_cvl", impl_->engine.thresholds().tau_cvl},
                              {"tau_irs", impl_->engine.thresholds().tau_irs}};
    body["include_trigger"] = impl_->engine.options().include_trigger;
    body["fail_closed_on_empty"] = impl_->engine.options().fail_closed_on_empty;
    body["uptime_seconds"] =
        std::chrono::duration_cast<std::chrono::seconds>(uptime).count();
    reply_json(res, 200, body);
  });
}

GateService::~GateService() = default;

bool GateService::listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int GateService::bind_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool GateService::listen_after_bind() { return impl_->server.listen_after_bind(); }

void GateService::stop() { impl_->server.stop(); }

const Engine& GateService::engine() const { return impl_->engine; }

}  // namespace ilion
