#pragma once

#include <memory>
#include <string>

#include "ilion/cascade.hpp"

namespace ilion {

/// Inline HTTP gate: POST /v1/gate and GET /v1/health. Pack and thresholds
/// are fixed at construction; request handling is fully concurrent over the
/// shared immutable engine. Internal failures answer 5xx (callers must treat
/// that as BLOCK), never a fabricated ALLOW.
class GateService {
 public:
  explicit GateService(Engine engine);
  ~GateService();

  GateService(const GateService&) = delete;
  GateService& operator=(const GateService&) = delete;

  /// Binds and serves until stop(); returns false when binding fails.
  bool listen(const std::string& host, int port);

  /// Test support: bind an ephemeral port now, serve later on a caller
  /// thread. Returns the bound port or -1.
  int bind_any_port(const std::string& host);
  bool listen_after_bind();

  void stop();

  const Engine& engine() const;

  static constexpr std::size_t kMaxBodyBytes = 64 * 1024;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ilion
