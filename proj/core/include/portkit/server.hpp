#pragma once

// Researcher-side donation endpoint: project metadata, append-only storage of
// consented donations and token-protected retrieval.
//
//   GET  /healthz
//   GET  /api/projects/{id}
//   POST /api/projects/{id}/donations
//   GET  /api/projects/{id}/donations      (Authorization: Bearer <token>)

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "portkit/donation.hpp"
#include "portkit/engine.hpp"

namespace portkit::server {

inline constexpr const char* kDataDirEnv = "PORT_KIT_DATA_DIR";

struct ProjectConfig {
  Project project;
  std::string researcher_token;
};

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir = "port-kit-data";
  int submissions_per_minute = 60;  // per client address
  std::vector<ProjectConfig> projects;

  /// Fills each project's script_listing from the registry and validates ids.
  /// The PORT_KIT_DATA_DIR environment variable overrides data_dir.
  /// Throws Error(InvalidConfig).
  static ServerConfig from_json(const nlohmann::json& doc, const ExtractorRegistry& registry);
  static ServerConfig load(const std::filesystem::path& file, const ExtractorRegistry& registry);
};

/// One JSON-lines file per project; records are only ever appended.
class DonationStore {
 public:
  explicit DonationStore(std::filesystem::path data_dir);

  /// Writes one line with a single O_APPEND write and fsyncs it. Throws
  /// Error(StorageFailure).
  void append(const DonationRecord& record);
  /// Complete lines only, in insertion order. Throws Error(StorageFailure).
  [[nodiscard]] std::vector<DonationRecord> list(const std::string& project_id) const;

 private:
  std::mutex& lock_for(const std::string& project_id) const;
  [[nodiscard]] std::filesystem::path file_for(const std::string& project_id) const;

  std::filesystem::path data_dir_;
  mutable std::mutex locks_guard_;
  mutable std::map<std::string, std::unique_ptr<std::mutex>> locks_;
};

/// Transport-independent server logic.
class DonationService {
 public:
  using Clock = std::function<std::chrono::system_clock::time_point()>;

  explicit DonationService(ServerConfig config, Clock clock = {});

  /// Throws UnknownProject, ExtractorMismatch, InvalidPayload,
  /// InvalidRequest or StorageFailure.
  std::string submit(const std::string& project_id, DonationRecord submission);
  /// Throws UnknownProject.
  [[nodiscard]] const Project& get_project(const std::string& project_id) const;
  /// Throws UnknownProject or Unauthorized.
  [[nodiscard]] std::vector<DonationRecord> list_donations(const std::string& project_id,
                                                           const std::string& researcher_token) const;

  [[nodiscard]] const ServerConfig& config() const noexcept { return config_; }

 private:
  const ProjectConfig& project_config(const std::string& project_id) const;
  std::string new_donation_id();

  ServerConfig config_;
  Clock clock_;
  DonationStore store_;
  std::mutex id_mutex_;
  std::uint64_t id_state_;
  std::uint64_t id_counter_ = 0;
};

/// One structured log line per request; never includes bodies.
using RequestLog = std::function<void(const nlohmann::json&)>;
RequestLog stderr_request_log();

class HttpServer {
 public:
  HttpServer(DonationService& service, RequestLog log = stderr_request_log());
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Returns the bound port (useful with port 0), or -1 on failure.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace portkit::server
