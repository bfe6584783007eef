#include "portkit/server.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>

#include <httplib.h>

#include "portkit/error.hpp"
#include "portkit/result.hpp"

namespace portkit::server {

using nlohmann::json;

namespace {

[[noreturn]] void bad_config(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

bool safe_project_id(const std::string& id) {
  static const std::regex pattern("[A-Za-z0-9._-]{1,128}");
  return std::regex_match(id, pattern) && id != "." && id != "..";
}

std::string storage_error(const std::string& what) {
  return what + ": " + std::strerror(errno);
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownProject: return 404;
    case ErrorCode::ExtractorMismatch: return 409;
    case ErrorCode::InvalidPayload:
    case ErrorCode::InvalidRequest: return 400;
    case ErrorCode::Unauthorized: return 401;
    case ErrorCode::RateLimited: return 429;
    default: return 500;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ServerConfig

ServerConfig ServerConfig::from_json(const json& doc, const ExtractorRegistry& registry) {
  if (!doc.is_object()) bad_config("server config must be a JSON object");
  ServerConfig cfg;
  try {
    cfg.host = doc.value("host", cfg.host);
    cfg.port = doc.value("port", cfg.port);
    cfg.data_dir = doc.value("data_dir", cfg.data_dir.string());
    cfg.submissions_per_minute = doc.value("submissions_per_minute", cfg.submissions_per_minute);
  } catch (const json::exception& e) {
    bad_config(std::string("server config: ") + e.what());
  }
  if (cfg.port < 0 || cfg.port > 65535) bad_config("port must be in [0, 65535]");
  if (cfg.submissions_per_minute <= 0) bad_config("submissions_per_minute must be positive");
  if (const char* dir = std::getenv(kDataDirEnv); dir && *dir) cfg.data_dir = dir;

  auto projects = doc.find("projects");
  if (projects == doc.end() || !projects->is_array() || projects->empty()) {
    bad_config("server config needs a non-empty 'projects' list");
  }
  for (const auto& p : *projects) {
    ProjectConfig pc;
    try {
      pc.project = project_from_json(p);
      pc.researcher_token = p.at("researcher_token").get<std::string>();
    } catch (const std::exception& e) {
      bad_config(std::string("project entry: ") + e.what());
    }
    if (!safe_project_id(pc.project.project_id)) bad_config("invalid project_id '" + pc.project.project_id + "'");
    if (pc.researcher_token.empty()) bad_config("project '" + pc.project.project_id + "' needs a researcher_token");
    const Extractor* extractor = registry.find(pc.project.extractor_id);
    if (!extractor) bad_config("project '" + pc.project.project_id + "' references unknown extractor '" +
                               pc.project.extractor_id + "'");
    pc.project.script_listing = extractor->descriptor().script_listing;
    for (const auto& existing : cfg.projects) {
      if (existing.project.project_id == pc.project.project_id) {
        bad_config("duplicate project_id '" + pc.project.project_id + "'");
      }
    }
    cfg.projects.push_back(std::move(pc));
  }
  return cfg;
}

ServerConfig ServerConfig::load(const std::filesystem::path& file, const ExtractorRegistry& registry) {
  std::ifstream in(file);
  if (!in) bad_config("cannot read config file '" + file.string() + "'");
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) bad_config("config file '" + file.string() + "' is not valid JSON");
  return from_json(doc, registry);
}

// ---------------------------------------------------------------------------
// DonationStore

DonationStore::DonationStore(std::filesystem::path data_dir) : data_dir_(std::move(data_dir)) {}

std::filesystem::path DonationStore::file_for(const std::string& project_id) const {
  return data_dir_ / (project_id + ".jsonl");
}

std::mutex& DonationStore::lock_for(const std::string& project_id) const {
  std::lock_guard guard(locks_guard_);
  auto& slot = locks_[project_id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

void DonationStore::append(const DonationRecord& record) {
  const std::string line = canonical_json(to_json(record)) + "\n";
  std::lock_guard guard(lock_for(record.project_id));
  std::error_code ec;
  std::filesystem::create_directories(data_dir_, ec);
  if (ec) throw Error(ErrorCode::StorageFailure, "cannot create data directory: " + ec.message());

  const auto path = file_for(record.project_id);
  const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0600);
  if (fd < 0) throw Error(ErrorCode::StorageFailure, storage_error("cannot open " + path.string()));
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      const auto msg = storage_error("write to " + path.string() + " failed");
      ::close(fd);
      throw Error(ErrorCode::StorageFailure, msg);
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    const auto msg = storage_error("fsync of " + path.string() + " failed");
    ::close(fd);
    throw Error(ErrorCode::StorageFailure, msg);
  }
  ::close(fd);
}

std::vector<DonationRecord> DonationStore::list(const std::string& project_id) const {
  std::string content;
  {
    std::lock_guard guard(lock_for(project_id));
    std::ifstream in(file_for(project_id), std::ios::binary);
    if (!in) return {};
    std::ostringstream buf;
    buf << in.rdbuf();
    content = std::move(buf).str();
  }
  std::vector<DonationRecord> out;
  std::size_t pos = 0;
  while (true) {
    const auto nl = content.find('\n', pos);
    if (nl == std::string::npos) break;  // a torn trailing line is not yet part of the store
    const auto line = std::string_view(content).substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    json doc = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw Error(ErrorCode::StorageFailure, "corrupt record in store of '" + project_id + "'");
    try {
      out.push_back(donation_from_json(doc));
    } catch (const Error&) {
      throw Error(ErrorCode::StorageFailure, "corrupt record in store of '" + project_id + "'");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// DonationService

DonationService::DonationService(ServerConfig config, Clock clock)
    : config_(std::move(config)),
      clock_(clock ? std::move(clock) : Clock([] { return std::chrono::system_clock::now(); })),
      store_(config_.data_dir),
      id_state_(std::random_device{}() ^ (static_cast<std::uint64_t>(std::random_device{}()) << 32)) {}

const ProjectConfig& DonationService::project_config(const std::string& project_id) const {
  for (const auto& p : config_.projects) {
    if (p.project.project_id == project_id) return p;
  }
  throw Error(ErrorCode::UnknownProject, "unknown project '" + project_id + "'");
}

const Project& DonationService::get_project(const std::string& project_id) const {
  return project_config(project_id).project;
}

std::string DonationService::new_donation_id() {
  std::lock_guard guard(id_mutex_);
  std::mt19937_64 mix(id_state_ ^ (++id_counter_ * 0x9e3779b97f4a7c15ULL));
  id_state_ = mix();
  char buf[40];
  std::snprintf(buf, sizeof buf, "don_%016llx%08llx", static_cast<unsigned long long>(mix()),
                static_cast<unsigned long long>(id_counter_ & 0xffffffffULL));
  return buf;
}

std::string DonationService::submit(const std::string& project_id, DonationRecord submission) {
  const auto& project = project_config(project_id).project;
  if (!submission.project_id.empty() && submission.project_id != project_id) {
    throw Error(ErrorCode::InvalidRequest, "project_id in body does not match the URL");
  }
  if (submission.participant_key.empty()) throw Error(ErrorCode::InvalidRequest, "participant_key is required");
  if (submission.extractor_id != project.extractor_id) {
    throw Error(ErrorCode::ExtractorMismatch, "project '" + project_id + "' expects extractor '" +
                                                  project.extractor_id + "', got '" + submission.extractor_id + "'");
  }
  if (submission.payload_encoding == kIdentityEncoding) {
    ExtractionResult result;
    try {
      result = parse_result(submission.payload);
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidPayload, e.what());
    }
    if (result.extractor.id != submission.extractor_id) {
      throw Error(ErrorCode::InvalidPayload, "payload was produced by a different extractor");
    }
  } else if (submission.payload.empty()) {
    throw Error(ErrorCode::InvalidPayload, "empty payload");
  }

  submission.project_id = project_id;
  submission.donation_id = new_donation_id();
  submission.received_at_utc = format_utc(clock_());
  store_.append(submission);
  return submission.donation_id;
}

std::vector<DonationRecord> DonationService::list_donations(const std::string& project_id,
                                                            const std::string& researcher_token) const {
  const auto& pc = project_config(project_id);
  if (researcher_token.empty() || researcher_token != pc.researcher_token) {
    throw Error(ErrorCode::Unauthorized, "researcher token does not authorize project '" + project_id + "'");
  }
  return store_.list(project_id);
}

// ---------------------------------------------------------------------------
// HttpServer

RequestLog stderr_request_log() {
  return [](const json& line) { std::cerr << line.dump() << '\n'; };
}

struct HttpServer::Impl {
  DonationService& service;
  RequestLog log;
  httplib::Server http;

  std::mutex rate_mutex;
  std::map<std::string, std::pair<std::int64_t, int>> rate_windows;  // remote -> (minute, count)

  Impl(DonationService& s, RequestLog l) : service(s), log(std::move(l)) {
    // SO_REUSEADDR only: a second server must not share a port that is in use.
    http.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    });
  }

  bool allow_submission(const std::string& remote) {
    using namespace std::chrono;
    const auto minute = duration_cast<minutes>(system_clock::now().time_since_epoch()).count();
    std::lock_guard guard(rate_mutex);
    auto& [window, count] = rate_windows[remote];
    if (window != minute) {
      window = minute;
      count = 0;
    }
    return ++count <= service.config().submissions_per_minute;
  }

  static void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(canonical_json(body), "application/json");
  }

  static void reply_error(httplib::Response& res, const Error& e) {
    reply(res, http_status(e.code()), json{{"error", to_string(e.code())}, {"message", e.what()}});
  }

  template <typename Fn>
  static void guarded(httplib::Response& res, Fn&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      reply_error(res, e);
    } catch (const std::exception& e) {
      reply(res, 500, json{{"error", "InternalError"}, {"message", e.what()}});
    }
  }

  void install_routes() {
    http.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      reply(res, 200, json{{"status", "ok"}});
    });

    http.Get(R"(/api/projects/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { reply(res, 200, to_json(service.get_project(req.matches[1]))); });
    });

    http.Post(R"(/api/projects/([^/]+)/donations)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        if (!allow_submission(req.remote_addr)) {
          throw Error(ErrorCode::RateLimited, "too many submissions, try again in a minute");
        }
        json body = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
        if (body.is_discarded()) throw Error(ErrorCode::InvalidRequest, "request body is not valid JSON");
        const auto id = service.submit(req.matches[1], donation_from_json(body));
        reply(res, 201, json{{"donation_id", id}});
      });
    });

    http.Get(R"(/api/projects/([^/]+)/donations)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        std::string token;
        const auto auth = req.get_header_value("Authorization");
        if (auth.rfind("Bearer ", 0) == 0) token = auth.substr(7);
        json list = json::array();
        for (const auto& r : service.list_donations(req.matches[1], token)) list.push_back(to_json(r));
        reply(res, 200, json{{"project_id", std::string(req.matches[1])}, {"donations", std::move(list)}});
      });
    });

    http.set_logger([this](const httplib::Request& req, const httplib::Response& res) {
      if (!log) return;
      log(json{{"ts", format_utc(std::chrono::system_clock::now())},
               {"method", req.method},
               {"path", req.path},
               {"status", res.status},
               {"remote", req.remote_addr}});
    });
  }
};

HttpServer::HttpServer(DonationService& service, RequestLog log)
    : impl_(std::make_unique<Impl>(service, std::move(log))) {
  impl_->install_routes();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen_after_bind() { return impl_->http.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->http.stop();
}

void HttpServer::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace portkit::server
