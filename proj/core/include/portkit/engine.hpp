#pragma once

// Local processing core: runs a registered extractor over participant bytes
// and turns a reviewed result plus a consent decision into a donation.
//
// Sandbox contract: during run_extractor, extractor code sees only the
// archive it was handed, its settings and zones preloaded by the host. The
// engine performs no network or storage I/O of its own.

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "portkit/archive.hpp"
#include "portkit/donation.hpp"
#include "portkit/result.hpp"
#include "portkit/timezone.hpp"

namespace portkit {

struct SandboxContext {
  const TimeZoneTable& zones;
  std::stop_token stop;

  /// Throws Error(Cancelled) once the host requested a stop.
  void checkpoint() const;
};

class Extractor {
 public:
  virtual ~Extractor() = default;
  [[nodiscard]] virtual const ExtractorDescriptor& descriptor() const = 0;
  /// Everything returned here is shown to the participant.
  [[nodiscard]] virtual ExtractionResult extract(const DdpArchive& archive, const nlohmann::json& settings,
                                                 const SandboxContext& context) const = 0;
};

class ExtractorRegistry {
 public:
  /// The `gslh` and `browser-history` extractors.
  static ExtractorRegistry with_builtins();

  /// Throws std::invalid_argument on a duplicate id or empty listing.
  void add(std::unique_ptr<Extractor> extractor);
  [[nodiscard]] const Extractor* find(std::string_view id) const noexcept;
  [[nodiscard]] std::vector<ExtractorDescriptor> list() const;

 private:
  std::vector<std::shared_ptr<const Extractor>> extractors_;
};

enum class Decision { Donate, Decline };

class ConsentDecision {
 public:
  ConsentDecision(Decision decision, std::chrono::system_clock::time_point decided_at)
      : decision_(decision), decided_at_(decided_at) {}
  static ConsentDecision now(Decision decision) {
    return {decision, std::chrono::system_clock::now()};
  }

  [[nodiscard]] Decision decision() const noexcept { return decision_; }
  [[nodiscard]] std::chrono::system_clock::time_point decided_at() const noexcept { return decided_at_; }

 private:
  Decision decision_;
  std::chrono::system_clock::time_point decided_at_;
};

/// Opaque transform applied to the canonical payload before it leaves the
/// device. Identity by default; transport security is the connection's job.
struct PayloadEncoder {
  std::string name{kIdentityEncoding};
  std::function<std::string(std::string_view)> encode;

  static PayloadEncoder identity() { return {}; }
  [[nodiscard]] std::string apply(std::string_view payload) const {
    return encode ? encode(payload) : std::string(payload);
  }
};

class Engine {
 public:
  using Clock = std::function<std::chrono::system_clock::time_point()>;

  struct Options {
    /// Zones loaded at construction; the only ones extractors may use.
    std::vector<std::string> timezones{"Europe/Amsterdam", "UTC"};
    Clock clock = [] { return std::chrono::system_clock::now(); };
  };

  Engine();
  explicit Engine(ExtractorRegistry registry);
  Engine(ExtractorRegistry registry, Options options);

  /// Host-side setup step; reads zone data from disk.
  void preload_timezone(std::string_view name);

  [[nodiscard]] std::vector<ExtractorDescriptor> list_extractors() const { return registry_.list(); }

  /// Throws UnknownExtractor, ArchiveRejected (participant-readable reason),
  /// Cancelled, or a settings error (InvalidConfig, InvalidTimezone,
  /// InvalidNewsList).
  [[nodiscard]] ExtractionResult run_extractor(std::string_view extractor_id, ByteView archive_bytes,
                                               std::string_view archive_name,
                                               const nlohmann::json& settings = nlohmann::json::object(),
                                               std::stop_token stop = {}) const;

  /// Donate: a record whose payload is the canonical serialization of
  /// `result` (encoded). Decline: nullopt. Throws MissingParticipantKey.
  [[nodiscard]] std::optional<DonationRecord> build_consent_payload(
      const ExtractionResult& result, std::string_view project_id, std::string_view participant_key,
      const ConsentDecision& decision, const PayloadEncoder& encoder = PayloadEncoder::identity()) const;

 private:
  ExtractorRegistry registry_;
  Options options_;
  TimeZoneTable zones_;
};

}  // namespace portkit
