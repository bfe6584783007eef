#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace portkit {

enum class ErrorCode {
  // ddp-model
  MalformedArchive,
  EmptyArchive,
  NoSemanticHistory,
  NoBrowserHistory,
  MalformedJson,
  // gslh-extractor
  NegativeDuration,
  NegativeDistance,
  // browser-history-extractor
  InvalidTimezone,
  InvalidNewsList,
  // ddp-simulator
  InvalidConfig,
  // extraction-engine
  UnknownExtractor,
  ArchiveRejected,
  MissingParticipantKey,
  Cancelled,
  InvalidResult,
  // donation-server
  UnknownProject,
  ExtractorMismatch,
  InvalidPayload,
  InvalidRequest,
  StorageFailure,
  Unauthorized,
  RateLimited,
  // client side transport
  NetworkError,
};

/// Stable identifier used in logs, JSON error bodies and CLI output.
std::string_view to_string(ErrorCode code) noexcept;
std::optional<ErrorCode> error_code_from_string(std::string_view name) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace portkit
