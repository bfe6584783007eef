#include "portkit/error.hpp"

namespace portkit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedArchive: return "MalformedArchive";
    case ErrorCode::EmptyArchive: return "EmptyArchive";
    case ErrorCode::NoSemanticHistory: return "NoSemanticHistory";
    case ErrorCode::NoBrowserHistory: return "NoBrowserHistory";
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::NegativeDuration: return "NegativeDuration";
    case ErrorCode::NegativeDistance: return "NegativeDistance";
    case ErrorCode::InvalidTimezone: return "InvalidTimezone";
    case ErrorCode::InvalidNewsList: return "InvalidNewsList";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::UnknownExtractor: return "UnknownExtractor";
    case ErrorCode::ArchiveRejected: return "ArchiveRejected";
    case ErrorCode::MissingParticipantKey: return "MissingParticipantKey";
    case ErrorCode::Cancelled: return "Cancelled";
    case ErrorCode::InvalidResult: return "InvalidResult";
    case ErrorCode::UnknownProject: return "UnknownProject";
    case ErrorCode::ExtractorMismatch: return "ExtractorMismatch";
    case ErrorCode::InvalidPayload: return "InvalidPayload";
    case ErrorCode::InvalidRequest: return "InvalidRequest";
    case ErrorCode::StorageFailure: return "StorageFailure";
    case ErrorCode::Unauthorized: return "Unauthorized";
    case ErrorCode::RateLimited: return "RateLimited";
    case ErrorCode::NetworkError: return "NetworkError";
  }
  return "Unknown";
}

std::optional<ErrorCode> error_code_from_string(std::string_view name) noexcept {
  for (int i = 0; i <= static_cast<int>(ErrorCode::NetworkError); ++i) {
    const auto code = static_cast<ErrorCode>(i);
    if (to_string(code) == name) return code;
  }
  return std::nullopt;
}

}  // namespace portkit
