#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace portkit {

inline constexpr std::string_view kIdentityEncoding = "identity";

/// A consented donation. `donation_id` and `received_at_utc` stay empty
/// until the server stores the record.
struct DonationRecord {
  std::string donation_id;
  std::string project_id;
  std::string participant_key;
  std::string extractor_id;
  std::string extractor_version;
  std::string payload;  // canonical JSON of the displayed ExtractionResult, after encoding
  std::string payload_encoding{kIdentityEncoding};
  std::string client_timestamp_utc;
  std::string received_at_utc;

  friend bool operator==(const DonationRecord&, const DonationRecord&) = default;
};

/// Public metadata of a study, as shown on its project page.
struct Project {
  std::string project_id;
  std::string title;
  std::string description;
  std::string extractor_id;
  std::string script_listing;
  std::string storage_note;

  friend bool operator==(const Project&, const Project&) = default;
};

nlohmann::json to_json(const Project& project);
/// Throws Error(InvalidRequest).
Project project_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const DonationRecord& record);
/// Throws Error(InvalidRequest) on missing or mistyped fields. Server-side
/// fields are optional.
DonationRecord donation_from_json(const nlohmann::json& doc);

}  // namespace portkit
