#include "portkit/donation.hpp"

#include "portkit/error.hpp"

namespace portkit {

using nlohmann::json;

json to_json(const Project& p) {
  return json{{"project_id", p.project_id},     {"title", p.title},
              {"description", p.description},   {"extractor_id", p.extractor_id},
              {"script_listing", p.script_listing}, {"storage_note", p.storage_note}};
}

Project project_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::InvalidRequest, "project must be a JSON object");
  auto str = [&](const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) return std::string{};
    if (!it->is_string()) throw Error(ErrorCode::InvalidRequest, std::string("project field '") + key + "' must be a string");
    return it->get<std::string>();
  };
  Project p{str("project_id"), str("title"), str("description"), str("extractor_id"), str("script_listing"),
            str("storage_note")};
  if (p.project_id.empty()) throw Error(ErrorCode::InvalidRequest, "project_id is required");
  return p;
}

json to_json(const DonationRecord& r) {
  json out{{"project_id", r.project_id},
           {"participant_key", r.participant_key},
           {"extractor_id", r.extractor_id},
           {"extractor_version", r.extractor_version},
           {"payload", r.payload},
           {"payload_encoding", r.payload_encoding},
           {"client_timestamp_utc", r.client_timestamp_utc}};
  if (!r.donation_id.empty()) out["donation_id"] = r.donation_id;
  if (!r.received_at_utc.empty()) out["received_at_utc"] = r.received_at_utc;
  return out;
}

DonationRecord donation_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::InvalidRequest, "donation must be a JSON object");
  auto required = [&](const char* key) {
    auto it = doc.find(key);
    if (it == doc.end() || !it->is_string()) {
      throw Error(ErrorCode::InvalidRequest, std::string("donation field '") + key + "' must be a string");
    }
    return it->get<std::string>();
  };
  auto optional = [&](const char* key, std::string fallback) {
    auto it = doc.find(key);
    if (it == doc.end()) return fallback;
    if (!it->is_string()) {
      throw Error(ErrorCode::InvalidRequest, std::string("donation field '") + key + "' must be a string");
    }
    return it->get<std::string>();
  };
  DonationRecord r;
  r.project_id = optional("project_id", "");
  r.participant_key = required("participant_key");
  r.extractor_id = required("extractor_id");
  r.extractor_version = required("extractor_version");
  r.payload = required("payload");
  r.payload_encoding = optional("payload_encoding", std::string(kIdentityEncoding));
  r.client_timestamp_utc = required("client_timestamp_utc");
  r.donation_id = optional("donation_id", "");
  r.received_at_utc = optional("received_at_utc", "");
  return r;
}

}  // namespace portkit
