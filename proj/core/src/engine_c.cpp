#include "portkit/engine_c.h"

#include <cstring>

#include "portkit/engine.hpp"
#include "portkit/error.hpp"

namespace {

using nlohmann::json;
using portkit::ErrorCode;

char* dup(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const portkit::Engine& engine() {
  static const portkit::Engine instance;
  return instance;
}

int fail(int status, std::string_view code, const std::string& message, char** out) {
  if (out) *out = dup(portkit::canonical_json(json{{"error", code}, {"message", message}}));
  return status;
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownExtractor: return PORTKIT_UNKNOWN_EXTRACTOR;
    case ErrorCode::ArchiveRejected: return PORTKIT_ARCHIVE_REJECTED;
    case ErrorCode::MissingParticipantKey: return PORTKIT_MISSING_PARTICIPANT_KEY;
    default: return PORTKIT_INVALID_ARGUMENT;
  }
}

template <typename Fn>
int guarded(char** out, Fn&& fn) {
  if (!out) return PORTKIT_INVALID_ARGUMENT;
  *out = nullptr;
  try {
    *out = dup(fn());
    return *out ? PORTKIT_OK : PORTKIT_INTERNAL_ERROR;
  } catch (const portkit::Error& e) {
    return fail(status_for(e.code()), portkit::to_string(e.code()), e.what(), out);
  } catch (const std::exception& e) {
    return fail(PORTKIT_INTERNAL_ERROR, "InternalError", e.what(), out);
  }
}

}  // namespace

extern "C" {

char* portkit_list_extractors(void) {
  json list = json::array();
  for (const auto& d : engine().list_extractors()) {
    list.push_back(json{{"id", d.id}, {"version", d.version}, {"display_name", d.display_name},
                        {"script_listing", d.script_listing}});
  }
  return dup(portkit::canonical_json(list));
}

int portkit_run_extractor(const char* extractor_id, const uint8_t* archive_bytes, size_t archive_len,
                          const char* archive_name, const char* settings_json, char** out_json) {
  return guarded(out_json, [&] {
    if (!extractor_id || !archive_name || (!archive_bytes && archive_len > 0)) {
      throw portkit::Error(ErrorCode::InvalidRequest, "null argument");
    }
    json settings = json::object();
    if (settings_json) {
      settings = json::parse(settings_json, nullptr, false);
      if (settings.is_discarded()) throw portkit::Error(ErrorCode::InvalidConfig, "settings are not valid JSON");
    }
    const auto result = engine().run_extractor(extractor_id, portkit::ByteView(archive_bytes, archive_len),
                                               archive_name, settings);
    return portkit::canonical_json(result);
  });
}

int portkit_build_consent_payload(const char* result_json, const char* project_id, const char* participant_key,
                                  const char* decision, char** out_json) {
  return guarded(out_json, [&] {
    if (!result_json || !project_id || !participant_key || !decision) {
      throw portkit::Error(ErrorCode::InvalidRequest, "null argument");
    }
    const std::string_view d(decision);
    if (d != "donate" && d != "decline") {
      throw portkit::Error(ErrorCode::InvalidRequest, "decision must be 'donate' or 'decline'");
    }
    const auto result = portkit::parse_result(result_json);
    const auto record = engine().build_consent_payload(
        result, project_id, participant_key,
        portkit::ConsentDecision::now(d == "donate" ? portkit::Decision::Donate : portkit::Decision::Decline));
    return record ? portkit::canonical_json(portkit::to_json(*record)) : std::string("null");
  });
}

void portkit_free(char* json) { std::free(json); }

}  // extern "C"
