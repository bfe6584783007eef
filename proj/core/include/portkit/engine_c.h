#ifndef PORTKIT_ENGINE_C_H_
#define PORTKIT_ENGINE_C_H_

/* Host-embedding interface of the extraction engine (browser module build,
 * foreign hosts). Every string crossing this boundary is UTF-8 JSON in
 * canonical form; returned strings are owned by the caller and released with
 * portkit_free. Status 0 means success; otherwise the output holds
 * {"error": "<ErrorCode>", "message": "..."}. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum portkit_status {
  PORTKIT_OK = 0,
  PORTKIT_UNKNOWN_EXTRACTOR = 1,
  PORTKIT_ARCHIVE_REJECTED = 2,
  PORTKIT_INVALID_ARGUMENT = 3,
  PORTKIT_MISSING_PARTICIPANT_KEY = 4,
  PORTKIT_INTERNAL_ERROR = 5
};

/* JSON array of extractor descriptors. */
char* portkit_list_extractors(void);

/* settings_json may be NULL for defaults. */
int portkit_run_extractor(const char* extractor_id, const uint8_t* archive_bytes, size_t archive_len,
                          const char* archive_name, const char* settings_json, char** out_json);

/* decision is "donate" or "decline". On decline, *out_json is "null". */
int portkit_build_consent_payload(const char* result_json, const char* project_id, const char* participant_key,
                                  const char* decision, char** out_json);

void portkit_free(char* json);

#ifdef __cplusplus
}
#endif

#endif /* PORTKIT_ENGINE_C_H_ */
