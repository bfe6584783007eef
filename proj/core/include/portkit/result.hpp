#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace portkit {

/// Identity and transparency listing of a registered extractor.
struct ExtractorDescriptor {
  std::string id;
  std::string version;
  std::string display_name;
  std::string script_listing;

  friend bool operator==(const ExtractorDescriptor&, const ExtractorDescriptor&) = default;
};

using Cell = std::variant<std::string, std::int64_t, double>;

struct TextBlock {
  std::string text;
  friend bool operator==(const TextBlock&, const TextBlock&) = default;
};

struct TableBlock {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  friend bool operator==(const TableBlock&, const TableBlock&) = default;
};

using Block = std::variant<TextBlock, TableBlock>;

/// What the participant reviews, and the only thing that may be donated.
struct ExtractionResult {
  std::vector<Block> blocks;
  ExtractorDescriptor extractor;
  std::string produced_at;  // RFC 3339 UTC, second precision

  /// Equality ignoring produced_at.
  [[nodiscard]] bool same_content(const ExtractionResult& other) const {
    return blocks == other.blocks && extractor == other.extractor;
  }
  friend bool operator==(const ExtractionResult&, const ExtractionResult&) = default;
};

/// `2021-01-23T00:00:00Z`
std::string format_utc(std::chrono::system_clock::time_point t);

nlohmann::json to_json(const ExtractionResult& result);

/// Strict inverse of to_json. Throws Error(InvalidResult).
ExtractionResult result_from_json(const nlohmann::json& doc);

/// Canonical JSON: UTF-8, sorted object keys, no insignificant whitespace,
/// shortest round-trip number formatting.
std::string canonical_json(const nlohmann::json& doc);
std::string canonical_json(const ExtractionResult& result);

/// Parses canonical (or any) JSON text into a result. Throws InvalidResult.
ExtractionResult parse_result(std::string_view text);

}  // namespace portkit
