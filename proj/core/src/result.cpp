#include "portkit/result.hpp"

#include <ctime>

#include "portkit/error.hpp"

namespace portkit {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidResult, "invalid extraction result: " + what);
}

json cell_json(const Cell& cell) {
  return std::visit([](const auto& v) { return json(v); }, cell);
}

Cell cell_from(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  invalid("table cell must be a string or number");
}

const json& field(const json& obj, const char* key, json::value_t type) {
  auto it = obj.find(key);
  if (it == obj.end()) invalid(std::string("missing field '") + key + "'");
  const bool ok = type == json::value_t::number_integer ? it->is_number() : it->type() == type;
  if (!ok) invalid(std::string("field '") + key + "' has the wrong type");
  return *it;
}

std::string string_field(const json& obj, const char* key) {
  return field(obj, key, json::value_t::string).get<std::string>();
}

}  // namespace

std::string format_utc(std::chrono::system_clock::time_point t) {
  const std::time_t secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json to_json(const ExtractionResult& result) {
  json blocks = json::array();
  for (const auto& block : result.blocks) {
    if (const auto* text = std::get_if<TextBlock>(&block)) {
      blocks.push_back(json{{"type", "text"}, {"text", text->text}});
    } else {
      const auto& table = std::get<TableBlock>(block);
      json rows = json::array();
      for (const auto& row : table.rows) {
        json r = json::array();
        for (const auto& cell : row) r.push_back(cell_json(cell));
        rows.push_back(std::move(r));
      }
      blocks.push_back(json{{"type", "table"}, {"title", table.title}, {"columns", table.columns}, {"rows", rows}});
    }
  }
  return json{{"blocks", std::move(blocks)},
              {"extractor",
               {{"id", result.extractor.id},
                {"version", result.extractor.version},
                {"display_name", result.extractor.display_name},
                {"script_listing", result.extractor.script_listing}}},
              {"produced_at", result.produced_at}};
}

ExtractionResult result_from_json(const json& doc) {
  if (!doc.is_object()) invalid("not a JSON object");
  ExtractionResult out;
  const auto& extractor = field(doc, "extractor", json::value_t::object);
  out.extractor.id = string_field(extractor, "id");
  out.extractor.version = string_field(extractor, "version");
  out.extractor.display_name = string_field(extractor, "display_name");
  out.extractor.script_listing = string_field(extractor, "script_listing");
  if (out.extractor.id.empty()) invalid("empty extractor id");
  out.produced_at = string_field(doc, "produced_at");

  for (const auto& b : field(doc, "blocks", json::value_t::array)) {
    if (!b.is_object()) invalid("block is not an object");
    const auto type = string_field(b, "type");
    if (type == "text") {
      out.blocks.emplace_back(TextBlock{string_field(b, "text")});
    } else if (type == "table") {
      TableBlock table;
      table.title = string_field(b, "title");
      for (const auto& c : field(b, "columns", json::value_t::array)) {
        if (!c.is_string()) invalid("column name is not a string");
        table.columns.push_back(c.get<std::string>());
      }
      for (const auto& r : field(b, "rows", json::value_t::array)) {
        if (!r.is_array() || r.size() != table.columns.size()) invalid("row width does not match columns");
        std::vector<Cell> row;
        for (const auto& c : r) row.push_back(cell_from(c));
        table.rows.push_back(std::move(row));
      }
      out.blocks.emplace_back(std::move(table));
    } else {
      invalid("unknown block type '" + type + "'");
    }
  }
  return out;
}

std::string canonical_json(const json& doc) {
  // nlohmann::json objects are std::map backed (sorted keys); dump() without
  // indent emits no whitespace and uses shortest round-trip doubles.
  return doc.dump(-1, ' ', /*ensure_ascii=*/false, json::error_handler_t::strict);
}

std::string canonical_json(const ExtractionResult& result) { return canonical_json(to_json(result)); }

ExtractionResult parse_result(std::string_view text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) invalid("not valid JSON");
  return result_from_json(doc);
}

}  // namespace portkit
