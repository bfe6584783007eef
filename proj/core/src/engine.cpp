#include "portkit/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "portkit/browser_history.hpp"
#include "portkit/error.hpp"
#include "portkit/gslh.hpp"
#include "portkit/takeout.hpp"

namespace portkit {

using nlohmann::json;

namespace {

[[noreturn]] void bad_setting(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

void reject_unknown_keys(const json& settings, std::initializer_list<std::string_view> allowed) {
  if (settings.is_null()) return;
  if (!settings.is_object()) bad_setting("extractor settings must be a JSON object");
  for (const auto& [key, value] : settings.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      bad_setting("unknown extractor setting '" + key + "'");
    }
  }
}

std::string string_setting(const json& settings, const char* key, std::string fallback) {
  if (settings.is_null()) return fallback;
  auto it = settings.find(key);
  if (it == settings.end()) return fallback;
  if (!it->is_string()) bad_setting(std::string("setting '") + key + "' must be a string");
  return it->get<std::string>();
}

class GslhExtractor final : public Extractor {
 public:
  const ExtractorDescriptor& descriptor() const override { return gslh::descriptor(); }

  ExtractionResult extract(const DdpArchive& archive, const json& settings,
                           const SandboxContext& context) const override {
    reject_unknown_keys(settings, {});
    auto parsed = parse_semantic_months(archive);
    context.checkpoint();
    auto summaries = gslh::summarize_years(parsed.months);
    context.checkpoint();
    return gslh::render_result(summaries);
  }
};

class BrowserHistoryExtractor final : public Extractor {
 public:
  const ExtractorDescriptor& descriptor() const override { return browser::descriptor(); }

  ExtractionResult extract(const DdpArchive& archive, const json& settings,
                           const SandboxContext& context) const override {
    reject_unknown_keys(settings, {"timezone", "curfew_start", "curfew_end", "news_sites"});
    browser::CurfewWindow window;
    window.timezone = string_setting(settings, "timezone", window.timezone);
    try {
      window.start_date = browser::parse_date(string_setting(settings, "curfew_start", "2021-01-23"));
      window.end_date = browser::parse_date(string_setting(settings, "curfew_end", "2021-04-28"));
    } catch (const std::invalid_argument& e) {
      bad_setting(e.what());
    }
    if (window.end_date < window.start_date) bad_setting("curfew_end precedes curfew_start");
    const TimeZone& zone = context.zones.get(window.timezone);

    std::optional<browser::NewsSiteList> custom;
    if (!settings.is_null() && settings.contains("news_sites")) {
      const auto& list = settings.at("news_sites");
      if (!list.is_array()) bad_setting("setting 'news_sites' must be a list of domains");
      std::vector<std::string> domains;
      for (const auto& d : list) {
        if (!d.is_string()) bad_setting("setting 'news_sites' must be a list of domains");
        domains.push_back(d.get<std::string>());
      }
      custom.emplace(domains);
    }
    const auto& news = custom ? *custom : browser::NewsSiteList::dutch_default();

    auto parsed = parse_browser_history(archive);
    context.checkpoint();
    auto table = browser::build_profile_table(parsed.visits, window, news, zone);
    context.checkpoint();
    return browser::render_result(table);
  }
};

std::string participant_message(const Error& e) {
  switch (e.code()) {
    case ErrorCode::MalformedArchive:
      return "The selected file could not be opened. Please select the .zip file you downloaded from Google "
             "Takeout, or the .json file inside it.";
    case ErrorCode::EmptyArchive:
      return "The selected file is empty. Please select the .zip file you downloaded from Google Takeout.";
    case ErrorCode::NoSemanticHistory:
      return "no Semantic Location History files found. Please select a Google Takeout export that includes "
             "Location History.";
    case ErrorCode::NoBrowserHistory:
      return "no BrowserHistory.json found";
    case ErrorCode::MalformedJson:
      return "The data in the selected file could not be read (" + std::string(e.what()) + ").";
    default:
      return e.what();
  }
}

}  // namespace

void SandboxContext::checkpoint() const {
  if (stop.stop_requested()) throw Error(ErrorCode::Cancelled, "extraction cancelled");
}

ExtractorRegistry ExtractorRegistry::with_builtins() {
  ExtractorRegistry registry;
  registry.add(std::make_unique<GslhExtractor>());
  registry.add(std::make_unique<BrowserHistoryExtractor>());
  return registry;
}

void ExtractorRegistry::add(std::unique_ptr<Extractor> extractor) {
  if (!extractor) throw std::invalid_argument("null extractor");
  const auto& d = extractor->descriptor();
  if (d.id.empty() || d.script_listing.empty()) throw std::invalid_argument("extractor needs an id and a listing");
  if (find(d.id)) throw std::invalid_argument("duplicate extractor id '" + d.id + "'");
  extractors_.push_back(std::move(extractor));
}

const Extractor* ExtractorRegistry::find(std::string_view id) const noexcept {
  for (const auto& e : extractors_) {
    if (e->descriptor().id == id) return e.get();
  }
  return nullptr;
}

std::vector<ExtractorDescriptor> ExtractorRegistry::list() const {
  std::vector<ExtractorDescriptor> out;
  out.reserve(extractors_.size());
  for (const auto& e : extractors_) out.push_back(e->descriptor());
  return out;
}

Engine::Engine() : Engine(ExtractorRegistry::with_builtins(), Options{}) {}

Engine::Engine(ExtractorRegistry registry) : Engine(std::move(registry), Options{}) {}

Engine::Engine(ExtractorRegistry registry, Options options)
    : registry_(std::move(registry)), options_(std::move(options)) {
  for (const auto& name : options_.timezones) zones_.preload(name);
  if (!options_.clock) options_.clock = [] { return std::chrono::system_clock::now(); };
}

void Engine::preload_timezone(std::string_view name) { zones_.preload(name); }

ExtractionResult Engine::run_extractor(std::string_view extractor_id, ByteView archive_bytes,
                                       std::string_view archive_name, const json& settings,
                                       std::stop_token stop) const {
  const Extractor* extractor = registry_.find(extractor_id);
  if (!extractor) throw Error(ErrorCode::UnknownExtractor, "unknown extractor '" + std::string(extractor_id) + "'");
  if (archive_bytes.empty()) {
    throw Error(ErrorCode::ArchiveRejected, "The selected file is empty. Please select the file you downloaded.");
  }

  const SandboxContext context{zones_, std::move(stop)};
  context.checkpoint();
  ExtractionResult result;
  try {
    // The opened archive and every parsed record live only in this scope.
    const DdpArchive archive = open_archive(archive_bytes, archive_name);
    context.checkpoint();
    result = extractor->extract(archive, settings, context);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::MalformedArchive:
      case ErrorCode::EmptyArchive:
      case ErrorCode::NoSemanticHistory:
      case ErrorCode::NoBrowserHistory:
      case ErrorCode::MalformedJson:
        throw Error(ErrorCode::ArchiveRejected, participant_message(e));
      default:
        throw;
    }
  }
  result.extractor = extractor->descriptor();
  result.produced_at = format_utc(options_.clock());
  return result;
}

std::optional<DonationRecord> Engine::build_consent_payload(const ExtractionResult& result,
                                                            std::string_view project_id,
                                                            std::string_view participant_key,
                                                            const ConsentDecision& decision,
                                                            const PayloadEncoder& encoder) const {
  if (decision.decision() == Decision::Decline) return std::nullopt;
  if (participant_key.empty()) {
    throw Error(ErrorCode::MissingParticipantKey, "a participant key issued by the researcher is required");
  }
  DonationRecord record;
  record.project_id = std::string(project_id);
  record.participant_key = std::string(participant_key);
  record.extractor_id = result.extractor.id;
  record.extractor_version = result.extractor.version;
  record.payload = encoder.apply(canonical_json(result));
  record.payload_encoding = encoder.name;
  record.client_timestamp_utc = format_utc(decision.decided_at());
  return record;
}

}  // namespace portkit
