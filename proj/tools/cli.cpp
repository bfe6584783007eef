#include "cli.hpp"

#include <pthread.h>
#include <signal.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "portkit/browser_history.hpp"
#include "portkit/client.hpp"
#include "portkit/engine.hpp"
#include "portkit/error.hpp"
#include "portkit/server.hpp"
#include "portkit/simulator.hpp"

namespace portkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Bytes read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read '" + path.string() + "'");
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoFailure("error while reading '" + path.string() + "'");
  return data;
}

void write_bytes(const fs::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write '" + path.string() + "'");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.close();
  if (!out) throw IoFailure("error while writing '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Plain-text rendering of an ExtractionResult

std::string cell_text(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", std::get<double>(cell));
  return buf;
}

void print_wrapped(std::ostream& out, const std::string& text, std::size_t width = 78) {
  std::istringstream words(text);
  std::string word;
  std::size_t column = 0;
  while (words >> word) {
    if (column > 0 && column + 1 + word.size() > width) {
      out << '\n';
      column = 0;
    } else if (column > 0) {
      out << ' ';
      ++column;
    }
    out << word;
    column += word.size();
  }
  out << '\n';
}

void print_table(std::ostream& out, const TableBlock& table) {
  std::vector<std::vector<std::string>> text;
  std::vector<std::size_t> width(table.columns.size());
  for (std::size_t c = 0; c < table.columns.size(); ++c) width[c] = table.columns[c].size();
  for (const auto& row : table.rows) {
    auto& line = text.emplace_back();
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      line.push_back(cell_text(row[c]));
      width[c] = std::max(width[c], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string>& cells, const std::vector<Cell>* source) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const bool numeric = source && !std::holds_alternative<std::string>((*source)[c]);
      const auto pad = std::string(width[c] - cells[c].size(), ' ');
      if (c) out << "  ";
      out << (numeric ? pad + cells[c] : cells[c] + (c + 1 < cells.size() ? pad : ""));
    }
    out << '\n';
  };
  if (!table.title.empty()) out << table.title << '\n';
  emit(table.columns, nullptr);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out << std::string(total + 2 * (width.empty() ? 0 : width.size() - 1), '-') << '\n';
  for (std::size_t r = 0; r < text.size(); ++r) emit(text[r], &table.rows[r]);
}

void print_result(std::ostream& out, const ExtractionResult& result) {
  out << result.extractor.display_name << " (" << result.extractor.id << " " << result.extractor.version << ")\n\n";
  for (const auto& block : result.blocks) {
    if (const auto* t = std::get_if<TextBlock>(&block)) {
      print_wrapped(out, t->text);
    } else {
      print_table(out, std::get<TableBlock>(block));
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Shared extractor flags

struct ExtractFlags {
  fs::path ddp;
  std::string timezone;
  std::string curfew_start;
  std::string curfew_end;
  fs::path news_list;
};

void add_browser_flags(CLI::App& cmd, ExtractFlags& f) {
  cmd.add_option("--timezone", f.timezone, "IANA zone used for dates and times of day (default Europe/Amsterdam)");
  cmd.add_option("--curfew-start", f.curfew_start, "First curfew day, YYYY-MM-DD (default 2021-01-23)");
  cmd.add_option("--curfew-end", f.curfew_end, "Last curfew day, YYYY-MM-DD (default 2021-04-28)");
  cmd.add_option("--news-list", f.news_list, "File with one news domain per line");
}

json browser_settings(const ExtractFlags& f) {
  json settings = json::object();
  if (!f.timezone.empty()) settings["timezone"] = f.timezone;
  if (!f.curfew_start.empty()) settings["curfew_start"] = f.curfew_start;
  if (!f.curfew_end.empty()) settings["curfew_end"] = f.curfew_end;
  if (!f.news_list.empty()) {
    const auto bytes = read_bytes(f.news_list);
    const auto list = browser::NewsSiteList::parse(as_text(bytes));
    settings["news_sites"] = std::vector<std::string>(list.domains().begin(), list.domains().end());
  }
  return settings;
}

Engine engine_for(const std::string& timezone) {
  Engine::Options options;
  if (!timezone.empty() && std::find(options.timezones.begin(), options.timezones.end(), timezone) ==
                               options.timezones.end()) {
    options.timezones.push_back(timezone);
  }
  return Engine(ExtractorRegistry::with_builtins(), options);
}

bool is_settings_error(ErrorCode code) {
  return code == ErrorCode::InvalidConfig || code == ErrorCode::InvalidTimezone || code == ErrorCode::InvalidNewsList;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateFlags {
  std::uint64_t seed = 42;
  fs::path out = ".";
  std::size_t visits = 1000;
  double news_base = 0.5;
  double news_uplift = 0.15;
  std::size_t visits_per_year = 120;
};

/// `dir/` or an existing directory: default file name inside it.
fs::path archive_target(const fs::path& out, const std::string& default_name) {
  const auto text = out.string();
  if (text.ends_with('/') || fs::is_directory(out)) {
    fs::create_directories(out);
    return out / default_name;
  }
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  return out;
}

fs::path sidecar_for(const fs::path& archive) {
  auto p = archive;
  p.replace_extension(".truth.json");
  return p;
}

int cmd_simulate(const std::string& kind, const SimulateFlags& f, std::ostream& out) {
  if (kind == "gslh") {
    sim::GslhSimConfig cfg;
    cfg.seed = f.seed;
    cfg.visits_per_year = f.visits_per_year;
    const auto sim = sim::simulate_gslh(cfg);
    const auto target = archive_target(f.out, "takeout-location-history.zip");
    const auto zip = write_zip(sim.archive);
    write_bytes(target, as_text(zip));
    write_bytes(sidecar_for(target), sim::to_json(sim.truth).dump(2) + "\n");
    out << "wrote " << target.string() << " (" << sim.archive.size() << " month files) and "
        << sidecar_for(target).string() << '\n';
    for (const auto& y : sim.truth.years) {
      char line[160];
      std::snprintf(line, sizeof line, "  %d: %.1f%% time at places, %lld distinct places, %.1f km\n", y.year,
                    100.0 * y.place_time_fraction, static_cast<long long>(y.distinct_places), y.km);
      out << line;
    }
    return kOk;
  }
  sim::BrowserSimConfig cfg;
  cfg.seed = f.seed;
  cfg.n_visits = f.visits;
  cfg.news_fraction_base = f.news_base;
  cfg.news_uplift = f.news_uplift;
  const auto sim = sim::simulate_browser(cfg);
  const auto target = archive_target(f.out, "takeout-browser-history.zip");
  write_bytes(target, as_text(write_zip(sim.archive)));
  write_bytes(sidecar_for(target), sim::to_json(sim.truth).dump(2) + "\n");
  out << "wrote " << target.string() << " (" << sim.visits.size() << " visits) and " << sidecar_for(target).string()
      << '\n';
  for (std::size_t p = 0; p < 3; ++p) {
    out << "  " << browser::to_string(static_cast<browser::Period>(p)) << ": " << sim.truth.visits_per_period[p]
        << " visits, " << sim.truth.news_per_period[p] << " on news sites\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// extract

int cmd_extract(const std::string& extractor, const ExtractFlags& f, const std::string& format, std::ostream& out,
                std::ostream& err) {
  const json settings = extractor == "browser-history" ? browser_settings(f) : json::object();
  const auto bytes = read_bytes(f.ddp);
  const auto engine = engine_for(f.timezone);
  const auto result = engine.run_extractor(extractor, bytes, f.ddp.filename().string(), settings);
  if (format == "json") {
    out << canonical_json(result) << '\n';
  } else {
    print_result(out, result);
  }
  (void)err;
  return kOk;
}

// ---------------------------------------------------------------------------
// serve

int cmd_serve(const fs::path& config_path, std::optional<int> port, std::optional<std::string> host,
              std::ostream& out, std::ostream& err) {
  server::ServerConfig config;
  try {
    config = server::ServerConfig::load(config_path, ExtractorRegistry::with_builtins());
  } catch (const Error& e) {
    err << "port-kit: " << e.what() << '\n';
    return kIoError;
  }
  if (port) config.port = *port;
  if (host) config.host = *host;

  // Signals are taken by a dedicated thread; every other thread (including
  // the HTTP workers) inherits the blocked mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  server::DonationService service(config);
  server::HttpServer http(service);
  const int bound = http.bind(config.host, config.port);
  if (bound < 0) {
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    err << "port-kit: cannot listen on " << config.host << ":" << config.port << '\n';
    return kIoError;
  }
  out << "listening on http://" << config.host << ":" << bound << " (data in " << config.data_dir.string() << ")"
      << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    http.stop();
  });
  http.listen_after_bind();
  pthread_kill(waiter.native_handle(), SIGTERM);  // no-op for the waiter if it already returned
  waiter.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  return kOk;
}

// ---------------------------------------------------------------------------
// donate

struct DonateFlags {
  std::string server;
  std::string project;
  std::string participant_key;
  std::string extractor;
  bool yes = false;
  ExtractFlags extract;
};

bool ask_consent(std::istream& in, std::ostream& out) {
  out << "Donate the data shown above to this project? Type 'yes' to donate, anything else declines: "
      << std::flush;
  std::string answer;
  if (!std::getline(in, answer)) {
    out << '\n';
    return false;
  }
  std::transform(answer.begin(), answer.end(), answer.begin(), [](unsigned char c) { return std::tolower(c); });
  return answer == "yes" || answer == "y";
}

int cmd_donate(const DonateFlags& f, std::istream& in, std::ostream& out, std::ostream& err) {
  DonationClient client(f.server);
  const auto project = client.get_project(f.project);
  if (!f.extractor.empty() && f.extractor != project.extractor_id) {
    err << "port-kit: project '" << project.project_id << "' accepts donations from extractor '"
        << project.extractor_id << "', not '" << f.extractor << "'\n";
    return kServerRejected;
  }
  const json settings = project.extractor_id == "browser-history" ? browser_settings(f.extract) : json::object();
  const auto bytes = read_bytes(f.extract.ddp);

  const auto engine = engine_for(f.extract.timezone);
  const auto result = engine.run_extractor(project.extractor_id, bytes, f.extract.ddp.filename().string(), settings);

  out << "Project: " << project.title << "\n";
  print_wrapped(out, project.description);
  if (!project.storage_note.empty()) print_wrapped(out, project.storage_note);
  out << '\n';
  print_result(out, result);

  const bool consent = f.yes || ask_consent(in, out);
  const auto record = engine.build_consent_payload(result, project.project_id, f.participant_key,
                                                   ConsentDecision::now(consent ? Decision::Donate : Decision::Decline));
  if (!record) {
    out << "Declined. Nothing was sent.\n";
    return kOk;
  }
  const auto id = client.submit(*record);
  out << "donation_id: " << id << '\n';
  return kOk;
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ArchiveRejected: return kArchiveRejected;
    case ErrorCode::NetworkError: return kNetworkError;
    case ErrorCode::UnknownProject:
    case ErrorCode::ExtractorMismatch:
    case ErrorCode::InvalidPayload:
    case ErrorCode::InvalidRequest:
    case ErrorCode::StorageFailure:
    case ErrorCode::Unauthorized:
    case ErrorCode::RateLimited: return kServerRejected;
    case ErrorCode::MissingParticipantKey:
    case ErrorCode::UnknownExtractor: return kUsage;
    default: return is_settings_error(code) ? kUsage : kIoError;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"port-kit: simulate Takeout packages, extract summaries locally and collect donations"};
  app.name("port-kit");
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Write a synthetic Takeout archive and its .truth.json");
  simulate->require_subcommand(1);
  SimulateFlags sim_flags;
  std::string sim_kind;
  for (const char* kind : {"gslh", "browser"}) {
    auto* sub = simulate->add_subcommand(kind, std::string(kind) == "gslh" ? "Semantic Location History, 2019-2021"
                                                                           : "Chrome BrowserHistory.json");
    sub->add_option("--seed", sim_flags.seed, "RNG seed (mt19937_64)");
    sub->add_option("--out", sim_flags.out, "Output .zip path or directory (default: current directory)");
    if (std::string(kind) == "gslh") {
      sub->add_option("--visits-per-year", sim_flags.visits_per_year, "Place visits per year")
          ->check(CLI::Range(12, 100000));
    } else {
      sub->add_option("--visits", sim_flags.visits, "Number of visits")->check(CLI::Range(0, 10000000));
      sub->add_option("--news-base", sim_flags.news_base, "News share before and after the curfew")
          ->check(CLI::Range(0.0, 1.0));
      sub->add_option("--news-uplift", sim_flags.news_uplift, "Relative news uplift during the curfew");
    }
    sub->callback([&sim_kind, kind] { sim_kind = kind; });
  }

  // extract
  auto* extract = app.add_subcommand("extract", "Run an extractor on a package; nothing leaves this machine");
  extract->require_subcommand(1);
  ExtractFlags extract_flags;
  std::string extract_id;
  std::string format = "table";
  for (const char* id : {"gslh", "browser-history"}) {
    auto* sub = extract->add_subcommand(id, std::string(id) == "gslh" ? "Location history summary per year"
                                                                      : "Browser visit profile around the curfew");
    sub->add_option("--ddp", extract_flags.ddp, "Takeout .zip or .json file")->required();
    sub->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));
    if (std::string(id) == "browser-history") add_browser_flags(*sub, extract_flags);
    sub->callback([&extract_id, id] { extract_id = id; });
  }

  // serve
  auto* serve = app.add_subcommand("serve", "Run the donation server");
  fs::path config_path;
  std::optional<int> serve_port;
  std::optional<std::string> serve_host;
  serve->add_option("--config", config_path, "Server config JSON")->required();
  serve->add_option("--port", serve_port, "Override the configured port (0 picks a free port)")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--host", serve_host, "Override the configured listen address");

  // donate
  auto* donate = app.add_subcommand("donate", "Extract locally, review, and donate to a project");
  DonateFlags donate_flags;
  donate->add_option("--server", donate_flags.server, "Server base URL, e.g. http://127.0.0.1:8080")->required();
  donate->add_option("--project", donate_flags.project, "Project id")->required();
  donate->add_option("--participant-key", donate_flags.participant_key, "Key issued by the researcher")->required();
  donate->add_option("--ddp", donate_flags.extract.ddp, "Takeout .zip or .json file")->required();
  donate->add_option("--extractor", donate_flags.extractor, "Expected extractor id (defaults to the project's)");
  donate->add_flag("--yes", donate_flags.yes, "Consent to donate without the interactive prompt");
  add_browser_flags(*donate, donate_flags.extract);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }
  if (donate_flags.participant_key.empty() && donate->parsed()) {
    err << "port-kit: --participant-key must not be empty\n";
    return kUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim_kind, sim_flags, out);
    if (extract->parsed()) return cmd_extract(extract_id, extract_flags, format, out, err);
    if (serve->parsed()) return cmd_serve(config_path, serve_port, serve_host, out, err);
    if (donate->parsed()) return cmd_donate(donate_flags, in, out, err);
  } catch (const Error& e) {
    err << "port-kit: " << e.what() << " [" << to_string(e.code()) << "]\n";
    return exit_for(e.code());
  } catch (const IoFailure& e) {
    err << "port-kit: " << e.what() << '\n';
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "port-kit: " << e.what() << '\n';
    return kIoError;
  }
  return kUsage;
}

}  // namespace portkit::cli
