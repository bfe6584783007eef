#include "portkit/client.hpp"

#include <httplib.h>

#include "portkit/error.hpp"

namespace portkit {

using nlohmann::json;

struct DonationClient::Impl {
  std::string base_url;
  httplib::Client http;

  explicit Impl(const std::string& url) : base_url(url), http(url) {
    http.set_connection_timeout(5);
    http.set_read_timeout(30);
  }

  [[noreturn]] void transport_failure(const httplib::Result& res) const {
    throw Error(ErrorCode::NetworkError,
                "cannot reach donation server at " + base_url + ": " + httplib::to_string(res.error()));
  }

  json expect(const httplib::Result& res, int ok_status) const {
    if (!res) transport_failure(res);
    json body = json::parse(res->body, nullptr, /*allow_exceptions=*/false);
    if (res->status == ok_status && !body.is_discarded()) return body;
    ErrorCode code = ErrorCode::InvalidRequest;
    std::string message = "server answered HTTP " + std::to_string(res->status);
    if (!body.is_discarded() && body.is_object()) {
      if (auto parsed = error_code_from_string(body.value("error", ""))) code = *parsed;
      message = body.value("message", message);
    }
    throw Error(code, message);
  }
};

DonationClient::DonationClient(const std::string& base_url) : impl_(std::make_unique<Impl>(base_url)) {
  if (!impl_->http.is_valid()) throw Error(ErrorCode::NetworkError, "invalid server url '" + base_url + "'");
}

DonationClient::~DonationClient() = default;
DonationClient::DonationClient(DonationClient&&) noexcept = default;
DonationClient& DonationClient::operator=(DonationClient&&) noexcept = default;

bool DonationClient::healthy() {
  auto res = impl_->http.Get("/healthz");
  return res && res->status == 200;
}

Project DonationClient::get_project(const std::string& project_id) {
  return project_from_json(impl_->expect(impl_->http.Get("/api/projects/" + project_id), 200));
}

std::string DonationClient::submit(const DonationRecord& record) {
  auto res = impl_->http.Post("/api/projects/" + record.project_id + "/donations", to_json(record).dump(),
                              "application/json");
  return impl_->expect(res, 201).at("donation_id").get<std::string>();
}

std::vector<DonationRecord> DonationClient::list_donations(const std::string& project_id,
                                                           const std::string& researcher_token) {
  httplib::Headers headers{{"Authorization", "Bearer " + researcher_token}};
  auto body = impl_->expect(impl_->http.Get("/api/projects/" + project_id + "/donations", headers), 200);
  std::vector<DonationRecord> out;
  for (const auto& r : body.at("donations")) out.push_back(donation_from_json(r));
  return out;
}

}  // namespace portkit
