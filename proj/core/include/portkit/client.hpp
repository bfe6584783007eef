#pragma once

#include <memory>
#include <string>
#include <vector>

#include "portkit/donation.hpp"

namespace portkit {

/// HTTP client for the donation server. Transport failures throw
/// Error(NetworkError); server rejections throw Error with the server's code.
class DonationClient {
 public:
  /// `base_url` like `http://127.0.0.1:8080`.
  explicit DonationClient(const std::string& base_url);
  ~DonationClient();
  DonationClient(DonationClient&&) noexcept;
  DonationClient& operator=(DonationClient&&) noexcept;

  bool healthy();
  Project get_project(const std::string& project_id);
  std::string submit(const DonationRecord& record);
  std::vector<DonationRecord> list_donations(const std::string& project_id, const std::string& researcher_token);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace portkit
