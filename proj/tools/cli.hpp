#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace portkit::cli {

// Process exit codes. These are part of the command line contract.
enum Exit : int {
  kOk = 0,
  kIoError = 1,         // unreadable input, unwritable output, bad server config, bind failure
  kUsage = 2,           // bad or missing flags
  kArchiveRejected = 3, // the selected package does not fit the extractor
  kNetworkError = 4,    // donation server unreachable
  kServerRejected = 5,  // donation server refused the request
};

/// Runs `port-kit` with `args` (program name excluded). Reads consent
/// answers from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace portkit::cli
