#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace portkit {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// An opened Data Download Package: file entries in archive order.
///
/// Entry paths are `/`-separated, carry no leading `/`, and are unique.
/// The archive owns copies of the entry bytes, so it never refers back to
/// whatever byte source it was opened from.
class DdpArchive {
 public:
  struct Entry {
    std::string path;
    Bytes data;
  };

  DdpArchive() = default;
  explicit DdpArchive(std::string source_name) : source_name_(std::move(source_name)) {}

  /// Appends an entry; throws MalformedArchive on empty or duplicate path.
  void add(std::string path, Bytes data);

  [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }
  [[nodiscard]] const std::string& source_name() const noexcept { return source_name_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

  [[nodiscard]] const Entry* find(std::string_view path) const noexcept;

 private:
  std::string source_name_;
  std::vector<Entry> entries_;
};

/// Canonical entry path: backslashes become `/`, leading `/` and `./`
/// segments and empty segments are removed.
std::string normalize_entry_path(std::string_view raw);

/// Opens a ZIP archive (stored or deflate) or, when `name` ends in `.json`,
/// a bare JSON file as a single-entry archive. Directory entries are dropped.
///
/// Throws MalformedArchive or EmptyArchive.
DdpArchive open_archive(ByteView bytes, std::string_view name);

/// Serializes the archive as a ZIP. Output is a pure function of the entries
/// (fixed timestamps, fixed compression level).
Bytes write_zip(const DdpArchive& archive);

inline ByteView as_bytes(std::string_view text) noexcept {
  return {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()};
}

inline std::string_view as_text(ByteView bytes) noexcept {
  return {reinterpret_cast<const char*>(bytes.data()), bytes.size()};
}

}  // namespace portkit
