#include "portkit/archive.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>

#include "portkit/error.hpp"

namespace portkit {

namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralHeaderSig = 0x02014b50;
constexpr std::uint32_t kEndOfCentralDirSig = 0x06054b50;
constexpr std::size_t kLocalHeaderSize = 30;
constexpr std::size_t kCentralHeaderSize = 46;
constexpr std::size_t kEndOfCentralDirSize = 22;
constexpr std::uint16_t kMethodStored = 0;
constexpr std::uint16_t kMethodDeflate = 8;
constexpr std::uint16_t kFlagEncrypted = 0x0001;
constexpr std::uint16_t kFlagUtf8 = 0x0800;
constexpr std::uint16_t kDosDate1980 = (0 << 9) | (1 << 5) | 1;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedArchive, "malformed ZIP archive: " + what);
}

class Reader {
 public:
  explicit Reader(ByteView bytes) : bytes_(bytes) {}

  [[nodiscard]] std::uint16_t u16(std::size_t at) const {
    require(at, 2);
    return static_cast<std::uint16_t>(bytes_[at] | (bytes_[at + 1] << 8));
  }
  [[nodiscard]] std::uint32_t u32(std::size_t at) const {
    require(at, 4);
    return static_cast<std::uint32_t>(bytes_[at]) | (static_cast<std::uint32_t>(bytes_[at + 1]) << 8) |
           (static_cast<std::uint32_t>(bytes_[at + 2]) << 16) |
           (static_cast<std::uint32_t>(bytes_[at + 3]) << 24);
  }
  [[nodiscard]] ByteView slice(std::size_t at, std::size_t len) const {
    require(at, len);
    return bytes_.subspan(at, len);
  }
  [[nodiscard]] std::size_t size() const noexcept { return bytes_.size(); }

 private:
  void require(std::size_t at, std::size_t len) const {
    if (at > bytes_.size() || len > bytes_.size() - at) malformed("truncated structure");
  }
  ByteView bytes_;
};

class Writer {
 public:
  void u16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v & 0xff));
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int shift = 0; shift < 32; shift += 8) out_.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
  }
  void raw(ByteView bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }
  [[nodiscard]] std::size_t offset() const noexcept { return out_.size(); }
  Bytes take() && { return std::move(out_); }

 private:
  Bytes out_;
};

std::uint32_t crc_of(ByteView data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  std::size_t done = 0;
  while (done < data.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(data.size() - done, std::numeric_limits<uInt>::max()));
    crc = crc32(crc, data.data() + done, chunk);
    done += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

Bytes inflate_raw(ByteView compressed, std::size_t expected_size) {
  Bytes out(expected_size);
  z_stream stream{};
  if (inflateInit2(&stream, -MAX_WBITS) != Z_OK) malformed("inflate init failed");
  stream.next_in = const_cast<Bytef*>(compressed.data());
  stream.avail_in = static_cast<uInt>(compressed.size());
  stream.next_out = out.data();
  stream.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&stream, Z_FINISH);
  const auto produced = stream.total_out;
  inflateEnd(&stream);
  if (rc != Z_STREAM_END || produced != expected_size) malformed("corrupt deflate stream");
  return out;
}

Bytes deflate_raw(ByteView data) {
  z_stream stream{};
  if (deflateInit2(&stream, Z_DEFAULT_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error(ErrorCode::MalformedArchive, "deflate init failed");
  }
  Bytes out(deflateBound(&stream, static_cast<uLong>(data.size())));
  stream.next_in = const_cast<Bytef*>(data.data());
  stream.avail_in = static_cast<uInt>(data.size());
  stream.next_out = out.data();
  stream.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&stream, Z_FINISH);
  out.resize(stream.total_out);
  deflateEnd(&stream);
  if (rc != Z_STREAM_END) throw Error(ErrorCode::MalformedArchive, "deflate failed");
  return out;
}

bool looks_like_zip(ByteView bytes) {
  if (bytes.size() < 4) return false;
  const Reader r(bytes);
  const auto sig = r.u32(0);
  return sig == kLocalHeaderSig || sig == kEndOfCentralDirSig;
}

bool ends_with_json(std::string_view name) {
  constexpr std::string_view ext = ".json";
  if (name.size() < ext.size()) return false;
  auto tail = name.substr(name.size() - ext.size());
  return std::equal(tail.begin(), tail.end(), ext.begin(),
                    [](char a, char b) { return std::tolower(static_cast<unsigned char>(a)) == b; });
}

std::size_t find_end_of_central_dir(const Reader& r) {
  if (r.size() < kEndOfCentralDirSize) malformed("too short for end of central directory");
  const std::size_t last = r.size() - kEndOfCentralDirSize;
  const std::size_t first = last > 0xffff ? last - 0xffff : 0;
  for (std::size_t at = last + 1; at-- > first;) {
    if (r.u32(at) == kEndOfCentralDirSig) return at;
  }
  malformed("end of central directory not found");
}

DdpArchive read_zip(ByteView bytes, std::string_view name) {
  const Reader r(bytes);
  const std::size_t eocd = find_end_of_central_dir(r);
  const std::uint16_t count = r.u16(eocd + 10);
  const std::uint32_t cd_size = r.u32(eocd + 12);
  const std::uint32_t cd_offset = r.u32(eocd + 16);
  if (count == 0xffff || cd_offset == 0xffffffffU) malformed("ZIP64 archives are not supported");
  if (static_cast<std::size_t>(cd_offset) + cd_size > eocd) malformed("central directory out of range");

  DdpArchive archive{std::string(name)};
  std::size_t at = cd_offset;
  for (std::uint16_t i = 0; i < count; ++i) {
    if (r.u32(at) != kCentralHeaderSig) malformed("bad central directory header");
    const std::uint16_t flags = r.u16(at + 8);
    const std::uint16_t method = r.u16(at + 10);
    const std::uint32_t crc = r.u32(at + 16);
    const std::uint32_t csize = r.u32(at + 20);
    const std::uint32_t usize = r.u32(at + 24);
    const std::uint16_t name_len = r.u16(at + 28);
    const std::uint16_t extra_len = r.u16(at + 30);
    const std::uint16_t comment_len = r.u16(at + 32);
    const std::uint32_t local_offset = r.u32(at + 42);
    const auto raw_name = as_text(r.slice(at + kCentralHeaderSize, name_len));
    at += kCentralHeaderSize + name_len + extra_len + comment_len;

    if (csize == 0xffffffffU || usize == 0xffffffffU || local_offset == 0xffffffffU) {
      malformed("ZIP64 archives are not supported");
    }
    if (!raw_name.empty() && (raw_name.back() == '/' || raw_name.back() == '\\')) continue;
    if (flags & kFlagEncrypted) malformed("encrypted entry '" + std::string(raw_name) + "'");

    if (r.u32(local_offset) != kLocalHeaderSig) malformed("bad local header");
    const std::size_t data_at =
        local_offset + kLocalHeaderSize + r.u16(local_offset + 26) + r.u16(local_offset + 28);
    const ByteView payload = r.slice(data_at, csize);

    Bytes data;
    if (method == kMethodStored) {
      if (csize != usize) malformed("stored entry size mismatch");
      data.assign(payload.begin(), payload.end());
    } else if (method == kMethodDeflate) {
      data = inflate_raw(payload, usize);
    } else {
      malformed("unsupported compression method " + std::to_string(method));
    }
    if (crc_of(data) != crc) malformed("CRC mismatch in '" + std::string(raw_name) + "'");

    std::string path = normalize_entry_path(raw_name);
    if (path.empty()) continue;
    archive.add(std::move(path), std::move(data));
  }
  return archive;
}

}  // namespace

void DdpArchive::add(std::string path, Bytes data) {
  if (path.empty()) throw Error(ErrorCode::MalformedArchive, "empty entry path");
  if (find(path) != nullptr) throw Error(ErrorCode::MalformedArchive, "duplicate entry path '" + path + "'");
  entries_.push_back(Entry{std::move(path), std::move(data)});
}

const DdpArchive::Entry* DdpArchive::find(std::string_view path) const noexcept {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.path == path; });
  return it == entries_.end() ? nullptr : &*it;
}

std::string normalize_entry_path(std::string_view raw) {
  std::string out;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    std::size_t next = raw.find_first_of("/\\", pos);
    if (next == std::string_view::npos) next = raw.size();
    const auto segment = raw.substr(pos, next - pos);
    if (!segment.empty() && segment != ".") {
      if (!out.empty()) out.push_back('/');
      out.append(segment);
    }
    pos = next + 1;
  }
  return out;
}

DdpArchive open_archive(ByteView bytes, std::string_view name) {
  DdpArchive archive;
  if (looks_like_zip(bytes)) {
    archive = read_zip(bytes, name);
  } else if (ends_with_json(name)) {
    archive = DdpArchive{std::string(name)};
    const auto normalized = normalize_entry_path(name);
    const auto slash = normalized.rfind('/');
    archive.add(slash == std::string::npos ? normalized : normalized.substr(slash + 1),
                Bytes(bytes.begin(), bytes.end()));
  } else {
    throw Error(ErrorCode::MalformedArchive, "'" + std::string(name) + "' is neither a ZIP archive nor a .json file");
  }
  if (archive.empty()) throw Error(ErrorCode::EmptyArchive, "archive '" + std::string(name) + "' contains no files");
  return archive;
}

Bytes write_zip(const DdpArchive& archive) {
  struct CentralRecord {
    std::string_view path;
    std::uint16_t method;
    std::uint32_t crc;
    std::uint32_t csize;
    std::uint32_t usize;
    std::uint32_t offset;
  };
  Writer w;
  std::vector<CentralRecord> central;
  central.reserve(archive.size());

  for (const auto& entry : archive.entries()) {
    const Bytes deflated = deflate_raw(entry.data);
    const bool store = deflated.size() >= entry.data.size();
    const ByteView body = store ? ByteView(entry.data) : ByteView(deflated);
    CentralRecord rec{entry.path,
                      store ? kMethodStored : kMethodDeflate,
                      crc_of(entry.data),
                      static_cast<std::uint32_t>(body.size()),
                      static_cast<std::uint32_t>(entry.data.size()),
                      static_cast<std::uint32_t>(w.offset())};
    w.u32(kLocalHeaderSig);
    w.u16(20);
    w.u16(kFlagUtf8);
    w.u16(rec.method);
    w.u16(0);
    w.u16(kDosDate1980);
    w.u32(rec.crc);
    w.u32(rec.csize);
    w.u32(rec.usize);
    w.u16(static_cast<std::uint16_t>(entry.path.size()));
    w.u16(0);
    w.raw(as_bytes(entry.path));
    w.raw(body);
    central.push_back(rec);
  }

  const auto cd_offset = static_cast<std::uint32_t>(w.offset());
  for (const auto& rec : central) {
    w.u32(kCentralHeaderSig);
    w.u16(20);
    w.u16(20);
    w.u16(kFlagUtf8);
    w.u16(rec.method);
    w.u16(0);
    w.u16(kDosDate1980);
    w.u32(rec.crc);
    w.u32(rec.csize);
    w.u32(rec.usize);
    w.u16(static_cast<std::uint16_t>(rec.path.size()));
    w.u16(0);
    w.u16(0);
    w.u16(0);
    w.u16(0);
    w.u32(0);
    w.u32(rec.offset);
    w.raw(as_bytes(rec.path));
  }
  const auto cd_size = static_cast<std::uint32_t>(w.offset() - cd_offset);
  w.u32(kEndOfCentralDirSig);
  w.u16(0);
  w.u16(0);
  w.u16(static_cast<std::uint16_t>(central.size()));
  w.u16(static_cast<std::uint16_t>(central.size()));
  w.u32(cd_size);
  w.u32(cd_offset);
  w.u16(0);
  return std::move(w).take();
}

}  // namespace portkit
