#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "portkit/archive.hpp"
#include "portkit/error.hpp"
#include "portkit/simulator.hpp"
#include "temp_dir.hpp"

using namespace portkit;
using portkit::testing::TempDir;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected portkit::Error");
  return ErrorCode::InvalidRequest;
}

}  // namespace

TEST_CASE("ZIP with the Chrome history entry opens to that single entry") {
  const auto zip = fixtures::zip_of({{"Takeout/Chrome/BrowserHistory.json", R"({"Browser History":[]})"}});
  const auto archive = open_archive(zip, "Takeout.zip");
  REQUIRE(archive.size() == 1);
  CHECK(archive.entries()[0].path == "Takeout/Chrome/BrowserHistory.json");
  CHECK(as_text(archive.entries()[0].data) == R"({"Browser History":[]})");
  CHECK(archive.source_name() == "Takeout.zip");
}

TEST_CASE("a bare .json file becomes a single-entry archive") {
  const std::string text = R"({"Browser History":[]})";
  const auto archive = open_archive(as_bytes(text), "downloads/BrowserHistory.json");
  REQUIRE(archive.size() == 1);
  CHECK(archive.entries()[0].path == "BrowserHistory.json");
}

TEST_CASE("simulated GSLH archive lists 36 entries in the order an independent ZIP reader sees") {
  const auto sim = sim::simulate_gslh({});
  const Bytes zip = write_zip(sim.archive);
  const auto archive = open_archive(zip, "gslh.zip");
  REQUIRE(archive.size() == 36);
  CHECK(archive.entries().front().path ==
        "Takeout/Location History/Semantic Location History/2019/2019_JANUARY.json");
  CHECK(archive.entries().back().path ==
        "Takeout/Location History/Semantic Location History/2021/2021_DECEMBER.json");

  if (!portkit::testing::have_python()) {
    MESSAGE("python3 unavailable; skipping the independent listing oracle");
    return;
  }
  TempDir dir;
  portkit::testing::write_file(dir / "gslh.zip", zip);
  int status = 0;
  const auto listing = portkit::testing::run_capture(
      "python3 -c \"import sys,zipfile; [print(i.filename) for i in zipfile.ZipFile(sys.argv[1]).infolist()]\" " +
          (dir / "gslh.zip").string(),
      status);
  REQUIRE(status == 0);
  std::istringstream lines(listing);
  std::string line;
  std::size_t i = 0;
  while (std::getline(lines, line)) {
    REQUIRE(i < archive.size());
    CHECK(line == archive.entries()[i].path);
    ++i;
  }
  CHECK(i == 36);
}

TEST_CASE("archives written by Python's zipfile (deflate, directories) are readable") {
  if (!portkit::testing::have_python()) return;
  TempDir dir;
  const auto out = dir / "py.zip";
  int status = 0;
  portkit::testing::run_capture(
      "python3 -c \"import sys,zipfile; z=zipfile.ZipFile(sys.argv[1],'w',zipfile.ZIP_DEFLATED); "
      "z.writestr('Takeout/',''); z.writestr('Takeout/Chrome/',''); "
      "z.writestr('Takeout/Chrome/BrowserHistory.json','{\\\"Browser History\\\": []}' * 1); "
      "z.writestr('Takeout/archive_browser.html','<html>'+'x'*5000+'</html>'); z.close()\" " +
          out.string(),
      status);
  REQUIRE(status == 0);
  const auto archive = open_archive(portkit::testing::read_file(out), "py.zip");
  REQUIRE(archive.size() == 2);  // directory entries dropped
  CHECK(archive.entries()[0].path == "Takeout/Chrome/BrowserHistory.json");
  CHECK(as_text(archive.entries()[1].data).size() == 5013);
}

TEST_CASE("write_zip/open_archive round-trips arbitrary entries") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 25; ++round) {
    DdpArchive original{"r.zip"};
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      Bytes data(rng() % 3000);
      const bool compressible = rng() % 2;
      for (auto& b : data) b = static_cast<std::uint8_t>(compressible ? 'a' + rng() % 3 : rng());
      original.add("dir" + std::to_string(round) + "/file" + std::to_string(i) + ".bin", std::move(data));
    }
    const auto reopened = open_archive(write_zip(original), "r.zip");
    REQUIRE(reopened.size() == original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
      CHECK(reopened.entries()[i].path == original.entries()[i].path);
      CHECK(reopened.entries()[i].data == original.entries()[i].data);
    }
  }
}

TEST_CASE("write_zip output is a pure function of the entries") {
  const auto a = fixtures::zip_of({{"a.json", "{}"}, {"b/c.json", std::string(1000, 'x')}});
  const auto b = fixtures::zip_of({{"a.json", "{}"}, {"b/c.json", std::string(1000, 'x')}});
  CHECK(a == b);
}

TEST_CASE("rejections") {
  SUBCASE("bytes that are neither ZIP nor named .json") {
    const std::string junk = "this is not an archive";
    CHECK(code_of([&] { (void)open_archive(as_bytes(junk), "takeout.zip"); }) == ErrorCode::MalformedArchive);
  }
  SUBCASE("a ZIP without entries") {
    const Bytes empty = write_zip(DdpArchive{"e.zip"});
    CHECK(code_of([&] { (void)open_archive(empty, "e.zip"); }) == ErrorCode::EmptyArchive);
  }
  SUBCASE("a ZIP holding only directories") {
    DdpArchive dirs{"d.zip"};
    dirs.add("Takeout/", {});
    dirs.add("Takeout/Chrome/", {});
    CHECK(code_of([&] { (void)open_archive(write_zip(dirs), "d.zip"); }) == ErrorCode::EmptyArchive);
  }
  SUBCASE("corrupted payload fails the CRC check") {
    Bytes zip = fixtures::zip_of({{"x.txt", "hello hello hello"}});
    zip[30 + 5 + 2] ^= 0xff;  // inside the stored body after the 30-byte header and 5-byte name
    CHECK(code_of([&] { (void)open_archive(zip, "x.zip"); }) == ErrorCode::MalformedArchive);
  }
  SUBCASE("truncated archive") {
    Bytes zip = fixtures::zip_of({{"x.txt", "hello"}});
    zip.resize(zip.size() - 10);
    CHECK(code_of([&] { (void)open_archive(zip, "x.zip"); }) == ErrorCode::MalformedArchive);
  }
  SUBCASE("duplicate paths after normalization") {
    DdpArchive dup{"dup.zip"};
    dup.add("a/b.json", {});
    dup.add("a//b.json", {});  // distinct raw name, same normalized path
    CHECK(code_of([&] { (void)open_archive(write_zip(dup), "dup.zip"); }) == ErrorCode::MalformedArchive);
  }
}

TEST_CASE("entry path normalization") {
  CHECK(normalize_entry_path("/Takeout/Chrome/BrowserHistory.json") == "Takeout/Chrome/BrowserHistory.json");
  CHECK(normalize_entry_path("./Takeout//Chrome/./x.json") == "Takeout/Chrome/x.json");
  CHECK(normalize_entry_path("Takeout\\Chrome\\x.json") == "Takeout/Chrome/x.json");
  CHECK(normalize_entry_path("").empty());
}
