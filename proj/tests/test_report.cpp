#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "mtwist/report.hpp"

using namespace mtwist;

namespace {

std::filesystem::path scratch_dir(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("json round trip") {
  for (auto [p, f] : {std::pair{3ull, 1ull}, {3ull, 12ull}, {7ull, 5ull}}) {
    const CensusReport r = make_report(p, f);
    const auto j = to_json(r);
    CHECK(j["map_count"].is_string());
    CHECK(j["divisors"][0].is_string());
    CHECK(census_from_json(nlohmann::json::parse(j.dump())) == r);
  }
  auto bad = to_json(make_report(3, 1));
  bad["schema_version"] = kCacheSchemaVersion + 1;
  CHECK_THROWS_AS(census_from_json(nlohmann::json::parse(bad.dump())), std::invalid_argument);
}

TEST_CASE("cache round trip") {
  const auto dir = scratch_dir("mtwist_test_cache");
  CHECK_FALSE(cache_load(dir, 3, 2).has_value());
  const CensusReport fresh = cached_report(dir, 3, 2);
  REQUIRE(std::filesystem::exists(cache_path(dir, 3, 2)));
  const auto loaded = cache_load(dir, 3, 2);
  REQUIRE(loaded.has_value());
  CHECK(*loaded == fresh);
  CHECK(*loaded == make_report(3, 2));
  { std::ofstream(cache_path(dir, 3, 2)) << "{\"schema_version\": 0}"; }
  CHECK_FALSE(cache_load(dir, 3, 2).has_value());
  CHECK(cached_report(dir, 3, 2) == fresh);
  std::filesystem::remove_all(dir);
}

TEST_CASE("text and csv") {
  const CensusReport r = make_report(3, 1);
  CHECK(to_text(r, false).find("map_count 7\n") != std::string::npos);
  CHECK(to_text(r, false).find("reflexible_count") == std::string::npos);
  CHECK(to_text(r, true).find("reflexible_count 7\n") != std::string::npos);
  CHECK(csv_header(false).rfind("p,f,", 0) == 0);
  CHECK(to_csv_row(r, true).back() == '\n');
}

TEST_CASE("verification rendering") {
  Verification v;
  v.q = 5;
  v.level = "orbits";
  v.add("maps", BigInt(69), BigInt(69));
  CHECK(v.pass());
  v.add("flag", true, false);
  CHECK_FALSE(v.pass());
  CHECK(to_text(v).find("FAIL flag") != std::string::npos);
  CHECK(to_json(v)["checks"][0]["expected"] == "69");
  CHECK(to_csv(v).rfind("q,level,check,expected,actual,pass\n", 0) == 0);
}
