#pragma once

// Serialization of census reports and verification results (JSON, CSV,
// text) and the per-(p,f) on-disk result cache. Integers are written as
// decimal strings in JSON.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtwist/census.hpp"

namespace mtwist {

inline constexpr int kCacheSchemaVersion = 1;

nlohmann::ordered_json to_json(const CensusReport& r);
/// Throws std::invalid_argument on a missing field or a schema mismatch.
CensusReport census_from_json(const nlohmann::json& j);

std::filesystem::path cache_path(const std::filesystem::path& dir, std::uint64_t p, std::uint64_t f);
/// nullopt if the file is absent, unreadable or of another schema version.
std::optional<CensusReport> cache_load(const std::filesystem::path& dir, std::uint64_t p, std::uint64_t f);
void cache_store(const std::filesystem::path& dir, const CensusReport& r);
/// Loads from the cache when present, else computes (and stores when a directory is given).
CensusReport cached_report(const std::optional<std::filesystem::path>& dir, std::uint64_t p, std::uint64_t f);

std::string to_text(const CensusReport& r, bool reflexible);
std::string csv_header(bool reflexible);
std::string to_csv_row(const CensusReport& r, bool reflexible);

struct Check {
  std::string name, expected, actual;
  bool pass() const { return expected == actual; }
};

struct Verification {
  std::uint64_t q = 0;
  std::string level;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> notes;  // informational, never gating
  bool pass() const;
  void add(std::string name, const std::string& expected, const std::string& actual);
  template <class A, class B>
  void add(std::string name, const A& expected, const B& actual) {
    add(std::move(name), to_decimal(expected), to_decimal(actual));
  }

 private:
  template <class T>
  static std::string to_decimal(const T& v) {
    if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
    else if constexpr (std::is_same_v<T, BigInt>) return v.str();
    else return std::to_string(v);
  }
};

nlohmann::ordered_json to_json(const Verification& v);
std::string to_text(const Verification& v);
std::string to_csv(const Verification& v);

}  // namespace mtwist
