#include "mtwist/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mtwist {

namespace {

struct BigField {
  const char* name;
  BigInt CensusReport::*member;
};

constexpr BigField kBigFields[] = {
    {"q", &CensusReport::q},
    {"n1", &CensusReport::n1},
    {"n2", &CensusReport::n2},
    {"n3", &CensusReport::n3},
    {"n4", &CensusReport::n4},
    {"total_orbits", &CensusReport::total_orbits},
    {"orb_f", &CensusReport::orb_f},
    {"map_count", &CensusReport::map_count},
    {"reflexible_count", &CensusReport::reflexible_count},
    {"r1", &CensusReport::r1},
    {"r2", &CensusReport::r2},
    {"r3", &CensusReport::r3},
    {"r4", &CensusReport::r4},
    {"R1", &CensusReport::R1},
    {"R2", &CensusReport::R2},
    {"R", &CensusReport::R},
};

bool is_reflexible_field(std::string_view name) {
  return name == "reflexible_count" || name[0] == 'r' || name[0] == 'R';
}

std::string join(const std::vector<std::uint64_t>& xs, char sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(xs[i]);
  return s;
}

std::uint64_t parse_u64(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw std::invalid_argument(std::string("census_from_json: bad field ") + key);
  return std::stoull(j[key].get<std::string>());
}

}  // namespace

nlohmann::ordered_json to_json(const CensusReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kCacheSchemaVersion;
  j["p"] = std::to_string(r.p);
  j["f"] = std::to_string(r.f);
  j["alpha"] = std::to_string(r.alpha);
  j["o"] = std::to_string(r.o);
  for (const auto& field : kBigFields) j[field.name] = (r.*field.member).str();
  auto divs = nlohmann::ordered_json::array();
  for (auto e : r.divisors) divs.push_back(std::to_string(e));
  j["divisors"] = divs;
  return j;
}

CensusReport census_from_json(const nlohmann::json& j) {
  if (!j.contains("schema_version") || j["schema_version"] != kCacheSchemaVersion)
    throw std::invalid_argument("census_from_json: schema version mismatch");
  CensusReport r;
  r.p = parse_u64(j, "p");
  r.f = parse_u64(j, "f");
  r.alpha = static_cast<unsigned>(parse_u64(j, "alpha"));
  r.o = parse_u64(j, "o");
  for (const auto& field : kBigFields) {
    if (!j.contains(field.name) || !j[field.name].is_string())
      throw std::invalid_argument(std::string("census_from_json: bad field ") + field.name);
    r.*field.member = BigInt(j[field.name].get<std::string>());
  }
  if (!j.contains("divisors") || !j["divisors"].is_array()) throw std::invalid_argument("census_from_json: bad divisors");
  for (const auto& e : j["divisors"]) r.divisors.push_back(std::stoull(e.get<std::string>()));
  return r;
}

std::filesystem::path cache_path(const std::filesystem::path& dir, std::uint64_t p, std::uint64_t f) {
  return dir / ("census_p" + std::to_string(p) + "_f" + std::to_string(f) + ".json");
}

std::optional<CensusReport> cache_load(const std::filesystem::path& dir, std::uint64_t p, std::uint64_t f) {
  std::ifstream in(cache_path(dir, p, f));
  if (!in) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(in);
    CensusReport r = census_from_json(j);
    if (r.p != p || r.f != f) return std::nullopt;
    return r;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void cache_store(const std::filesystem::path& dir, const CensusReport& r) {
  std::filesystem::create_directories(dir);
  const auto path = cache_path(dir, r.p, r.f);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cache_store: cannot write " + tmp);
    out << to_json(r).dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

CensusReport cached_report(const std::optional<std::filesystem::path>& dir, std::uint64_t p, std::uint64_t f) {
  if (dir)
    if (auto hit = cache_load(*dir, p, f)) return *hit;
  CensusReport r = make_report(p, f);
  if (dir) cache_store(*dir, r);
  return r;
}

std::string to_text(const CensusReport& r, bool reflexible) {
  std::ostringstream os;
  os << "p " << r.p << "\nf " << r.f << "\nalpha " << r.alpha << "\no " << r.o << "\n";
  os << "divisors " << join(r.divisors, ' ') << "\n";
  for (const auto& field : kBigFields)
    if (reflexible || !is_reflexible_field(field.name)) os << field.name << " " << (r.*field.member).str() << "\n";
  return os.str();
}

std::string csv_header(bool reflexible) {
  std::string s = "p,f,alpha,o,divisors";
  for (const auto& field : kBigFields)
    if (reflexible || !is_reflexible_field(field.name)) s += std::string(",") + field.name;
  return s + "\n";
}

std::string to_csv_row(const CensusReport& r, bool reflexible) {
  std::string s = std::to_string(r.p) + "," + std::to_string(r.f) + "," + std::to_string(r.alpha) + "," +
                  std::to_string(r.o) + "," + join(r.divisors, ' ');
  for (const auto& field : kBigFields)
    if (reflexible || !is_reflexible_field(field.name)) s += "," + (r.*field.member).str();
  return s + "\n";
}

bool Verification::pass() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return true;
}

void Verification::add(std::string name, const std::string& expected, const std::string& actual) {
  checks.push_back({std::move(name), expected, actual});
}

nlohmann::ordered_json to_json(const Verification& v) {
  nlohmann::ordered_json j;
  j["q"] = std::to_string(v.q);
  j["level"] = v.level;
  j["pass"] = v.pass();
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : v.checks)
    checks.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass()}});
  j["checks"] = checks;
  auto notes = nlohmann::ordered_json::object();
  for (const auto& [k, val] : v.notes) notes[k] = val;
  j["notes"] = notes;
  return j;
}

std::string to_text(const Verification& v) {
  std::ostringstream os;
  for (const auto& c : v.checks)
    os << (c.pass() ? "PASS " : "FAIL ") << c.name << ": expected " << c.expected << ", actual " << c.actual << "\n";
  for (const auto& [k, val] : v.notes) os << "NOTE " << k << ": " << val << "\n";
  os << "verify q=" << v.q << " level=" << v.level << ": " << (v.pass() ? "pass" : "FAIL") << "\n";
  return os.str();
}

std::string to_csv(const Verification& v) {
  std::string s = "q,level,check,expected,actual,pass\n";
  for (const auto& c : v.checks)
    s += std::to_string(v.q) + "," + v.level + "," + c.name + "," + c.expected + "," + c.actual + "," +
         (c.pass() ? "true" : "false") + "\n";
  return s;
}

}  // namespace mtwist
