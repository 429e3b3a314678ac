#include "mtwist/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mtwist/census.hpp"
#include "mtwist/numtheory.hpp"
#include "mtwist/oracle.hpp"
#include "mtwist/report.hpp"
#include "mtwist/verify.hpp"

namespace mtwist {

namespace {

constexpr std::uint64_t kEnumerationBound = 31;  // orbit enumeration: about q^4 quadruples per run
constexpr std::uint64_t kBruteforceBound = 9;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string format = "text";
  std::string cache_dir;
  unsigned threads = 1;
  std::uint64_t seed = 20240601;
  std::uint64_t p = 0, f = 0, q = 0;
  bool reflexible = false;
  std::string level;
  bool allow_large = false;
  std::string type;
  bool fuse = false;
};

std::pair<std::uint64_t, unsigned> split_q(std::uint64_t q) {
  const auto pf = odd_prime_power(q);
  if (!pf) throw UsageError("q=" + std::to_string(q) + " is not a power of an odd prime");
  return {pf->first, pf->second};
}

void guard(std::uint64_t q, std::uint64_t bound, bool allow, const char* what) {
  if (q > bound && !allow)
    throw ResourceError(std::string(what) + ": q=" + std::to_string(q) + " exceeds the bound " +
                        std::to_string(bound) + " (use --allow-large)");
}

std::pair<std::uint64_t, std::uint64_t> parse_type(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("--type expects k,l");
  try {
    return {std::stoull(s.substr(0, comma)), std::stoull(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("--type expects k,l");
  }
}

int cmd_count(const RunConfig& cfg, std::ostream& out) {
  if (cfg.p < 3 || !is_prime(cfg.p) || cfg.f < 1) throw UsageError("count: p must be an odd prime and f >= 1");
  std::optional<std::filesystem::path> dir;
  if (!cfg.cache_dir.empty()) dir = cfg.cache_dir;
  const CensusReport r = cached_report(dir, cfg.p, cfg.f);
  if (cfg.format == "json") out << to_json(r).dump(2) << "\n";
  else if (cfg.format == "csv") out << csv_header(cfg.reflexible) << to_csv_row(r, cfg.reflexible);
  else out << to_text(r, cfg.reflexible);
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto [p, f] = split_q(cfg.q);
  Verification v;
  if (cfg.level == "formulas") {
    v = verify_formulas(p, f);
  } else if (cfg.level == "orbits") {
    guard(cfg.q, kEnumerationBound, cfg.allow_large, "verify");
    v = verify_orbits(p, f, cfg.threads);
  } else if (cfg.level == "bruteforce") {
    guard(cfg.q, kBruteforceBound, cfg.allow_large, "verify");
    v = verify_bruteforce(p, f, cfg.threads, cfg.seed);
  } else {
    guard(cfg.q, kEnumerationBound, cfg.allow_large, "verify");
    try {
      v = verify_selfdual(p, f, cfg.threads);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (cfg.format == "json") out << to_json(v).dump(2) << "\n";
  else if (cfg.format == "csv") out << to_csv(v);
  else out << to_text(v);
  return v.pass() ? kExitPass : kExitMismatch;
}

int cmd_selfdual(const RunConfig& cfg, std::ostream& out) {
  const auto [p, f] = split_q(cfg.q);
  guard(cfg.q, kEnumerationBound, cfg.allow_large, "selfdual");
  const TwistedGroup G(static_cast<std::uint32_t>(p), f);
  const OrbitAtlas atlas(G, {cfg.threads, true});
  const SelfDualTable t = selfdual_table(atlas);
  const std::pair<const char*, SelfDualRow> rows[] = {{"dia", t.dia}, {"off", t.off}};
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["q"] = std::to_string(t.q);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [form, r] : rows)
      arr.push_back({{"form", form},
                     {"k_eq_l", std::to_string(r.k_eq_l)},
                     {"pos_sd", std::to_string(r.pos)},
                     {"neg_sd", std::to_string(r.neg)},
                     {"both", std::to_string(r.both)}});
    j["rows"] = arr;
    j["neg_not_pos"] = std::to_string(t.neg_not_pos);
    out << j.dump(2) << "\n";
  } else {
    const char* sep = cfg.format == "csv" ? "," : " ";
    out << "q" << sep << "form" << sep << "k_eq_l" << sep << "pos_sd" << sep << "neg_sd" << sep << "both\n";
    for (const auto& [form, r] : rows)
      out << t.q << sep << form << sep << r.k_eq_l << sep << r.pos << sep << r.neg << sep << r.both << "\n";
  }
  return kExitPass;
}

int cmd_orbits(const RunConfig& cfg, std::ostream& out) {
  const auto [p, f] = split_q(cfg.q);
  guard(cfg.q, kEnumerationBound, cfg.allow_large, "orbits");
  std::optional<std::pair<std::uint64_t, std::uint64_t>> type;
  if (!cfg.type.empty()) type = parse_type(cfg.type);
  const TwistedGroup G(static_cast<std::uint32_t>(p), f);
  const OrbitAtlas atlas(G, {cfg.threads, true});
  if (cfg.fuse) galois_fuse(atlas);

  std::vector<std::size_t> ids;
  if (cfg.fuse) {
    for (const auto& bundle : atlas.bundles()) ids.push_back(*std::min_element(bundle.begin(), bundle.end()));
    std::sort(ids.begin(), ids.end());
  } else {
    for (std::size_t id = 0; id < atlas.orbit_count(); ++id) ids.push_back(id);
  }
  if (type)
    std::erase_if(ids, [&](std::size_t id) {
      const auto& r = atlas.orbits()[id];
      return r.k != type->first || r.l != type->second;
    });

  const std::vector<std::string> header = {"form", "i", "e1", "e2", "u", "size", "level", "k", "l",
                                           "reflexible", "pos_sd", "neg_sd", "bundle", "bundle_size"};
  auto row = [&](std::size_t id) {
    const OrbitRec& r = atlas.orbits()[id];
    auto b = [](bool x) { return std::string(x ? "true" : "false"); };
    return std::vector<std::string>{to_string(r.key.cls.form), std::to_string(r.key.cls.i),
                                    std::to_string(r.key.e1.v), std::to_string(r.key.e2.v),
                                    std::to_string(r.key.u.v), std::to_string(r.size),
                                    std::to_string(r.level), std::to_string(r.k),
                                    std::to_string(r.l), b(r.reflexible),
                                    b(r.pos_self_dual), b(r.neg_self_dual),
                                    std::to_string(r.bundle), std::to_string(atlas.bundles()[r.bundle].size())};
  };
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["q"] = std::to_string(cfg.q);
    j["fused"] = cfg.fuse;
    j["count"] = std::to_string(ids.size());
    auto arr = nlohmann::ordered_json::array();
    for (std::size_t id : ids) {
      const auto cells = row(id);
      nlohmann::ordered_json o;
      for (std::size_t c = 0; c < header.size(); ++c) o[header[c]] = cells[c];
      arr.push_back(o);
    }
    j["rows"] = arr;
    out << j.dump(2) << "\n";
    return kExitPass;
  }
  const char* sep = cfg.format == "csv" ? "," : " ";
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? sep : "") << cells[c];
    out << "\n";
  };
  emit(header);
  for (std::size_t id : ids) emit(row(id));
  if (cfg.format == "text") out << (cfg.fuse ? "bundles " : "orbits ") << ids.size() << "\n";
  return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orientably-regular maps on twisted linear fractional groups M(q^2)", "mtwist"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--cache-dir", cfg.cache_dir, "Directory for cached census reports");
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", cfg.seed, "Seed for sampled checks");

  auto* count = app.add_subcommand("count", "Closed-form census for q = p^f");
  count->add_option("--p", cfg.p, "Odd prime")->required();
  count->add_option("--f", cfg.f, "Exponent")->required();
  count->add_flag("--reflexible", cfg.reflexible, "Include reflexible counts");

  auto* verify = app.add_subcommand("verify", "Compare formulas against the oracle");
  verify->add_option("--q", cfg.q, "Odd prime power")->required();
  verify->add_option("--level", cfg.level, "Verification level")
      ->required()
      ->check(CLI::IsMember({"formulas", "orbits", "bruteforce", "selfdual"}));
  verify->add_flag("--allow-large", cfg.allow_large, "Lift the resource guard");

  auto* selfdual = app.add_subcommand("selfdual", "Self-dual map table");
  selfdual->add_option("--q", cfg.q, "Odd prime power")->required();
  selfdual->add_flag("--allow-large", cfg.allow_large, "Lift the resource guard");

  auto* orbits = app.add_subcommand("orbits", "List pair orbits");
  orbits->add_option("--q", cfg.q, "Odd prime power")->required();
  orbits->add_option("--type", cfg.type, "Filter by type k,l");
  orbits->add_flag("--fuse", cfg.fuse, "One row per Galois bundle");
  orbits->add_flag("--allow-large", cfg.allow_large, "Lift the resource guard");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (count->parsed()) return cmd_count(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (selfdual->parsed()) return cmd_selfdual(cfg, out);
    return cmd_orbits(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::logic_error& e) {
    err << "internal invariant violated: " << e.what() << "\n";
    return kExitMismatch;
  }
}

}  // namespace mtwist
