#pragma once

// Formula-versus-oracle comparisons behind the `verify` command.

#include <cstdint>

#include "mtwist/report.hpp"

namespace mtwist {

/// Pure integer identities for q = p^f.
Verification verify_formulas(std::uint64_t p, unsigned f);
/// Orbit enumeration against the closed forms, Galois fusion, reflexible counts, types.
Verification verify_orbits(std::uint64_t p, unsigned f, unsigned threads);
/// verify_orbits plus exhaustive references where the extended group is small enough,
/// closure-based levels, and sampled canonical-form witnesses (seeded).
Verification verify_bruteforce(std::uint64_t p, unsigned f, unsigned threads, std::uint64_t seed);
/// Self-dual table against the embedded reference rows. Throws std::invalid_argument without a row.
Verification verify_selfdual(std::uint64_t p, unsigned f, unsigned threads);

}  // namespace mtwist
