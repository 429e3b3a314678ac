#pragma once

// Closed-form counts for orientably-regular maps on M(q^2): per-case orbit
// counts, the Moebius-inverted map counts over the twisted-subgroup lattice,
// reflexible counts and the type obstruction. Exact arbitrary-precision
// integers throughout.

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mtwist/twisted_group.hpp"

namespace mtwist {

using BigInt = boost::multiprecision::cpp_int;

/// Non-squares u != v with u - v a square, for a fixed non-square v: (q^2-1)/4.
BigInt n_F(const BigInt& q);

struct OrbitCounts {
  BigInt n1, n2, n3, n4;  // n2 is zero unless q = 3 mod 4, n4 zero unless q = 1 mod 4
  BigInt total() const { return n1 + n2 + n3 + n4; }
  BigInt dia() const { return n1 + n2; }
  BigInt off() const { return n3 + n4; }
};

OrbitCounts orbit_counts(const BigInt& q);
/// (q^2-1)(q^2-2)/8.
BigInt total_orbit_identity(const BigInt& q);

/// f = 2^alpha * o with o odd.
std::pair<unsigned, std::uint64_t> split_two(std::uint64_t f);
/// {e : e | f, f/e odd}, ascending.
std::vector<std::uint64_t> twisted_divisors(std::uint64_t f);

/// (p^{2x}-1)(p^{2x}-2)/8.
BigInt h(std::uint64_t p, std::uint64_t x);
/// (p^{2x}-1)(3p^x-2)/8.
BigInt htilde(std::uint64_t p, std::uint64_t x);

/// sum over d | o of mu(o/d) h(2^alpha d).
BigInt count_generating_orbits(std::uint64_t p, std::uint64_t f);
/// count_generating_orbits / f; throws std::logic_error if not divisible.
BigInt count_maps(std::uint64_t p, std::uint64_t f);

struct ReflexibleCounts {
  BigInt r1, r2, r3, r4;
  BigInt R1() const { return r1 + r2; }
  BigInt R2() const { return r3 + r4; }
  BigInt R() const { return R1() + R2(); }
};

ReflexibleCounts reflexible_orbit_counts(const BigInt& q);
/// (q^2-1)(3q-2)/8.
BigInt reflexible_total_identity(const BigInt& q);
BigInt count_generating_reflexible_orbits(std::uint64_t p, std::uint64_t f);
BigInt count_reflexible_maps(std::uint64_t p, std::uint64_t f);

/// True iff k = l = 0 mod 8 and k != l mod 16: no map of type (k,l) exists.
bool type_obstruction(std::uint64_t k, std::uint64_t l);

/// (order x, order y) for twisted x, y with (xy)^2 = 1; throws std::invalid_argument otherwise.
std::pair<std::uint64_t, std::uint64_t> map_type(const TwistedGroup& G, const TwElem& x, const TwElem& y);

struct CensusReport {
  std::uint64_t p = 0, f = 0;
  BigInt q;
  unsigned alpha = 0;
  std::uint64_t o = 1;
  BigInt n1, n2, n3, n4;
  BigInt total_orbits;
  BigInt orb_f;
  BigInt map_count;
  BigInt reflexible_count;
  BigInt r1, r2, r3, r4, R1, R2, R;
  std::vector<std::uint64_t> divisors;  // twisted_divisors(f)
  friend bool operator==(const CensusReport&, const CensusReport&) = default;
};

/// Throws std::invalid_argument unless p is an odd prime and f >= 1.
CensusReport make_report(std::uint64_t p, std::uint64_t f);

}  // namespace mtwist
