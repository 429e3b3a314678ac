#include "mtwist/census.hpp"

#include <stdexcept>

#include "mtwist/canonical.hpp"
#include "mtwist/numtheory.hpp"

namespace mtwist {

namespace {

BigInt exact_div(const BigInt& num, unsigned den, const char* what) {
  if (num % den != 0) throw std::logic_error(std::string(what) + ": not an integer");
  return num / den;
}

BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

// sum over d | o of mu(o/d) g(2^alpha d).
template <class Fn>
BigInt mobius_sum(std::uint64_t f, Fn g) {
  const auto [alpha, o] = split_two(f);
  BigInt total = 0;
  for (std::uint64_t d : divisors(o)) {
    const int mu = mobius(o / d);
    if (mu != 0) total += mu * g((std::uint64_t{1} << alpha) * d);
  }
  return total;
}

void check_prime(std::uint64_t p, std::uint64_t f) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("census: p must be an odd prime");
  if (f < 1) throw std::invalid_argument("census: f must be positive");
}

}  // namespace

BigInt n_F(const BigInt& q) { return exact_div(q * q - 1, 4, "n_F"); }

OrbitCounts orbit_counts(const BigInt& q) {
  OrbitCounts n;
  const BigInt nf = n_F(q);
  n.n1 = exact_div((q + 1) * ((q - 1) / 4) * (q * q - 3), 4, "n1");
  n.n3 = exact_div((q - 1) * ((q + 1) / 4) * (q * q + 1), 4, "n3");
  if (q % 4 == 3) n.n2 = exact_div((q + 1) * (q * q - 3) - 4 * nf, 8, "n2");
  if (q % 4 == 1) n.n4 = exact_div((q - 1) * (q * q + 1) - 4 * nf, 8, "n4");
  return n;
}

BigInt total_orbit_identity(const BigInt& q) { return exact_div((q * q - 1) * (q * q - 2), 8, "total"); }

std::pair<unsigned, std::uint64_t> split_two(std::uint64_t f) {
  if (f == 0) throw std::invalid_argument("split_two: f must be positive");
  unsigned alpha = 0;
  while (f % 2 == 0) {
    f /= 2;
    ++alpha;
  }
  return {alpha, f};
}

std::vector<std::uint64_t> twisted_divisors(std::uint64_t f) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t e : divisors(f))
    if ((f / e) % 2 == 1) out.push_back(e);
  return out;
}

BigInt h(std::uint64_t p, std::uint64_t x) {
  const BigInt Q = big_pow(p, 2 * x);
  return exact_div((Q - 1) * (Q - 2), 8, "h");
}

BigInt htilde(std::uint64_t p, std::uint64_t x) {
  const BigInt q = big_pow(p, x);
  return exact_div((q * q - 1) * (3 * q - 2), 8, "htilde");
}

BigInt count_generating_orbits(std::uint64_t p, std::uint64_t f) {
  check_prime(p, f);
  const BigInt s = mobius_sum(f, [p](std::uint64_t x) { return h(p, x); });
  if (s < 0) throw std::logic_error("count_generating_orbits: negative");
  return s;
}

BigInt count_maps(std::uint64_t p, std::uint64_t f) {
  return exact_div(count_generating_orbits(p, f), static_cast<unsigned>(f), "count_maps");
}

ReflexibleCounts reflexible_orbit_counts(const BigInt& q) {
  const BigInt m = q * q - 1;
  return {exact_div(m * (q - 2), 8, "r1"), exact_div(m * (q - 1), 16, "r2"), exact_div(q * m, 8, "r3"),
          exact_div((q + 1) * m, 16, "r4")};
}

BigInt reflexible_total_identity(const BigInt& q) { return exact_div((q * q - 1) * (3 * q - 2), 8, "R"); }

BigInt count_generating_reflexible_orbits(std::uint64_t p, std::uint64_t f) {
  check_prime(p, f);
  const BigInt s = mobius_sum(f, [p](std::uint64_t x) { return htilde(p, x); });
  if (s < 0) throw std::logic_error("count_generating_reflexible_orbits: negative");
  return s;
}

BigInt count_reflexible_maps(std::uint64_t p, std::uint64_t f) {
  return exact_div(count_generating_reflexible_orbits(p, f), static_cast<unsigned>(f), "count_reflexible_maps");
}

bool type_obstruction(std::uint64_t k, std::uint64_t l) { return k % 8 == 0 && l % 8 == 0 && k % 16 != l % 16; }

std::pair<std::uint64_t, std::uint64_t> map_type(const TwistedGroup& G, const TwElem& x, const TwElem& y) {
  const TwElem xy = G.mul(x, y);
  if (!G.is_identity(G.mul(xy, xy))) throw std::invalid_argument("map_type: (xy)^2 != 1");
  const std::uint64_t q = G.q();
  return {canonical_order(canonical_form(G, x).cls, q), canonical_order(canonical_form(G, y).cls, q)};
}

CensusReport make_report(std::uint64_t p, std::uint64_t f) {
  check_prime(p, f);
  CensusReport r;
  r.p = p;
  r.f = f;
  r.q = big_pow(p, f);
  std::tie(r.alpha, r.o) = split_two(f);
  const OrbitCounts n = orbit_counts(r.q);
  r.n1 = n.n1;
  r.n2 = n.n2;
  r.n3 = n.n3;
  r.n4 = n.n4;
  r.total_orbits = n.total();
  if (r.total_orbits != total_orbit_identity(r.q)) throw std::logic_error("make_report: orbit identity fails");
  r.orb_f = count_generating_orbits(p, f);
  r.map_count = count_maps(p, f);
  r.reflexible_count = count_reflexible_maps(p, f);
  const ReflexibleCounts rc = reflexible_orbit_counts(r.q);
  r.r1 = rc.r1;
  r.r2 = rc.r2;
  r.r3 = rc.r3;
  r.r4 = rc.r4;
  r.R1 = rc.R1();
  r.R2 = rc.R2();
  r.R = rc.R();
  r.divisors = twisted_divisors(f);
  return r;
}

}  // namespace mtwist
