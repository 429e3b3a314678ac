#include <doctest.h>

#include <numeric>
#include <random>
#include <stdexcept>

#include "mtwist/gfield.hpp"
#include "mtwist/numtheory.hpp"

using namespace mtwist;

namespace {

std::uint64_t mult_order(const Field& F, Elem x) {
  Elem cur = x;
  std::uint64_t n = 1;
  while (cur != F.one()) {
    cur = F.mul(cur, x);
    ++n;
  }
  return n;
}

Elem random_elem(const Field& F, std::mt19937_64& rng) {
  return Elem{static_cast<std::uint32_t>(rng() % F.size())};
}

void check_axioms(const Field& F, Elem a, Elem b, Elem c) {
  CHECK(F.add(a, F.add(b, c)) == F.add(F.add(a, b), c));
  CHECK(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
  CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
  CHECK(F.add(a, b) == F.add(b, a));
  CHECK(F.mul(a, b) == F.mul(b, a));
  CHECK(F.add(a, F.neg(a)) == F.zero());
  if (a.v != 0) CHECK(F.mul(a, F.inv(a)) == F.one());
}

}  // namespace

TEST_CASE("make_field moduli") {
  CHECK(make_field(3, 1).modulus() == std::vector<std::uint32_t>{0, 1});
  CHECK(make_field(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(make_field(5, 2).modulus() == std::vector<std::uint32_t>{2, 0, 1});
  CHECK(make_field(7, 3).modulus() == make_field(7, 3).modulus());
  for (auto [p, m] : {std::pair{3u, 4u}, {5u, 3u}, {3u, 6u}, {11u, 2u}}) CHECK(is_irreducible(p, make_field(p, m).modulus()));
  CHECK_FALSE(is_irreducible(3, {2, 0, 1}));  // x^2 - 1
  CHECK_THROWS_AS(Field(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(Field(9, 1), std::invalid_argument);
  CHECK_THROWS_AS(Field(3, 0), std::invalid_argument);
}

TEST_CASE("frobenius") {
  const Field F(3, 2);
  const Elem x{3};  // the root of x^2 + 1
  CHECK(F.mul(x, x) == F.neg(F.one()));
  CHECK(F.frobenius(x, 1) == F.neg(x));
  CHECK(F.frobenius(F.one(), 1) == F.one());
  const Field K(3, 4);
  for (std::uint32_t v = 0; v < K.size(); ++v) CHECK(K.frobenius(K.frobenius(Elem{v}, 2), 2) == Elem{v});
  std::mt19937_64 rng(11);
  for (int n = 0; n < 500; ++n) {
    const Elem a = random_elem(K, rng), b = random_elem(K, rng);
    CHECK(K.frobenius(K.add(a, b), 1) == K.add(K.frobenius(a, 1), K.frobenius(b, 1)));
    CHECK(K.frobenius(K.mul(a, b), 1) == K.mul(K.frobenius(a, 1), K.frobenius(b, 1)));
    CHECK(K.frobenius(a, 1) == K.pow(a, 3));
  }
}

TEST_CASE("squares") {
  const Field F(5, 2);
  CHECK(F.is_square(F.one()));
  CHECK_FALSE(F.is_square(F.primitive()));
  CHECK(F.is_square(F.pow(F.primitive(), 2)));
  CHECK_THROWS_AS(F.is_square(F.zero()), std::domain_error);
  for (auto [p, m] : {std::pair{3u, 1u}, {3u, 2u}, {3u, 4u}, {3u, 6u}, {5u, 2u}, {5u, 4u}, {7u, 3u}, {23u, 2u}}) {
    const Field K(p, m);
    std::uint64_t squares = 0;
    for (std::uint32_t v = 1; v < K.size(); ++v) squares += K.is_square(Elem{v});
    CHECK(squares == (K.size() - 1) / 2);
  }
}

TEST_CASE("primitive element") {
  CHECK(Field(3, 1).primitive() == Elem{2});
  const Field F(3, 2);
  Elem first{0};
  for (std::uint32_t v = 1; v < F.size(); ++v)
    if (mult_order(F, Elem{v}) == 8) {
      first = Elem{v};
      break;
    }
  CHECK(F.primitive() == first);
  for (auto [p, m] : {std::pair{5u, 2u}, {3u, 6u}, {7u, 2u}}) {
    const Field K(p, m);
    CHECK(mult_order(K, K.primitive()) == K.size() - 1);
    CHECK_FALSE(K.is_square(K.primitive()));
  }
}

TEST_CASE("logs and roots") {
  const Field F(3, 2);
  const Elem xi = F.primitive();
  CHECK(F.nth_roots(F.one(), 1) == std::vector<Elem>{F.one()});
  auto roots = F.nth_roots(F.mul(xi, xi), 2);
  std::vector<Elem> want{xi, F.neg(xi)};
  std::sort(want.begin(), want.end());
  CHECK(roots == want);
  CHECK_THROWS_AS(F.nth_roots(F.zero(), 2), std::invalid_argument);
  CHECK_THROWS_AS(F.nth_roots(F.one(), 0), std::invalid_argument);
  for (std::uint64_t q : {3, 5, 7, 9}) {
    const auto pf = *odd_prime_power(q);
    const Field K(static_cast<std::uint32_t>(pf.first), 2 * pf.second);
    CHECK(K.nth_roots(K.one(), q + 1).size() == q + 1);
    std::mt19937_64 rng(q);
    for (int n = 0; n < 200; ++n) {
      const Elem w{static_cast<std::uint32_t>(1 + rng() % (K.size() - 1))};
      const std::uint64_t r = 1 + rng() % 40;
      const auto zs = K.nth_roots(w, r);
      const std::uint64_t g = std::gcd(r, K.size() - 1);
      CHECK((zs.empty() || zs.size() == g));
      CHECK(zs.empty() == (K.log(w) % g != 0));
      for (Elem z : zs) CHECK(K.pow(z, static_cast<std::int64_t>(r)) == w);
      CHECK(K.exp(static_cast<std::int64_t>(K.log(w))) == w);
      const auto s = K.sqrt(w);
      CHECK(s.has_value() == K.is_square(w));
      if (s) CHECK(K.mul(*s, *s) == w);
    }
  }
}

TEST_CASE("subfields") {
  const Field F(3, 4);  // q = 9
  const Elem xi = F.primitive();
  CHECK(F.in_subfield(F.one(), 1));
  CHECK_FALSE(F.in_subfield(xi, 2));
  CHECK(F.in_subfield(F.pow(xi, 10), 2));
  CHECK_THROWS_AS(F.in_subfield(xi, 3), std::invalid_argument);
  // Frobenius by p^f and by p^e agree on GF(p^(2e)) when f/e is odd: p = 3, f = 3, e = 1.
  const Field K(3, 6);
  std::uint64_t embedded = 0;
  for (std::uint32_t v = 0; v < K.size(); ++v) {
    const Elem x{v};
    if (!K.in_subfield(x, 2)) continue;
    ++embedded;
    CHECK(K.frobenius(x, 3) == K.frobenius(x, 1));
  }
  CHECK(embedded == 9);
  // xi^((p^(2f)-1)/(p^(2e)-1)) generates the embedded GF(p^(2e)).
  const Elem g = K.pow(K.primitive(), (729 - 1) / (9 - 1));
  CHECK(K.in_subfield(g, 2));
  CHECK(mult_order(K, g) == 8);
}

TEST_CASE("field axioms") {
  for (auto [p, m] : {std::pair{3u, 1u}, {3u, 2u}, {5u, 2u}, {3u, 4u}}) {
    const Field F(p, m);
    if (F.size() <= 27) {
      for (std::uint32_t a = 0; a < F.size(); ++a)
        for (std::uint32_t b = 0; b < F.size(); ++b)
          for (std::uint32_t c = 0; c < F.size(); ++c) check_axioms(F, Elem{a}, Elem{b}, Elem{c});
    } else {
      std::mt19937_64 rng(p * 100 + m);
      for (int n = 0; n < 3000; ++n) check_axioms(F, random_elem(F, rng), random_elem(F, rng), random_elem(F, rng));
    }
  }
}

TEST_CASE("large field without tables agrees with the algebra") {
  const Field F(3, 13);  // 3^13 > 2^20
  CHECK_FALSE(F.has_tables());
  std::mt19937_64 rng(7);
  for (int n = 0; n < 200; ++n) {
    const Elem a = random_elem(F, rng), b = random_elem(F, rng), c = random_elem(F, rng);
    check_axioms(F, a, b, c);
    CHECK(F.frobenius(F.mul(a, b), 1) == F.mul(F.frobenius(a, 1), F.frobenius(b, 1)));
    if (a.v != 0) {
      CHECK(F.exp(static_cast<std::int64_t>(F.log(a))) == a);
      CHECK(F.is_square(a) == (F.pow(a, static_cast<std::int64_t>((F.size() - 1) / 2)) == F.one()));
    }
  }
}
