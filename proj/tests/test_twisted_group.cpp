#include <doctest.h>

#include <random>
#include <stdexcept>

#include "mtwist/oracle.hpp"
#include "mtwist/twisted_group.hpp"

using namespace mtwist;

namespace {

Mat2 random_matrix(const TwistedGroup& G, std::mt19937_64& rng) {
  const auto Q = G.field().size();
  for (;;) {
    Mat2 m{Elem{static_cast<std::uint32_t>(rng() % Q)}, Elem{static_cast<std::uint32_t>(rng() % Q)},
           Elem{static_cast<std::uint32_t>(rng() % Q)}, Elem{static_cast<std::uint32_t>(rng() % Q)}};
    if (G.det(m).v != 0) return m;
  }
}

}  // namespace

TEST_CASE("iota") {
  const TwistedGroup G(3, 1);
  const Elem xi = G.xi(), one = G.field().one();
  CHECK(G.iota(G.identity_matrix()) == 0);
  CHECK(G.iota(G.dia(xi, one)) == 1);
  CHECK(G.iota(G.dia(G.field().mul(xi, xi), one)) == 0);
  CHECK_THROWS_AS(G.iota(Mat2{one, one, one, one}), std::domain_error);
  CHECK_THROWS_AS(G.make(Mat2{}, 0), std::domain_error);
}

TEST_CASE("multiplication rules") {
  const TwistedGroup G(5, 1);
  std::mt19937_64 rng(1);
  const TwElem I1 = G.make(G.identity_matrix(), 1);
  for (int n = 0; n < 200; ++n) {
    const Mat2 A = random_matrix(G, rng);
    const auto i = static_cast<std::uint8_t>(rng() % 2);
    const TwElem x = G.make(A, i);
    CHECK(G.mul(G.identity(), x) == x);
    CHECK(G.mul(G.make(A, 1), G.make(A, 1)) == G.make(G.mat_mul(A, G.sigma(A)), 0));
    CHECK(G.mul(G.mul(I1, x), I1) == G.make(G.sigma(A), i));
    CHECK(G.is_identity(G.mul(x, G.inv(x))));
    CHECK(G.is_identity(G.mul(G.inv(x), x)));
    const TwElem y = G.make(random_matrix(G, rng), static_cast<std::uint8_t>(rng() % 2));
    const TwElem z = G.make(random_matrix(G, rng), static_cast<std::uint8_t>(rng() % 2));
    CHECK(G.mul(x, G.mul(y, z)) == G.mul(G.mul(x, y), z));
    CHECK(G.conjugate(x, G.identity()) == x);
    CHECK(G.order(G.conjugate(x, y)) == G.order(x));
    // conjugation by [I,1] is the entrywise sigma
    CHECK(G.conjugate(x, I1) == G.galois(x, G.f()));
  }
}

TEST_CASE("inverse examples") {
  const TwistedGroup G(7, 1);
  const Field& F = G.field();
  CHECK(G.inv(G.identity()) == G.identity());
  const Elem lambda = F.pow(G.xi(), 3);
  const TwElem x = G.make(G.dia(lambda, F.one()), 1);
  CHECK(G.inv(x) == G.make(G.dia(F.pow(lambda, -static_cast<std::int64_t>(G.q())), F.one()), 1));
  const TwElem t = G.make(G.off(F.pow(G.xi(), 5), F.one()), 0);
  CHECK(G.inv(t) == t);
}

TEST_CASE("conjugation by untwisted elements") {
  const TwistedGroup G(3, 2);
  std::mt19937_64 rng(2);
  for (int n = 0; n < 100; ++n) {
    const Mat2 B = random_matrix(G, rng), P = random_matrix(G, rng);
    const Mat2 expect = G.mat_mul(G.mat_mul(G.adjugate(P), B), G.sigma(P));
    CHECK(G.conjugate(G.make(B, 1), G.make(P, 0)) == G.make(expect, 1));
  }
}

TEST_CASE("orders") {
  const TwistedGroup G(3, 1);
  const Elem xi = G.xi(), one = G.field().one();
  CHECK(G.order(G.identity()) == 1);
  CHECK(G.order(G.make(G.dia(xi, one), 1)) == 4);
  CHECK(G.order(G.make(G.off(xi, one), 1)) == 8);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const TwistedGroup H(p, 1);
    std::mt19937_64 rng(p);
    for (int n = 0; n < 300; ++n) {
      const TwElem x = H.make(random_matrix(H, rng), static_cast<std::uint8_t>(rng() % 2));
      CHECK(H.order(x) == order_iterative(H, x));
    }
  }
}

TEST_CASE("membership") {
  const TwistedGroup G(3, 1);
  const Elem xi = G.xi(), one = G.field().one();
  CHECK(G.in_G0(G.identity()));
  const TwElem x = G.make(G.dia(xi, one), 1);
  CHECK_FALSE(G.in_G0(x));
  CHECK(G.in_G0(G.mul(x, x)));
  CHECK_THROWS_AS(G.in_G0(G.make(G.dia(xi, one), 0)), std::invalid_argument);
  const auto all = extended_group_elements(G);
  CHECK(all.size() == 1440);
  std::size_t in_g = 0;
  for (const auto& g : all) in_g += G.in_G(g);
  CHECK(in_g == 720);
}

TEST_CASE("twisted elements have order divisible by 4") {
  const TwistedGroup G(3, 1);
  std::size_t twisted = 0;
  for (const auto& g : extended_group_elements(G)) {
    if (!G.in_G(g) || g.twist == 0) continue;
    ++twisted;
    CHECK(G.order(g) % 4 == 0);
  }
  CHECK(twisted == 360);
  for (auto [p, f] : {std::pair{5u, 1u}, {7u, 1u}, {3u, 2u}}) {
    const TwistedGroup H(p, f);
    std::mt19937_64 rng(1000 + p * 10 + f);
    int violations = 0;
    for (int n = 0; n < 10000;) {
      const Mat2 m = random_matrix(H, rng);
      if (H.iota(m) != 1) continue;
      ++n;
      violations += H.order(H.make(m, 1)) % 4 != 0;
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("projective well-definedness") {
  const TwistedGroup G(5, 1);
  const Field& F = G.field();
  std::mt19937_64 rng(3);
  for (int n = 0; n < 300; ++n) {
    const Mat2 A = random_matrix(G, rng), B = random_matrix(G, rng);
    const Elem s{static_cast<std::uint32_t>(1 + rng() % (F.size() - 1))};
    const auto i = static_cast<std::uint8_t>(rng() % 2), j = static_cast<std::uint8_t>(rng() % 2);
    const TwElem x = G.make(A, i), xs = G.make(G.scale(A, s), i), y = G.make(B, j);
    CHECK(x == xs);
    CHECK(G.normalize(G.normalize(A)) == G.normalize(A));
    CHECK(G.mul(xs, y) == G.mul(x, y));
    CHECK(G.inv(xs) == G.inv(x));
    CHECK(G.order(xs) == G.order(x));
    CHECK(G.iota(G.scale(A, s)) == G.iota(A));
  }
}
