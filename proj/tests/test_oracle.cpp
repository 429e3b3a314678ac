#include <doctest.h>

#include <stdexcept>

#include "mtwist/census.hpp"
#include "mtwist/numtheory.hpp"
#include "mtwist/oracle.hpp"

using namespace mtwist;

namespace {

TwistedGroup group_for(std::uint64_t q) {
  const auto pf = *odd_prime_power(q);
  return TwistedGroup(static_cast<std::uint32_t>(pf.first), pf.second);
}

}  // namespace

TEST_CASE("quadruple enumeration and partition at q = 3") {
  const TwistedGroup G(3, 1);
  const auto quads = enumerate_quads(G);
  for (const auto& quad : quads) {
    const auto [x, y] = quad_pair(G, quad);
    CHECK(G.in_G(x));
    const TwElem xy = G.mul(x, y);
    CHECK(G.is_identity(G.mul(xy, xy)));
    CHECK_FALSE((G.order(x) == 4 && G.order(y) == 4));
    CHECK(quad_entries(G, quad.cls, x) == std::pair{quad.e1, quad.e2});
  }
  const CanonClass off1{Form::Off, 1};
  const Partition part = orbit_partition(G, off1, enumerate_quads(G, off1));
  CHECK(part.orbits.size() == 5);
  for (const auto& o : part.orbits) CHECK(o.size == 8);
  CHECK(orbit_partition(G, {Form::Dia, 1}, enumerate_quads(G, {Form::Dia, 1})).orbits.size() == 2);
  CHECK_THROWS_AS(orbit_partition(G, {Form::Dia, 1}, enumerate_quads(G, off1)), std::invalid_argument);
}

TEST_CASE("partition sizes at q = 5") {
  const TwistedGroup G(5, 1);
  for (const auto& o : orbit_partition(G, {Form::Dia, 1}, enumerate_quads(G, {Form::Dia, 1})).orbits) CHECK(o.size == 8);
  for (const auto& o : orbit_partition(G, {Form::Off, 3}, enumerate_quads(G, {Form::Off, 3})).orbits) CHECK(o.size == 24);
  const OrbitAtlas atlas(G);
  CHECK(atlas.count_form(Form::Off) == 36);
}

TEST_CASE("per-case orbit counts match the closed forms") {
  for (std::uint64_t q : {3, 5, 7, 9, 11, 13}) {
    const TwistedGroup G = group_for(q);
    const OrbitAtlas atlas(G, {1, false});
    BigInt n[4] = {0, 0, 0, 0};
    for (const auto& rec : atlas.orbits()) {
      const int idx = (rec.key.cls.form == Form::Dia ? 0 : 2) + (is_exceptional(rec.key.cls, q) ? 1 : 0);
      n[idx] += 1;
      CHECK(rec.size == stabilizer_elements(G, rec.key.cls).size());
    }
    const OrbitCounts want = orbit_counts(q);
    CHECK(n[0] == want.n1);
    CHECK(n[1] == want.n2);
    CHECK(n[2] == want.n3);
    CHECK(n[3] == want.n4);
  }
}

TEST_CASE("locate") {
  const TwistedGroup G(5, 1);
  const OrbitAtlas atlas(G);
  for (std::size_t id = 0; id < atlas.orbit_count(); ++id) {
    const auto [x, y] = atlas.pair(id);
    CHECK(atlas.locate(x, y) == id);
    const TwElem g = G.make(G.off(G.xi(), G.field().from_int(3)), 1);
    CHECK(atlas.locate(G.conjugate(x, g), G.conjugate(y, g)) == id);
  }
  const TwElem d = representative(G, {Form::Dia, 1});
  CHECK_FALSE(atlas.locate(G.identity(), d).has_value());
  CHECK_FALSE(atlas.locate(G.make(G.off(G.xi(), G.field().one()), 1), d).has_value());
}

TEST_CASE("generated level") {
  {
    const TwistedGroup G(3, 1);
    const OrbitAtlas atlas(G);
    for (std::size_t id = 0; id < atlas.orbit_count(); ++id) {
      CHECK(atlas.orbits()[id].level == 1);
      const auto [x, y] = atlas.pair(id);
      CHECK(closure_size(G, {x, y}, 1000000) == 720);
    }
  }
  {
    const TwistedGroup G(5, 1);
    const OrbitAtlas atlas(G);
    for (std::size_t id = 0; id < atlas.orbit_count(); ++id) {
      const auto [x, y] = atlas.pair(id);
      CHECK(closure_size(G, {x, y}, 1000000) == 15600);
    }
  }
  {
    const TwistedGroup G(3, 2);
    const OrbitAtlas atlas(G);
    for (const auto& rec : atlas.orbits()) CHECK(rec.level == 2);
  }
  CHECK(twisted_group_order(3, 1) == 720);
  CHECK(closure_size(TwistedGroup(3, 1), {TwistedGroup(3, 1).identity()}, 10) == 1);
}

TEST_CASE("Galois fusion") {
  const FusionResult f3 = galois_fuse(OrbitAtlas(TwistedGroup(3, 1)));
  CHECK(f3.bundles == 7);
  CHECK(f3.all_full);
  const TwistedGroup G9(3, 2);
  const OrbitAtlas a9(G9);
  const FusionResult f9 = galois_fuse(a9);
  CHECK(f9.orbits == 790);
  CHECK(f9.bundles == 395);
  for (const auto& b : a9.bundles()) CHECK(b.size() == 2);
  CHECK(galois_fuse(OrbitAtlas(TwistedGroup(5, 1))).bundles == 69);
}

TEST_CASE("reflexibility") {
  for (std::uint64_t q : {3, 5, 7, 9}) {
    const TwistedGroup G = group_for(q);
    const OrbitAtlas atlas(G);
    const ReflexibleTally t = reflexible_tally(atlas);
    const ReflexibleCounts r = reflexible_orbit_counts(q);
    CHECK(BigInt(t.dia_orbits) == r.R1());
    CHECK(BigInt(t.off_orbits) == r.R2());
    CHECK(BigInt(t.maps) == count_reflexible_maps(G.p(), G.f()));
    CHECK(t.shape_vs_orbit_mismatches == 0);
    for (const auto& c : canonical_classes(q)) CHECK_FALSE(inverting_involution_candidates(G, c).empty());
  }
  const TwistedGroup G3(3, 1);
  const OrbitAtlas a3(G3);
  for (const auto& rec : a3.orbits()) CHECK(is_reflexible(G3, rec.key));
}

TEST_CASE("exhaustive references at q = 3, 5") {
  for (std::uint32_t p : {3u, 5u}) {
    const TwistedGroup G(p, 1);
    const auto all = extended_group_elements(G);
    const auto invols = involutions(G, all);
    const OrbitAtlas atlas(G);
    for (std::size_t id = 0; id < atlas.orbit_count(); ++id) {
      const auto [x, y] = atlas.pair(id);
      const OrbitRec& rec = atlas.orbits()[id];
      CHECK(is_reflexible_exhaustive(G, invols, x, y) == rec.reflexible);
      const SelfDuality sd = self_duality_exhaustive(G, invols, x, y);
      CHECK(sd.positive == rec.pos_self_dual);
      CHECK(sd.negative == rec.neg_self_dual);
    }
  }
  CHECK_THROWS_AS(extended_group_elements(TwistedGroup(11, 1)), std::length_error);
}

TEST_CASE("full brute force at q = 3") {
  const TwistedGroup G(3, 1);
  const std::uint64_t pairs = bruteforce_generating_pairs(G, extended_group_elements(G));
  CHECK(pairs == 7 * 1440);
}

TEST_CASE("self-duality") {
  const TwistedGroup G(3, 1);
  const OrbitAtlas atlas(G);
  for (std::size_t id = 0; id < atlas.orbit_count(); ++id) {
    const OrbitRec& rec = atlas.orbits()[id];
    if (rec.k == rec.l) {
      const SelfDuality sd = self_duality(atlas, id);
      CHECK(sd.positive);
      CHECK(sd.negative);
    } else {
      CHECK_THROWS_AS(self_duality(atlas, id), std::domain_error);
    }
  }
}

TEST_CASE("self-dual table") {
  for (const auto& ref : selfdual_reference()) {
    if (ref.q > 13) continue;
    const TwistedGroup G = group_for(ref.q);
    const SelfDualTable t = selfdual_table(OrbitAtlas(G));
    CHECK(t.dia == ref.dia);
    CHECK(t.off == ref.off);
    CHECK(t.neg_not_pos == 0);
  }
}

TEST_CASE("types of generating pairs") {
  for (std::uint64_t q : {3, 5, 7, 9}) {
    const TwistedGroup G = group_for(q);
    const OrbitAtlas atlas(G);
    for (std::size_t id = 0; id < atlas.orbit_count(); ++id) {
      const OrbitRec& rec = atlas.orbits()[id];
      const auto [x, y] = atlas.pair(id);
      CHECK(rec.k == G.order(x));
      CHECK(rec.l == G.order(y));
      CHECK_FALSE((rec.k == 4 && rec.l == 4));
      CHECK_FALSE(type_obstruction(rec.k, rec.l));
    }
  }
}

TEST_CASE("deterministic across thread counts") {
  const TwistedGroup G(7, 1);
  const OrbitAtlas one(G, {1, true}), four(G, {4, true});
  REQUIRE(one.orbit_count() == four.orbit_count());
  for (std::size_t id = 0; id < one.orbit_count(); ++id) {
    const OrbitRec &a = one.orbits()[id], &b = four.orbits()[id];
    CHECK(a.key == b.key);
    CHECK(a.galois_image == b.galois_image);
    CHECK(a.swap_orbit == b.swap_orbit);
    CHECK(a.reflexible == b.reflexible);
  }
}
