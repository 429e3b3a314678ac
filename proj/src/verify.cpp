#include "mtwist/verify.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "mtwist/canonical.hpp"
#include "mtwist/census.hpp"
#include "mtwist/numtheory.hpp"
#include "mtwist/oracle.hpp"

namespace mtwist {

namespace {

constexpr std::uint64_t kExhaustiveLimit = 500000;  // extended-group elements for involution scans
constexpr std::uint64_t kFullClosureLimit = 20000;  // |M(q^2)| for per-orbit full closure
constexpr int kWitnessSamples = 1000;

void add_orbit_checks(Verification& v, const OrbitAtlas& atlas) {
  const TwistedGroup& G = atlas.group();
  const std::uint64_t p = G.p(), f = G.f(), q = G.q();
  const OrbitCounts n = orbit_counts(q);
  v.add("dia orbits = n1+n2", n.dia(), BigInt(atlas.count_form(Form::Dia)));
  v.add("off orbits = n3+n4", n.off(), BigInt(atlas.count_form(Form::Off)));
  v.add("total orbits = (q^2-1)(q^2-2)/8", total_orbit_identity(q), BigInt(atlas.orbit_count()));

  bool semiregular = true, order4 = false, obstructed = false;
  for (const auto& rec : atlas.orbits()) {
    semiregular &= rec.size == stabilizer_elements(G, rec.key.cls).size();
    order4 |= rec.k == 4 && rec.l == 4;
    obstructed |= rec.level == f && type_obstruction(rec.k, rec.l);
  }
  v.add("orbits semiregular", true, semiregular);
  v.add("no pair with both orders 4", false, order4);
  v.add("no generating pair of an obstructed type", false, obstructed);

  FusionResult fu;
  bool fused = true;
  try {
    fu = galois_fuse(atlas);
  } catch (const std::logic_error&) {
    fused = false;
  }
  v.add("generating bundles all of size f", true, fused);
  v.add("generating orbits", count_generating_orbits(p, f), BigInt(fu.orbits));
  v.add("maps", count_maps(p, f), BigInt(fu.bundles));

  const ReflexibleTally rt = reflexible_tally(atlas);
  const ReflexibleCounts rc = reflexible_orbit_counts(q);
  v.add("reflexible dia orbits = r1+r2", rc.R1(), BigInt(rt.dia_orbits));
  v.add("reflexible off orbits = r3+r4", rc.R2(), BigInt(rt.off_orbits));
  v.add("reflexible generating orbits", count_generating_reflexible_orbits(p, f), BigInt(rt.generating_orbits));
  v.add("reflexible maps", count_reflexible_maps(p, f), BigInt(rt.maps));
  v.add("shape search agrees with inverse-orbit lookup", std::size_t{0}, rt.shape_vs_orbit_mismatches);
  v.notes.emplace_back("non-generating orbits", std::to_string(fu.other_orbits));
}

}  // namespace

Verification verify_formulas(std::uint64_t p, unsigned f) {
  Verification v;
  const CensusReport r = make_report(p, f);
  v.q = static_cast<std::uint64_t>(r.q);
  v.level = "formulas";
  const BigInt& q = r.q;
  v.add("n1+n2+n3+n4 = (q^2-1)(q^2-2)/8", total_orbit_identity(q), r.total_orbits);
  v.add("n_F = (q^2-1)/4", BigInt((q * q - 1) / 4), n_F(q));
  v.add("R1 = (q^2-1)(3q-5)/16", BigInt((q * q - 1) * (3 * q - 5) / 16), r.R1);
  v.add("R2 = (q^2-1)(3q+1)/16", BigInt((q * q - 1) * (3 * q + 1) / 16), r.R2);
  v.add("R = (q^2-1)(3q-2)/8", reflexible_total_identity(q), r.R);

  const auto [alpha, o] = split_two(f);
  BigInt resum = 0, resum_refl = 0;
  for (std::uint64_t d : twisted_divisors(f)) {
    resum += count_generating_orbits(p, d);
    resum_refl += count_generating_reflexible_orbits(p, d);
  }
  v.add("sum of orb over twisted divisors = h(f)", h(p, f), resum);
  v.add("sum of reflexible orb over twisted divisors = htilde(f)", htilde(p, f), resum_refl);
  v.add("map_count * f = orb_f", r.orb_f, BigInt(r.map_count * f));
  v.add("reflexible_count <= map_count", true, r.reflexible_count <= r.map_count);
  v.add("twisted divisor count = divisor count of o", divisors(o).size(), r.divisors.size());
  v.add("f = 2^alpha o", std::uint64_t{f}, (std::uint64_t{1} << alpha) * o);
  return v;
}

Verification verify_orbits(std::uint64_t p, unsigned f, unsigned threads) {
  const TwistedGroup G(static_cast<std::uint32_t>(p), f);
  const OrbitAtlas atlas(G, {threads, true});
  Verification v;
  v.q = G.q();
  v.level = "orbits";
  add_orbit_checks(v, atlas);
  return v;
}

Verification verify_bruteforce(std::uint64_t p, unsigned f, unsigned threads, std::uint64_t seed) {
  const TwistedGroup G(static_cast<std::uint32_t>(p), f);
  const OrbitAtlas atlas(G, {threads, true});
  Verification v;
  v.q = G.q();
  v.level = "bruteforce";
  add_orbit_checks(v, atlas);
  const std::uint64_t q = G.q();
  const std::uint64_t group_order = twisted_group_order(p, f);

  if (2 * group_order <= kExhaustiveLimit) {
    const auto elements = extended_group_elements(G, kExhaustiveLimit);
    const auto invols = involutions(G, elements);
    std::size_t refl_bad = 0, sd_bad = 0;
    for (std::size_t id = 0; id < atlas.orbit_count(); ++id) {
      const auto [x, y] = atlas.pair(id);
      const OrbitRec& rec = atlas.orbits()[id];
      refl_bad += is_reflexible_exhaustive(G, invols, x, y) != rec.reflexible;
      const SelfDuality sd = self_duality_exhaustive(G, invols, x, y);
      sd_bad += sd.positive != rec.pos_self_dual || sd.negative != rec.neg_self_dual;
    }
    v.add("reflexibility vs exhaustive involution scan (mismatches)", std::size_t{0}, refl_bad);
    v.add("self-duality vs exhaustive involution scan (mismatches)", std::size_t{0}, sd_bad);
    std::size_t stab_bad = 0;
    for (const auto& c : canonical_classes(q)) {
      const auto listed = stabilizer_elements(G, c);
      const auto scanned = stabilizer_exhaustive(G, elements, representative(G, c));
      stab_bad += std::set<TwElem>(listed.begin(), listed.end()) != std::set<TwElem>(scanned.begin(), scanned.end());
    }
    v.add("stabilizer lists vs exhaustive scan (mismatches)", std::size_t{0}, stab_bad);
    if (q == 3) {
      const std::uint64_t pairs = bruteforce_generating_pairs(G, elements);
      v.add("generating pairs / |extended group|", count_generating_orbits(p, f),
            BigInt(pairs / (2 * group_order)));
      v.add("generating pairs divisible by |extended group|", std::uint64_t{0}, pairs % (2 * group_order));
    }
  }

  std::size_t level_bad = 0;
  const bool full_closure = group_order <= kFullClosureLimit;
  const bool proper_levels = twisted_divisors(f).size() > 1;
  if (full_closure || proper_levels) {
    for (std::size_t id = 0; id < atlas.orbit_count(); ++id) {
      const auto [x, y] = atlas.pair(id);
      const unsigned level = generated_level_closure(G, x, y);
      level_bad += level != atlas.orbits()[id].level;
      if (full_closure) level_bad += closure_size(G, {x, y}, group_order) != group_order;
    }
    v.add("generated level vs closure (mismatches)", std::size_t{0}, level_bad);
  }

  std::mt19937_64 rng(seed);
  const auto Q = static_cast<std::uint32_t>(G.field().size());
  std::uniform_int_distribution<std::uint32_t> pick(0, Q - 1);
  std::size_t witness_bad = 0;
  for (int n = 0; n < kWitnessSamples;) {
    const Mat2 m{Elem{pick(rng)}, Elem{pick(rng)}, Elem{pick(rng)}, Elem{pick(rng)}};
    if (G.det(m).v == 0 || G.iota(m) != 1) continue;
    ++n;
    const TwElem x = G.make(m, 1);
    const CanonicalForm cf = canonical_form(G, x);
    witness_bad += G.conjugate(x, cf.witness) != representative(G, cf.cls);
    witness_bad += G.order(x) != canonical_order(cf.cls, q) || G.order(x) % 4 != 0;
  }
  v.add("sampled canonical witnesses and orders (mismatches)", std::size_t{0}, witness_bad);
  return v;
}

Verification verify_selfdual(std::uint64_t p, unsigned f, unsigned threads) {
  const TwistedGroup G(static_cast<std::uint32_t>(p), f);
  const auto& refs = selfdual_reference();
  const auto it = std::find_if(refs.begin(), refs.end(), [&](const auto& r) { return r.q == G.q(); });
  if (it == refs.end()) throw std::invalid_argument("verify: no self-dual reference row for q=" + std::to_string(G.q()));
  const OrbitAtlas atlas(G, {threads, true});
  const SelfDualTable t = selfdual_table(atlas);
  Verification v;
  v.q = G.q();
  v.level = "selfdual";
  for (const auto& [name, want, got] : {std::tuple{"dia", it->dia, t.dia}, std::tuple{"off", it->off, t.off}}) {
    v.add(std::string(name) + " k=l", want.k_eq_l, got.k_eq_l);
    v.add(std::string(name) + " positive", want.pos, got.pos);
    v.add(std::string(name) + " negative", want.neg, got.neg);
    v.add(std::string(name) + " both", want.both, got.both);
  }
  v.notes.emplace_back("negatively but not positively self-dual maps", std::to_string(t.neg_not_pos));
  return v;
}

}  // namespace mtwist
