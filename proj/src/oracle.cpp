#include "mtwist/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "mtwist/census.hpp"
#include "mtwist/numtheory.hpp"

namespace mtwist {

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first failure.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

Elem lambda_sigma(const TwistedGroup& G, const CanonClass& c) { return G.sigma(class_lambda(G, c)); }

Elem quad_u(const TwistedGroup& G, const CanonClass& c, Elem e1, Elem e2) {
  const Field& F = G.field();
  return F.add(F.mul(e1, e2), lambda_sigma(G, c));
}

bool is_involution(const TwistedGroup& G, const TwElem& g) { return !G.is_identity(g) && G.is_identity(G.mul(g, g)); }

}  // namespace

Mat2 quad_matrix(const TwistedGroup& G, const CanonClass& c, Elem e1, Elem e2) {
  const Field& F = G.field();
  const Elem minus_one = F.neg(F.one());
  const Elem ls = lambda_sigma(G, c);
  if (c.form == Form::Dia) return {minus_one, e1, e2, ls};
  return {e1, ls, minus_one, e2};
}

std::pair<TwElem, TwElem> quad_pair(const TwistedGroup& G, const PairQuad& quad) {
  return {G.make(quad_matrix(G, quad.cls, quad.e1, quad.e2), 1), representative(G, quad.cls)};
}

std::optional<std::pair<Elem, Elem>> quad_entries(const TwistedGroup& G, const CanonClass& c, const TwElem& x) {
  const Field& F = G.field();
  if (x.twist != 1) return std::nullopt;
  const Mat2& m = x.m;
  const Elem ls = lambda_sigma(G, c);
  if (c.form == Form::Dia) {
    if (m.a.v == 0) return std::nullopt;
    const Elem s = F.neg(F.inv(m.a));
    if (F.mul(s, m.d) != ls) return std::nullopt;
    return std::pair{F.mul(s, m.b), F.mul(s, m.c)};
  }
  if (m.c.v == 0) return std::nullopt;
  const Elem s = F.neg(F.inv(m.c));
  if (F.mul(s, m.b) != ls) return std::nullopt;
  return std::pair{F.mul(s, m.a), F.mul(s, m.d)};
}

bool is_nonsingular(const TwistedGroup& G, const CanonClass& c, Elem e1, Elem e2) {
  const Field& F = G.field();
  if (c.form == Form::Dia) {
    if (e1.v == 0 || e2.v == 0) return false;
  } else if (e1.v == 0 && e2.v == 0) {
    return false;
  }
  const Elem u = quad_u(G, c, e1, e2);
  if (u.v == 0 || F.is_square(u)) return false;
  if (canonical_order(c, G.q()) == 4) {
    const Mat2 A = quad_matrix(G, c, e1, e2);
    if (G.trace(G.mat_mul(A, G.sigma(A))).v == 0) return false;
  }
  return true;
}

std::vector<PairQuad> enumerate_quads(const TwistedGroup& G, const CanonClass& c) {
  const auto Q = static_cast<std::uint32_t>(G.field().size());
  std::vector<PairQuad> out;
  for (std::uint32_t a = 0; a < Q; ++a)
    for (std::uint32_t b = 0; b < Q; ++b)
      if (is_nonsingular(G, c, Elem{a}, Elem{b})) out.push_back({c, Elem{a}, Elem{b}, quad_u(G, c, Elem{a}, Elem{b})});
  return out;
}

std::vector<PairQuad> enumerate_quads(const TwistedGroup& G) {
  std::vector<PairQuad> out;
  for (const auto& c : canonical_classes(G.q())) {
    auto block = enumerate_quads(G, c);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

Partition orbit_partition(const TwistedGroup& G, const CanonClass& c, const std::vector<PairQuad>& quads) {
  const std::uint64_t Q = G.field().size();
  constexpr std::int32_t kMember = -2;
  Partition part;
  part.orbit_of.assign(Q * Q, -1);
  for (const auto& quad : quads) {
    if (quad.cls != c) throw std::invalid_argument("orbit_partition: quadruple from another class");
    part.orbit_of[quad.e1.v * Q + quad.e2.v] = kMember;
  }
  const auto stab = stabilizer_elements(G, c);
  for (const auto& quad : quads) {
    const std::uint64_t start = quad.e1.v * Q + quad.e2.v;
    if (part.orbit_of[start] != kMember) continue;
    const auto id = static_cast<std::int32_t>(part.orbits.size());
    const TwElem x = quad_pair(G, quad).first;
    std::uint64_t size = 0, least = start;
    for (const auto& s : stab) {
      const auto entries = quad_entries(G, c, G.conjugate(x, s));
      if (!entries) throw std::logic_error("orbit_partition: stabilizer image leaves the normal form");
      const std::uint64_t idx = entries->first.v * Q + entries->second.v;
      if (part.orbit_of[idx] == kMember) {
        part.orbit_of[idx] = id;
        ++size;
        least = std::min(least, idx);
      } else if (part.orbit_of[idx] != id) {
        throw std::logic_error("orbit_partition: stabilizer image outside the quadruple set");
      }
    }
    if (size != stab.size()) throw std::logic_error("orbit_partition: orbit is not semiregular");
    const Elem e1{static_cast<std::uint32_t>(least / Q)}, e2{static_cast<std::uint32_t>(least % Q)};
    OrbitRec rec;
    rec.key = {c, e1, e2, quad_u(G, c, e1, e2)};
    rec.size = size;
    part.orbits.push_back(rec);
  }
  return part;
}

unsigned generated_level(const TwistedGroup& G, const TwElem& x, const TwElem& y) {
  const Field& F = G.field();
  const Mat2 &A = x.m, &B = y.m;
  const Mat2 gens[3] = {G.mat_mul(B, G.sigma(B)), G.mat_mul(A, G.sigma(B)), G.mat_mul(B, G.sigma(A))};
  std::vector<Elem> invariants;
  std::vector<Mat2> layer(gens, gens + 3);
  for (int len = 1; len <= 3; ++len) {
    std::vector<Mat2> next;
    for (const auto& M : layer) {
      const Elem t = G.trace(M);
      invariants.push_back(F.div(F.mul(t, t), G.det(M)));
      if (len < 3)
        for (const auto& g : gens) next.push_back(G.normalize(G.mat_mul(M, g)));
    }
    layer = std::move(next);
  }
  for (std::uint64_t e : twisted_divisors(G.f())) {
    const auto d = static_cast<unsigned>(2 * e);
    if (std::all_of(invariants.begin(), invariants.end(), [&](Elem v) { return F.in_subfield(v, d); }))
      return static_cast<unsigned>(e);
  }
  throw std::logic_error("generated_level: no admissible level");
}

std::uint64_t closure_size(const TwistedGroup& G, const std::vector<TwElem>& gens, std::uint64_t cap) {
  std::unordered_set<TwElem> seen{G.identity()};
  std::vector<TwElem> frontier{G.identity()};
  while (!frontier.empty()) {
    std::vector<TwElem> next;
    for (const auto& e : frontier) {
      for (const auto& g : gens) {
        TwElem n = G.mul(e, g);
        if (seen.insert(n).second) {
          if (seen.size() > cap) return cap + 1;
          next.push_back(n);
        }
      }
    }
    frontier = std::move(next);
  }
  return seen.size();
}

std::uint64_t twisted_group_order(std::uint64_t p, unsigned e) {
  const std::uint64_t Q = checked_pow(p, 2 * e);
  return Q * (Q * Q - 1);
}

unsigned generated_level_closure(const TwistedGroup& G, const TwElem& x, const TwElem& y) {
  for (std::uint64_t e : twisted_divisors(G.f())) {
    if (e == G.f()) break;
    const std::uint64_t target = twisted_group_order(G.p(), static_cast<unsigned>(e));
    const std::uint64_t size = closure_size(G, {x, y}, target);
    if (size == target) return static_cast<unsigned>(e);
    if (size < target) throw std::logic_error("generated_level_closure: pair generates no twisted subgroup");
  }
  return G.f();
}

std::vector<TwElem> inverting_involution_candidates(const TwistedGroup& G, const CanonClass& c) {
  const Field& F = G.field();
  const std::uint64_t q = G.q();
  const Elem one = F.one(), lambda = class_lambda(G, c);
  std::vector<TwElem> out;
  if (c.form == Form::Dia) {
    for (Elem beta : F.nth_roots(F.pow(lambda, static_cast<std::int64_t>(q - 1)), q - 1))
      out.push_back(G.make(G.off(beta, one), 0));
    for (Elem beta : F.nth_roots(one, q - 1)) out.push_back(G.make(G.off(beta, one), 1));
  } else {
    for (Elem beta : F.nth_roots(F.pow(lambda, static_cast<std::int64_t>(q + 1)), q + 1))
      out.push_back(G.make(G.off(beta, one), 0));
    for (Elem delta : F.nth_roots(one, q + 1)) out.push_back(G.make(G.dia(one, delta), 1));
  }
  const TwElem y = representative(G, c), y_inv = G.inv(y);
  std::erase_if(out, [&](const TwElem& g) { return !is_involution(G, g) || G.conjugate(y, g) != y_inv; });
  return out;
}

bool is_reflexible(const TwistedGroup& G, const PairQuad& quad) {
  const auto [x, y] = quad_pair(G, quad);
  const TwElem x_inv = G.inv(x);
  for (const auto& g : inverting_involution_candidates(G, quad.cls))
    if (G.conjugate(x, g) == x_inv) return true;
  return false;
}

OrbitAtlas::OrbitAtlas(const TwistedGroup& G, const AtlasOptions& options)
    : G_(G), classes_(canonical_classes(G.q())) {
  std::vector<Partition> parts(classes_.size());
  parallel_for(classes_.size(), options.threads,
               [&](std::size_t b) { parts[b] = orbit_partition(G_, classes_[b], enumerate_quads(G_, classes_[b])); });
  for (auto& part : parts) {
    offsets_.push_back(orbits_.size());
    orbits_.insert(orbits_.end(), part.orbits.begin(), part.orbits.end());
    orbit_of_.push_back(std::move(part.orbit_of));
  }
  if (!options.annotate) return;

  const std::uint64_t q = G_.q();
  auto must = [](std::optional<std::size_t> id, const char* what) {
    if (!id) throw std::logic_error(std::string("OrbitAtlas: image is not a non-singular pair: ") + what);
    return *id;
  };
  parallel_for(orbits_.size(), options.threads, [&](std::size_t id) {
    OrbitRec& rec = orbits_[id];
    const auto [x, y] = quad_pair(G_, rec.key);
    const TwElem x_inv = G_.inv(x), y_inv = G_.inv(y);
    rec.level = generated_level(G_, x, y);
    rec.k = canonical_order(canonical_form(G_, x).cls, q);
    rec.l = canonical_order(rec.key.cls, q);
    rec.galois_image = must(locate(G_.galois(x, 1), G_.galois(y, 1)), "galois");
    rec.inverse_orbit = must(locate(x_inv, y_inv), "inverse");
    rec.swap_orbit = must(locate(y, x), "swap");
    rec.neg_swap_orbit = must(locate(y_inv, x_inv), "negative swap");
    rec.reflexible_orbit = rec.inverse_orbit == id;
    rec.pos_self_dual = rec.swap_orbit == id;
    rec.neg_self_dual = rec.neg_swap_orbit == id;
    rec.reflexible = is_reflexible(G_, rec.key);
  });

  std::vector<bool> placed(orbits_.size(), false);
  for (std::size_t id = 0; id < orbits_.size(); ++id) {
    if (placed[id]) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t cur = id; !placed[cur]; cur = orbits_[cur].galois_image) {
      placed[cur] = true;
      cycle.push_back(cur);
    }
    if (orbits_[cycle.back()].galois_image != id) throw std::logic_error("OrbitAtlas: Galois action is not a permutation");
    for (std::size_t member : cycle) orbits_[member].bundle = bundles_.size();
    bundles_.push_back(std::move(cycle));
  }
}

std::size_t OrbitAtlas::class_index(const CanonClass& c) const {
  const std::size_t dia_count = (G_.q() + 1) / 4;
  return c.form == Form::Dia ? (c.i - 1) / 2 : dia_count + (c.i - 1) / 2;
}

std::size_t OrbitAtlas::count_form(Form form) const {
  return static_cast<std::size_t>(
      std::count_if(orbits_.begin(), orbits_.end(), [&](const OrbitRec& r) { return r.key.cls.form == form; }));
}

std::optional<std::size_t> OrbitAtlas::locate(const TwElem& x, const TwElem& y) const {
  if (x.twist != 1 || y.twist != 1 || !G_.in_G(x) || !G_.in_G(y)) return std::nullopt;
  const CanonicalForm cf = canonical_form(G_, y);
  const auto entries = quad_entries(G_, cf.cls, G_.conjugate(x, cf.witness));
  if (!entries) return std::nullopt;
  const std::size_t b = class_index(cf.cls);
  const std::int32_t local = orbit_of_[b][entries->first.v * G_.field().size() + entries->second.v];
  if (local < 0) return std::nullopt;
  return offsets_[b] + static_cast<std::size_t>(local);
}

FusionResult galois_fuse(const OrbitAtlas& atlas) {
  FusionResult r;
  const unsigned f = atlas.group().f();
  for (const auto& bundle : atlas.bundles()) {
    if (atlas.orbits()[bundle.front()].level == f) {
      r.orbits += bundle.size();
      ++r.bundles;
      if (bundle.size() != f) r.all_full = false;
    } else {
      r.other_orbits += bundle.size();
      ++r.other_bundles;
    }
  }
  if (!r.all_full) throw std::logic_error("galois_fuse: a generating bundle is not of size f");
  return r;
}

ReflexibleTally reflexible_tally(const OrbitAtlas& atlas) {
  ReflexibleTally t;
  const auto& orbits = atlas.orbits();
  const unsigned f = atlas.group().f();
  for (const auto& rec : orbits) {
    if (rec.reflexible != rec.reflexible_orbit) ++t.shape_vs_orbit_mismatches;
    if (!rec.reflexible) continue;
    (rec.key.cls.form == Form::Dia ? t.dia_orbits : t.off_orbits)++;
    if (rec.level == f) ++t.generating_orbits;
  }
  for (const auto& bundle : atlas.bundles()) {
    const OrbitRec& rec = orbits[bundle.front()];
    if (rec.level == f && orbits[rec.inverse_orbit].bundle == rec.bundle) ++t.maps;
  }
  return t;
}

SelfDuality self_duality(const OrbitAtlas& atlas, std::size_t id) {
  const OrbitRec& rec = atlas.orbits().at(id);
  if (rec.k != rec.l) throw std::domain_error("self_duality: generator orders differ");
  return {rec.pos_self_dual, rec.neg_self_dual};
}

SelfDualTable selfdual_table(const OrbitAtlas& atlas) {
  SelfDualTable table;
  table.q = atlas.group().q();
  const auto& orbits = atlas.orbits();
  const unsigned f = atlas.group().f();
  for (const auto& bundle : atlas.bundles()) {
    const OrbitRec& rec = orbits[bundle.front()];
    if (rec.level != f || rec.k != rec.l) continue;
    SelfDualRow& row = rec.key.cls.form == Form::Dia ? table.dia : table.off;
    const bool pos = orbits[rec.swap_orbit].bundle == rec.bundle;
    const bool neg = orbits[rec.neg_swap_orbit].bundle == rec.bundle;
    ++row.k_eq_l;
    row.pos += pos;
    row.neg += neg;
    row.both += pos && neg;
    table.neg_not_pos += neg && !pos;
  }
  return table;
}

const std::vector<SelfDualReference>& selfdual_reference() {
  static const std::vector<SelfDualReference> rows = {
      {3, {0, 0, 0, 0}, {3, 3, 3, 3}},
      {5, {15, 15, 5, 5}, {10, 10, 6, 6}},
      {7, {28, 28, 8, 8}, {78, 42, 14, 14}},
      {9, {95, 45, 9, 9}, {68, 36, 10, 10}},
      {11, {276, 132, 24, 24}, {265, 165, 33, 33}},
      {13, {469, 273, 39, 39}, {666, 234, 42, 42}},
      {17, {2556, 612, 68, 68}, {1312, 544, 72, 72}},
      {19, {1960, 760, 80, 80}, {2799, 855, 95, 95}},
  };
  return rows;
}

std::vector<TwElem> extended_group_elements(const TwistedGroup& G, std::uint64_t max_elements) {
  const auto Q = static_cast<std::uint32_t>(G.field().size());
  const std::uint64_t total = 2 * (std::uint64_t{Q} * Q * Q - Q);
  if (total > max_elements) throw std::length_error("extended_group_elements: group too large");
  const Elem zero = G.field().zero(), one = G.field().one();
  std::vector<TwElem> out;
  out.reserve(total);
  for (std::uint8_t twist = 0; twist < 2; ++twist) {
    for (std::uint32_t b = 0; b < Q; ++b)
      for (std::uint32_t c = 0; c < Q; ++c)
        for (std::uint32_t d = 0; d < Q; ++d) {
          const Mat2 m{one, Elem{b}, Elem{c}, Elem{d}};
          if (G.det(m).v != 0) out.push_back({m, twist});
        }
    for (std::uint32_t c = 1; c < Q; ++c)
      for (std::uint32_t d = 0; d < Q; ++d) out.push_back({{zero, one, Elem{c}, Elem{d}}, twist});
  }
  return out;
}

std::vector<TwElem> involutions(const TwistedGroup& G, const std::vector<TwElem>& elements) {
  std::vector<TwElem> out;
  for (const auto& g : elements)
    if (is_involution(G, g)) out.push_back(g);
  return out;
}

std::vector<TwElem> stabilizer_exhaustive(const TwistedGroup& G, const std::vector<TwElem>& elements,
                                          const TwElem& x) {
  std::vector<TwElem> out;
  for (const auto& g : elements)
    if (G.conjugate(x, g) == x) out.push_back(g);
  return out;
}

bool is_reflexible_exhaustive(const TwistedGroup& G, const std::vector<TwElem>& invols, const TwElem& x,
                              const TwElem& y) {
  const TwElem x_inv = G.inv(x), y_inv = G.inv(y);
  return std::any_of(invols.begin(), invols.end(),
                     [&](const TwElem& t) { return G.conjugate(y, t) == y_inv && G.conjugate(x, t) == x_inv; });
}

SelfDuality self_duality_exhaustive(const TwistedGroup& G, const std::vector<TwElem>& invols, const TwElem& x,
                                    const TwElem& y) {
  const TwElem x_inv = G.inv(x), y_inv = G.inv(y);
  SelfDuality sd;
  for (const auto& t : invols) {
    const TwElem tx = G.conjugate(x, t);
    if (tx == y && G.conjugate(y, t) == x) sd.positive = true;
    if (tx == y_inv && G.conjugate(y, t) == x_inv) sd.negative = true;
  }
  return sd;
}

std::uint64_t bruteforce_generating_pairs(const TwistedGroup& G, const std::vector<TwElem>& elements) {
  const std::uint64_t order = twisted_group_order(G.p(), G.f());
  std::vector<TwElem> twisted, untwisted_involutions;
  for (const auto& g : elements) {
    if (!G.in_G(g)) continue;
    if (g.twist == 1) twisted.push_back(g);
    else if (is_involution(G, g)) untwisted_involutions.push_back(g);
  }
  // (xy)^2 = 1 forces xy to be an untwisted involution: twisted elements have order divisible by 4.
  std::uint64_t count = 0;
  for (const auto& x : twisted) {
    const TwElem x_inv = G.inv(x);
    for (const auto& t : untwisted_involutions)
      if (closure_size(G, {x, G.mul(x_inv, t)}, order) == order) ++count;
  }
  return count;
}

std::uint64_t order_iterative(const TwistedGroup& G, const TwElem& x, std::uint64_t limit) {
  TwElem cur = x;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (G.is_identity(cur)) return n;
    cur = G.mul(cur, x);
  }
  throw std::runtime_error("order_iterative: limit exceeded");
}

}  // namespace mtwist
