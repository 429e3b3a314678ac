#pragma once

// Brute-force verification layer. Pairs ([A,1],[B,1]) with B a canonical
// representative are enumerated per class block as quadruples, partitioned
// into extended-group orbits with the materialized stabilizers, and then
// annotated: generated level, type, Galois bundle, reflexibility and
// self-duality. Exhaustive references over the whole extended group are
// provided for small q.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mtwist/canonical.hpp"
#include "mtwist/twisted_group.hpp"

namespace mtwist {

/// Dia: A = [[-1, e1], [e2, lambda^sigma]]; Off: A = [[e1, lambda^sigma], [-1, e2]]; u = det A up to sign.
struct PairQuad {
  CanonClass cls;
  Elem e1, e2, u;
  friend constexpr auto operator<=>(const PairQuad&, const PairQuad&) = default;
};

/// The matrix A of a quadruple (entries need not be non-singular).
Mat2 quad_matrix(const TwistedGroup& G, const CanonClass& c, Elem e1, Elem e2);
/// x = [A,1] and y = representative(cls).
std::pair<TwElem, TwElem> quad_pair(const TwistedGroup& G, const PairQuad& quad);
/// Inverse of quad_matrix on a twisted x paired with representative(c); nullopt if x has no such normal form.
std::optional<std::pair<Elem, Elem>> quad_entries(const TwistedGroup& G, const CanonClass& c, const TwElem& x);

/// Determinant in N(F), not triangular (Dia) / off-diagonal (Off), and not both generators of order 4.
bool is_nonsingular(const TwistedGroup& G, const CanonClass& c, Elem e1, Elem e2);

/// Non-singular quadruples of one class block, ordered by (e1, e2) encodings.
std::vector<PairQuad> enumerate_quads(const TwistedGroup& G, const CanonClass& c);
/// All blocks, Dia classes first.
std::vector<PairQuad> enumerate_quads(const TwistedGroup& G);

struct OrbitRec {
  PairQuad key;  // minimum member by (e1, e2) encodings
  std::uint64_t size = 0;
  unsigned level = 0;  // <x,y> is M(p^(2 level))
  std::uint64_t k = 0, l = 0;
  bool reflexible = false;        // extended-group involution search over the candidate shapes
  bool reflexible_orbit = false;  // (x^-1, y^-1) lies in the same orbit
  bool pos_self_dual = false;     // (y, x) lies in the same orbit
  bool neg_self_dual = false;     // (y^-1, x^-1) lies in the same orbit
  std::size_t galois_image = 0, inverse_orbit = 0, swap_orbit = 0, neg_swap_orbit = 0;
  std::size_t bundle = 0;
};

struct Partition {
  std::vector<OrbitRec> orbits;
  std::vector<std::int32_t> orbit_of;  // index e1 * Q + e2, -1 outside the quadruple set
};

/// Partitions one block under the stabilizer of its representative. Throws std::logic_error
/// if a stabilizer image leaves the set or an orbit is not of full stabilizer size.
Partition orbit_partition(const TwistedGroup& G, const CanonClass& c, const std::vector<PairQuad>& quads);

/// Smallest admissible e for which the invariants tr^2/det of short words in
/// B B^sigma, A B^sigma, B A^sigma all lie in GF(p^(2e)).
unsigned generated_level(const TwistedGroup& G, const TwElem& x, const TwElem& y);
/// Size of the subgroup generated by gens, or cap + 1 once it exceeds cap.
std::uint64_t closure_size(const TwistedGroup& G, const std::vector<TwElem>& gens, std::uint64_t cap);
/// Level by capped closure against |M(p^(2e))| for each proper admissible e.
unsigned generated_level_closure(const TwistedGroup& G, const TwElem& x, const TwElem& y);
/// |M(p^(2e))| = Q(Q^2 - 1), Q = p^(2e).
std::uint64_t twisted_group_order(std::uint64_t p, unsigned e);

/// Involutions [C,i] of the candidate shapes inverting the representative of c.
std::vector<TwElem> inverting_involution_candidates(const TwistedGroup& G, const CanonClass& c);
/// Some candidate involution inverts both generators. The quadruple's B is the representative.
bool is_reflexible(const TwistedGroup& G, const PairQuad& quad);

struct AtlasOptions {
  unsigned threads = 1;
  bool annotate = true;  // levels, types, Galois images, duality flags
};

class OrbitAtlas {
 public:
  OrbitAtlas(const TwistedGroup& G, const AtlasOptions& options = {});

  const TwistedGroup& group() const { return G_; }
  const std::vector<OrbitRec>& orbits() const { return orbits_; }
  std::size_t orbit_count() const { return orbits_.size(); }
  std::size_t count_form(Form form) const;

  /// Orbit of an arbitrary pair of twisted elements; nullopt when it is not a non-singular pair.
  std::optional<std::size_t> locate(const TwElem& x, const TwElem& y) const;
  std::pair<TwElem, TwElem> pair(std::size_t id) const { return quad_pair(G_, orbits_[id].key); }

  /// Galois bundles: cycles of z -> z^p on orbits. Filled when annotated.
  const std::vector<std::vector<std::size_t>>& bundles() const { return bundles_; }

 private:
  std::size_t class_index(const CanonClass& c) const;

  const TwistedGroup& G_;
  std::vector<CanonClass> classes_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<std::int32_t>> orbit_of_;
  std::vector<OrbitRec> orbits_;
  std::vector<std::vector<std::size_t>> bundles_;
};

struct FusionResult {
  std::size_t orbits = 0;              // generating orbits
  std::size_t bundles = 0;             // bundles of generating orbits
  bool all_full = true;                // every generating bundle has size f
  std::size_t other_orbits = 0;        // orbits of proper twisted subgroups
  std::size_t other_bundles = 0;
};

/// Bundle counts; throws std::logic_error if a generating bundle is not of size f.
FusionResult galois_fuse(const OrbitAtlas& atlas);

struct ReflexibleTally {
  std::size_t dia_orbits = 0, off_orbits = 0;  // orbits of every level with the reflexible flag
  std::size_t generating_orbits = 0;           // reflexible orbits of generating pairs
  std::size_t maps = 0;                        // generating bundles closed under inversion up to Galois
  std::size_t shape_vs_orbit_mismatches = 0;   // shape search disagreeing with orbit membership
};

ReflexibleTally reflexible_tally(const OrbitAtlas& atlas);

struct SelfDuality {
  bool positive = false;
  bool negative = false;
};

/// Orbit-level self-duality of orbit id. Throws std::domain_error if k != l.
SelfDuality self_duality(const OrbitAtlas& atlas, std::size_t id);

struct SelfDualRow {
  std::uint64_t k_eq_l = 0, pos = 0, neg = 0, both = 0;
  friend bool operator==(const SelfDualRow&, const SelfDualRow&) = default;
};

struct SelfDualTable {
  std::uint64_t q = 0;
  SelfDualRow dia, off;
  std::uint64_t neg_not_pos = 0;  // maps negatively but not positively self-dual
};

/// Counts maps (generating Galois bundles) by the form of y; duality is taken up to Galois.
SelfDualTable selfdual_table(const OrbitAtlas& atlas);

/// Rows for q in {3,5,7,9,11,13,17,19}: (q, dia row, off row).
struct SelfDualReference {
  std::uint64_t q;
  SelfDualRow dia, off;
};
const std::vector<SelfDualReference>& selfdual_reference();

// Exhaustive references over the extended group; sizes grow as q^6.

/// Every element of the extended group. Throws std::length_error above max_elements.
std::vector<TwElem> extended_group_elements(const TwistedGroup& G, std::uint64_t max_elements = 1000000);
std::vector<TwElem> involutions(const TwistedGroup& G, const std::vector<TwElem>& elements);
std::vector<TwElem> stabilizer_exhaustive(const TwistedGroup& G, const std::vector<TwElem>& elements,
                                          const TwElem& x);
bool is_reflexible_exhaustive(const TwistedGroup& G, const std::vector<TwElem>& invols, const TwElem& x,
                              const TwElem& y);
SelfDuality self_duality_exhaustive(const TwistedGroup& G, const std::vector<TwElem>& invols, const TwElem& x,
                                    const TwElem& y);
/// Pairs (x, y) of M(q^2) with (xy)^2 = 1 generating M(q^2), counted without any normal form.
std::uint64_t bruteforce_generating_pairs(const TwistedGroup& G, const std::vector<TwElem>& elements);

/// Element order by repeated multiplication.
std::uint64_t order_iterative(const TwistedGroup& G, const TwElem& x, std::uint64_t limit = 100000);

}  // namespace mtwist
