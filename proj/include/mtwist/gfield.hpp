#pragma once

// Arithmetic in GF(p^m) for odd p.
//
// An element is stored as the integer sum c_k p^k of its coefficient vector
// (c_0 least significant) over the fixed modulus. That integer is the
// canonical encoding used for ordering, hashing and serialization.
// Fields with p^m <= 2^20 carry log/antilog/Zech tables built once at
// construction; larger fields fall back to polynomial arithmetic.

#include <compare>
#include <functional>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mtwist {

struct Elem {
  std::uint32_t v = 0;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

class Field {
 public:
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

  /// Builds GF(p^m) over the first monic irreducible of degree m in scan order.
  /// Throws std::invalid_argument unless p is an odd prime, m >= 1 and p^m < 2^32.
  Field(std::uint32_t p, unsigned m);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return m_; }
  std::uint64_t size() const { return size_; }
  /// Monic modulus, coefficients low degree first (length m + 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool has_tables() const { return !exp_.empty(); }

  Elem zero() const { return {0}; }
  Elem one() const { return {1}; }
  Elem from_int(std::int64_t n) const;
  Elem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(Elem x) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  /// Throws std::domain_error on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  /// Negative exponents require a != 0.
  Elem pow(Elem a, std::int64_t e) const;

  /// x^(p^k).
  Elem frobenius(Elem x, unsigned k) const;

  /// Euler criterion. Throws std::domain_error for x = 0.
  bool is_square(Elem x) const;

  /// First generator of the multiplicative group in encoding order.
  Elem primitive() const { return xi_; }

  /// Discrete log to base primitive(), in [0, size-1). Throws on zero.
  std::uint64_t log(Elem x) const;
  /// primitive()^k, any integer k.
  Elem exp(std::int64_t k) const;

  /// All z with z^r = w, ascending. Throws std::invalid_argument if w = 0 or r = 0.
  std::vector<Elem> nth_roots(Elem w, std::uint64_t r) const;
  /// Some square root of x, if x is a square (0 maps to 0).
  std::optional<Elem> sqrt(Elem x) const;

  /// True iff x lies in GF(p^d). Throws std::invalid_argument unless d divides m.
  bool in_subfield(Elem x, unsigned d) const;

  std::string to_string(Elem x) const;

 private:
  std::vector<std::uint32_t> poly_mulmod(const std::vector<std::uint32_t>& a,
                                         const std::vector<std::uint32_t>& b) const;
  Elem slow_mul(Elem a, Elem b) const;
  Elem slow_pow(Elem a, std::uint64_t e) const;
  Elem digit_add(Elem a, Elem b) const;
  std::uint64_t slow_log(Elem x) const;
  void build_tables();

  std::uint32_t p_;
  unsigned m_;
  std::uint64_t size_;
  std::vector<std::uint32_t> modulus_;
  Elem xi_;
  std::vector<std::uint32_t> log_;   // indexed by encoding
  std::vector<std::uint32_t> exp_;   // length 2(size-1)
  std::vector<std::uint32_t> zech_;  // log(1 + xi^n), kNoZech when 1 + xi^n = 0
};

/// Field constructor as a free function.
inline Field make_field(std::uint32_t p, unsigned m) { return Field(p, m); }

/// Rabin irreducibility test for a monic polynomial over GF(p), coefficients low first.
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

}  // namespace mtwist

template <>
struct std::hash<mtwist::Elem> {
  std::size_t operator()(mtwist::Elem e) const noexcept { return e.v; }
};
