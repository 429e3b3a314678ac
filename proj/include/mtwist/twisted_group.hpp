#pragma once

// Projective twisted elements [A,i] of M(q^2) and of its split extension by
// the involutory field automorphism sigma: x -> x^q, over F = GF(q^2).
//
// Multiplication follows the semidirect rule (A,i)(B,j) = (A sigma^i(B), i+j).
// Elements are stored normalized: the first nonzero matrix entry in row-major
// order is 1, so equality of classes is equality of the stored tuple.

#include <compare>
#include <cstdint>
#include <functional>

#include "mtwist/gfield.hpp"

namespace mtwist {

struct Mat2 {
  Elem a, b, c, d;  // rows (a, b), (c, d)
  friend constexpr auto operator<=>(const Mat2&, const Mat2&) = default;
};

struct TwElem {
  Mat2 m;
  std::uint8_t twist = 0;
  friend constexpr auto operator<=>(const TwElem&, const TwElem&) = default;
};

class TwistedGroup {
 public:
  /// M(q^2) with q = p^f; builds F = GF(p^(2f)).
  TwistedGroup(std::uint32_t p, unsigned f);

  const Field& field() const { return field_; }
  std::uint32_t p() const { return field_.characteristic(); }
  unsigned f() const { return f_; }
  std::uint64_t q() const { return q_; }
  Elem xi() const { return field_.primitive(); }

  Elem sigma(Elem x) const { return field_.frobenius(x, f_); }
  Mat2 sigma(const Mat2& m) const { return {sigma(m.a), sigma(m.b), sigma(m.c), sigma(m.d)}; }

  Mat2 dia(Elem alpha, Elem beta) const { return {alpha, field_.zero(), field_.zero(), beta}; }
  /// Off-diagonal entries alpha (top right) and beta (bottom left).
  Mat2 off(Elem alpha, Elem beta) const { return {field_.zero(), alpha, beta, field_.zero()}; }
  Mat2 identity_matrix() const { return dia(field_.one(), field_.one()); }

  Elem det(const Mat2& m) const;
  Elem trace(const Mat2& m) const { return field_.add(m.a, m.d); }
  Mat2 mat_mul(const Mat2& x, const Mat2& y) const;
  /// Adjugate; equals the inverse up to the scalar det.
  Mat2 adjugate(const Mat2& m) const;
  Mat2 scale(const Mat2& m, Elem s) const;
  /// Scales so that the first nonzero entry in row-major order is 1.
  Mat2 normalize(const Mat2& m) const;
  bool is_scalar(const Mat2& m) const { return m.b.v == 0 && m.c.v == 0 && m.a == m.d; }

  /// 0 if det(A) is a nonzero square, 1 otherwise. Throws std::domain_error if singular.
  std::uint8_t iota(const Mat2& m) const;

  /// Normalized element of the extended group; throws std::domain_error if singular.
  TwElem make(const Mat2& m, std::uint8_t twist) const;
  /// Element of M(q^2): twist taken from iota(m).
  TwElem make_g(const Mat2& m) const { return make(m, iota(m)); }
  TwElem identity() const { return {identity_matrix(), 0}; }

  TwElem mul(const TwElem& x, const TwElem& y) const;
  TwElem inv(const TwElem& x) const;
  TwElem pow(TwElem x, std::uint64_t e) const;
  /// g^-1 x g.
  TwElem conjugate(const TwElem& x, const TwElem& g) const;
  bool is_identity(const TwElem& x) const { return x.twist == 0 && is_scalar(x.m); }

  /// Element order via the exponent bound lcm(p, q^2-1, q^2+1), doubled for twisted elements.
  std::uint64_t order(const TwElem& x) const;
  /// Order of A in PGL(2, q^2).
  std::uint64_t projective_order(const Mat2& m) const;

  bool in_G(const TwElem& x) const { return x.twist == iota(x.m); }
  /// Throws std::invalid_argument if x is not in M(q^2).
  bool in_G0(const TwElem& x) const;

  /// Entrywise z -> z^(p^j) (a Galois automorphism; j = f gives sigma).
  TwElem galois(const TwElem& x, unsigned j) const;

 private:
  Field field_;
  unsigned f_;
  std::uint64_t q_;
  std::uint64_t exponent_;  // p (q^2-1)(q^2+1)/2
  std::vector<std::uint64_t> exponent_primes_;
};

}  // namespace mtwist

template <>
struct std::hash<mtwist::TwElem> {
  std::size_t operator()(const mtwist::TwElem& x) const noexcept {
    std::uint64_t h = x.m.a.v;
    h = h * 0x9E3779B97F4A7C15ull + x.m.b.v;
    h = h * 0x9E3779B97F4A7C15ull + x.m.c.v;
    h = h * 0x9E3779B97F4A7C15ull + x.m.d.v;
    h = h * 0x9E3779B97F4A7C15ull + x.twist;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};
