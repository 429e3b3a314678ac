#include "mtwist/twisted_group.hpp"

#include <stdexcept>

#include "mtwist/numtheory.hpp"

namespace mtwist {

TwistedGroup::TwistedGroup(std::uint32_t p, unsigned f) : field_(p, 2 * f), f_(f) {
  q_ = checked_pow(p, f);
  const std::uint64_t qq = q_ * q_;
  // Element orders of PGL(2, q^2) divide p, q^2-1 or q^2+1.
  exponent_ = p;
  for (std::uint64_t part : {qq - 1, (qq + 1) / 2}) {
    if (exponent_ > ~std::uint64_t{0} / part) throw std::overflow_error("TwistedGroup: exponent bound overflows");
    exponent_ *= part;
  }
  for (auto [r, e] : factorize(exponent_)) exponent_primes_.push_back(r);
}

Elem TwistedGroup::det(const Mat2& m) const {
  const Field& F = field_;
  return F.sub(F.mul(m.a, m.d), F.mul(m.b, m.c));
}

Mat2 TwistedGroup::mat_mul(const Mat2& x, const Mat2& y) const {
  const Field& F = field_;
  return {F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)), F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
          F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)), F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
}

Mat2 TwistedGroup::adjugate(const Mat2& m) const {
  const Field& F = field_;
  return {m.d, F.neg(m.b), F.neg(m.c), m.a};
}

Mat2 TwistedGroup::scale(const Mat2& m, Elem s) const {
  const Field& F = field_;
  return {F.mul(m.a, s), F.mul(m.b, s), F.mul(m.c, s), F.mul(m.d, s)};
}

Mat2 TwistedGroup::normalize(const Mat2& m) const {
  const Elem lead = m.a.v != 0 ? m.a : m.b.v != 0 ? m.b : m.c.v != 0 ? m.c : m.d;
  if (lead.v == 0) throw std::domain_error("TwistedGroup::normalize: zero matrix");
  if (lead == field_.one()) return m;
  return scale(m, field_.inv(lead));
}

std::uint8_t TwistedGroup::iota(const Mat2& m) const {
  const Elem d = det(m);
  if (d.v == 0) throw std::domain_error("TwistedGroup::iota: singular matrix");
  return field_.is_square(d) ? 0 : 1;
}

TwElem TwistedGroup::make(const Mat2& m, std::uint8_t twist) const {
  if (det(m).v == 0) throw std::domain_error("TwistedGroup::make: singular matrix");
  return {normalize(m), static_cast<std::uint8_t>(twist & 1)};
}

TwElem TwistedGroup::mul(const TwElem& x, const TwElem& y) const {
  const Mat2 rhs = x.twist ? sigma(y.m) : y.m;
  return {normalize(mat_mul(x.m, rhs)), static_cast<std::uint8_t>(x.twist ^ y.twist)};
}

TwElem TwistedGroup::inv(const TwElem& x) const {
  const Mat2 base = x.twist ? sigma(x.m) : x.m;
  return {normalize(adjugate(base)), x.twist};
}

TwElem TwistedGroup::pow(TwElem x, std::uint64_t e) const {
  TwElem r = identity();
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

TwElem TwistedGroup::conjugate(const TwElem& x, const TwElem& g) const { return mul(mul(inv(g), x), g); }

std::uint64_t TwistedGroup::projective_order(const Mat2& m) const {
  auto power_is_scalar = [&](std::uint64_t e) {
    Mat2 r = identity_matrix(), base = m;
    while (e) {
      if (e & 1) r = normalize(mat_mul(r, base));
      base = normalize(mat_mul(base, base));
      e >>= 1;
    }
    return is_scalar(r);
  };
  std::uint64_t n = exponent_;
  for (std::uint64_t r : exponent_primes_) {
    while (n % r == 0 && power_is_scalar(n / r)) n /= r;
  }
  return n;
}

std::uint64_t TwistedGroup::order(const TwElem& x) const {
  if (x.twist == 0) return projective_order(x.m);
  return 2 * projective_order(mat_mul(x.m, sigma(x.m)));
}

bool TwistedGroup::in_G0(const TwElem& x) const {
  if (!in_G(x)) throw std::invalid_argument("TwistedGroup::in_G0: element is not in M(q^2)");
  return x.twist == 0;
}

TwElem TwistedGroup::galois(const TwElem& x, unsigned j) const {
  const Field& F = field_;
  return {normalize({F.frobenius(x.m.a, j), F.frobenius(x.m.b, j), F.frobenius(x.m.c, j), F.frobenius(x.m.d, j)}),
          x.twist};
}

}  // namespace mtwist
