#include "mtwist/gfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "mtwist/numtheory.hpp"

namespace mtwist {
namespace {

using Poly = std::vector<std::uint32_t>;

constexpr std::uint32_t kNoZech = 0xFFFFFFFFu;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(powmod(a, p - 2, p));
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  }
  trim(r);
  return r;
}

// Remainder of a modulo f (f need not be monic, must be nonzero).
Poly poly_rem(Poly a, const Poly& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint32_t lead_inv = inv_mod_p(f.back(), p);
  while (a.size() >= f.size()) {
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t j = 0; j <= df; ++j) {
      const std::uint64_t sub = factor * f[j] % p;
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly r{1};
  base = poly_rem(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_rem(poly_mul(r, base, p), f, p);
    base = poly_rem(poly_mul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

}  // namespace

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2 || f.back() != 1) throw std::invalid_argument("is_irreducible: expects a monic polynomial");
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  if (m == 1) return true;
  const Poly x{0, 1};
  // frob[k] = x^(p^k) mod f
  std::vector<Poly> frob{poly_rem(x, f, p)};
  for (unsigned k = 1; k <= m; ++k) frob.push_back(poly_powmod(frob.back(), p, f, p));
  if (poly_sub(frob[m], x, p) != Poly{}) return false;
  for (auto [r, e] : factorize(m)) {
    Poly g = poly_gcd(f, poly_sub(frob[m / r], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

Field::Field(std::uint32_t p, unsigned m) : p_(p), m_(m) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("Field: characteristic must be an odd prime");
  if (m < 1) throw std::invalid_argument("Field: degree must be >= 1");
  std::uint64_t size = 1;
  for (unsigned k = 0; k < m; ++k) {
    size *= p;
    if (size >= (std::uint64_t{1} << 32)) throw std::invalid_argument("Field: p^m must be below 2^32");
  }
  size_ = size;

  // Scan monic tails a_0 + a_1 p + ... in increasing integer value.
  const std::uint64_t tails = size_;
  bool found = false;
  for (std::uint64_t t = 0; t < tails && !found; ++t) {
    Poly cand(m + 1, 0);
    std::uint64_t rest = t;
    for (unsigned k = 0; k < m; ++k) {
      cand[k] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    cand[m] = 1;
    if (is_irreducible(p, cand)) {
      modulus_ = cand;
      found = true;
    }
  }
  if (!found) throw std::logic_error("Field: no irreducible polynomial found");

  // Primitive element: first encoding whose order is size - 1.
  const std::uint64_t n = size_ - 1;
  const auto fac = factorize(n);
  for (std::uint64_t v = 1; v < size_; ++v) {
    const Elem cand{static_cast<std::uint32_t>(v)};
    bool generator = true;
    for (auto [r, e] : fac) {
      if (slow_pow(cand, n / r) == one()) {
        generator = false;
        break;
      }
    }
    if (generator) {
      xi_ = cand;
      break;
    }
  }
  if (size_ <= kTableLimit) build_tables();
}

void Field::build_tables() {
  const std::uint64_t n = size_ - 1;
  log_.assign(size_, 0);
  exp_.assign(2 * n, 0);
  Elem cur = one();
  for (std::uint64_t k = 0; k < n; ++k) {
    exp_[k] = cur.v;
    exp_[k + n] = cur.v;
    log_[cur.v] = static_cast<std::uint32_t>(k);
    cur = slow_mul(cur, xi_);
  }
  if (cur != one()) throw std::logic_error("Field: primitive element has wrong order");
  zech_.assign(n, kNoZech);
  for (std::uint64_t k = 0; k < n; ++k) {
    const Elem s = digit_add(one(), Elem{exp_[k]});
    if (s.v != 0) zech_[k] = log_[s.v];
  }
}

std::vector<std::uint32_t> Field::coeffs(Elem x) const {
  std::vector<std::uint32_t> c(m_, 0);
  std::uint32_t v = x.v;
  for (unsigned k = 0; k < m_; ++k) {
    c[k] = v % p_;
    v /= p_;
  }
  return c;
}

Elem Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > m_) throw std::invalid_argument("Field::from_coeffs: too many coefficients");
  std::uint64_t v = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) v = v * p_ + coeffs[k] % p_;
  return Elem{static_cast<std::uint32_t>(v)};
}

Elem Field::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem Field::digit_add(Elem a, Elem b) const {
  std::uint64_t out = 0, scale = 1;
  std::uint32_t x = a.v, y = b.v;
  for (unsigned k = 0; k < m_; ++k) {
    out += scale * ((x % p_ + y % p_) % p_);
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return Elem{static_cast<std::uint32_t>(out)};
}

Elem Field::add(Elem a, Elem b) const {
  if (a.v == 0) return b;
  if (b.v == 0) return a;
  if (!has_tables()) return digit_add(a, b);
  const std::uint32_t n = static_cast<std::uint32_t>(size_ - 1);
  const std::uint32_t la = log_[a.v], lb = log_[b.v];
  const std::uint32_t d = lb >= la ? lb - la : lb + n - la;
  const std::uint32_t z = zech_[d];
  if (z == kNoZech) return zero();
  return Elem{exp_[la + z]};
}

Elem Field::neg(Elem a) const {
  if (a.v == 0) return a;
  if (has_tables()) return Elem{exp_[log_[a.v] + (size_ - 1) / 2]};
  auto c = coeffs(a);
  for (auto& x : c) x = (p_ - x) % p_;
  return from_coeffs(c);
}

std::vector<std::uint32_t> Field::poly_mulmod(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) const {
  return poly_rem(poly_mul(a, b, p_), modulus_, p_);
}

Elem Field::slow_mul(Elem a, Elem b) const {
  if (a.v == 0 || b.v == 0) return zero();
  Poly r = poly_mulmod(coeffs(a), coeffs(b));
  r.resize(m_, 0);
  return from_coeffs(r);
}

Elem Field::slow_pow(Elem a, std::uint64_t e) const {
  Elem r = one();
  while (e) {
    if (e & 1) r = slow_mul(r, a);
    a = slow_mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::mul(Elem a, Elem b) const {
  if (a.v == 0 || b.v == 0) return zero();
  if (!has_tables()) return slow_mul(a, b);
  return Elem{exp_[log_[a.v] + log_[b.v]]};
}

Elem Field::inv(Elem a) const {
  if (a.v == 0) throw std::domain_error("Field::inv: zero has no inverse");
  if (!has_tables()) return slow_pow(a, size_ - 2);
  const std::uint32_t l = log_[a.v];
  return Elem{exp_[l == 0 ? 0 : (size_ - 1) - l]};
}

Elem Field::pow(Elem a, std::int64_t e) const {
  if (a.v == 0) {
    if (e < 0) throw std::domain_error("Field::pow: negative power of zero");
    return e == 0 ? one() : zero();
  }
  const std::uint64_t n = size_ - 1;
  std::int64_t r = e % static_cast<std::int64_t>(n);
  if (r < 0) r += static_cast<std::int64_t>(n);
  if (!has_tables()) return slow_pow(a, static_cast<std::uint64_t>(r));
  return Elem{exp_[mulmod(log_[a.v], static_cast<std::uint64_t>(r), n)]};
}

Elem Field::frobenius(Elem x, unsigned k) const {
  if (x.v == 0) return x;
  const std::uint64_t n = size_ - 1;
  const std::uint64_t e = powmod(p_, k % m_, n);
  if (!has_tables()) return slow_pow(x, e == 0 ? n : e);
  return Elem{exp_[mulmod(log_[x.v], e, n)]};
}

bool Field::is_square(Elem x) const {
  if (x.v == 0) throw std::domain_error("Field::is_square: zero is neither square nor non-square");
  if (has_tables()) return log_[x.v] % 2 == 0;
  return slow_pow(x, (size_ - 1) / 2) == one();
}

std::uint64_t Field::slow_log(Elem x) const {
  // Baby-step giant-step.
  const std::uint64_t n = size_ - 1;
  const std::uint64_t s = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n)))) + 1;
  std::unordered_map<std::uint32_t, std::uint64_t> baby;
  Elem cur = one();
  for (std::uint64_t j = 0; j < s; ++j) {
    baby.emplace(cur.v, j);
    cur = slow_mul(cur, xi_);
  }
  const Elem giant = slow_pow(slow_pow(xi_, s), n - 1);  // xi^(-s)
  Elem y = x;
  for (std::uint64_t i = 0; i <= s; ++i) {
    if (auto it = baby.find(y.v); it != baby.end()) return (i * s + it->second) % n;
    y = slow_mul(y, giant);
  }
  throw std::logic_error("Field::log: discrete log not found");
}

std::uint64_t Field::log(Elem x) const {
  if (x.v == 0) throw std::domain_error("Field::log: zero has no logarithm");
  if (has_tables()) return log_[x.v];
  return slow_log(x);
}

Elem Field::exp(std::int64_t k) const {
  const std::int64_t n = static_cast<std::int64_t>(size_ - 1);
  std::int64_t r = k % n;
  if (r < 0) r += n;
  if (has_tables()) return Elem{exp_[r]};
  return slow_pow(xi_, static_cast<std::uint64_t>(r));
}

std::vector<Elem> Field::nth_roots(Elem w, std::uint64_t r) const {
  if (w.v == 0) throw std::invalid_argument("Field::nth_roots: w must be nonzero");
  if (r == 0) throw std::invalid_argument("Field::nth_roots: r must be positive");
  const std::uint64_t n = size_ - 1;
  const std::uint64_t l = log(w);
  const std::uint64_t g = std::gcd(r, n);
  std::vector<Elem> out;
  if (l % g != 0) return out;
  const std::uint64_t n2 = n / g;
  const std::uint64_t r2 = (r / g) % n2;
  const std::uint64_t l2 = (l / g) % n2;
  std::uint64_t t0 = 0;
  if (n2 > 1) {
    // inverse of r2 modulo n2 via extended Euclid
    std::int64_t a = static_cast<std::int64_t>(r2), b = static_cast<std::int64_t>(n2);
    std::int64_t x0 = 1, x1 = 0;
    while (b) {
      const std::int64_t qq = a / b;
      std::tie(a, b) = std::make_pair(b, a - qq * b);
      std::tie(x0, x1) = std::make_pair(x1, x0 - qq * x1);
    }
    const std::int64_t m = static_cast<std::int64_t>(n2);
    const std::uint64_t rinv = static_cast<std::uint64_t>(((x0 % m) + m) % m);
    t0 = mulmod(l2, rinv, n2);
  }
  out.reserve(g);
  for (std::uint64_t k = 0; k < g; ++k) out.push_back(exp(static_cast<std::int64_t>(t0 + k * n2)));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Elem> Field::sqrt(Elem x) const {
  if (x.v == 0) return zero();
  if (!is_square(x)) return std::nullopt;
  return nth_roots(x, 2).front();
}

bool Field::in_subfield(Elem x, unsigned d) const {
  if (d == 0 || m_ % d != 0) throw std::invalid_argument("Field::in_subfield: d must divide the degree");
  return frobenius(x, d) == x;
}

std::string Field::to_string(Elem x) const {
  if (m_ == 1) return std::to_string(x.v);
  const auto c = coeffs(x);
  std::string s;
  for (unsigned k = m_; k-- > 0;) {
    if (c[k] == 0) continue;
    if (!s.empty()) s += "+";
    if (k == 0 || c[k] != 1) s += std::to_string(c[k]);
    if (k >= 1) s += "x";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

}  // namespace mtwist
