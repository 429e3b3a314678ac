#include "mtwist/canonical.hpp"

#include <numeric>
#include <stdexcept>

namespace mtwist {

std::string to_string(Form form) { return form == Form::Dia ? "dia" : "off"; }

std::string to_string(const CanonClass& c) { return to_string(c.form) + "(" + std::to_string(c.i) + ")"; }

bool is_valid_class(const CanonClass& c, std::uint64_t q) {
  const std::uint64_t bound = c.form == Form::Dia ? (q - 1) / 2 : (q + 1) / 2;
  return c.i % 2 == 1 && c.i >= 1 && c.i <= bound;
}

bool is_exceptional(const CanonClass& c, std::uint64_t q) {
  if (c.form == Form::Dia) return q % 4 == 3 && c.i == (q - 1) / 2;
  return q % 4 == 1 && c.i == (q + 1) / 2;
}

std::vector<CanonClass> canonical_classes(std::uint64_t q) {
  std::vector<CanonClass> out;
  for (std::uint64_t i = 1; i <= (q - 1) / 2; i += 2) out.push_back({Form::Dia, i});
  for (std::uint64_t i = 1; i <= (q + 1) / 2; i += 2) out.push_back({Form::Off, i});
  return out;
}

std::uint64_t canonical_order(const CanonClass& c, std::uint64_t q) {
  const std::uint64_t m = c.form == Form::Dia ? q - 1 : q + 1;
  return 2 * m / std::gcd(m, c.i);
}

Elem class_lambda(const TwistedGroup& G, const CanonClass& c) {
  return G.field().exp(static_cast<std::int64_t>(c.i));
}

TwElem representative(const TwistedGroup& G, const CanonClass& c) {
  const Elem lambda = class_lambda(G, c);
  const Elem one = G.field().one();
  return G.make(c.form == Form::Dia ? G.dia(lambda, one) : G.off(lambda, one), 1);
}

namespace {

// Null vector of m - lambda I for a non-scalar 2x2 matrix m.
std::pair<Elem, Elem> eigenvector(const TwistedGroup& G, const Mat2& m, Elem lambda) {
  const Field& F = G.field();
  const Elem first_x = m.b, first_y = F.sub(lambda, m.a);
  if (first_x.v != 0 || first_y.v != 0) return {first_x, first_y};
  return {F.sub(lambda, m.d), m.c};
}

}  // namespace

CanonicalForm canonical_form(const TwistedGroup& G, const TwElem& x) {
  const Field& F = G.field();
  if (x.twist != 1 || !G.in_G(x)) throw std::invalid_argument("canonical_form: expects a twisted element of M(q^2)");
  const std::uint64_t q = G.q();

  // Spectrum of A A^sigma lies in F and is a pair of distinct values.
  const Mat2 M = G.mat_mul(x.m, G.sigma(x.m));
  const Elem tr = G.trace(M), dt = G.det(M);
  const Elem disc = F.sub(F.mul(tr, tr), F.mul(F.from_int(4), dt));
  const auto root = F.sqrt(disc);
  if (!root || root->v == 0) throw std::logic_error("canonical_form: A A^sigma lacks two distinct eigenvalues in F");
  const Elem half = F.inv(F.from_int(2));
  const Elem l1 = F.mul(F.add(tr, *root), half);
  const Elem l2 = F.mul(F.sub(tr, *root), half);
  const Form form = G.sigma(l1) == l1 ? Form::Dia : Form::Off;

  const auto [u1x, u1y] = eigenvector(G, M, l1);
  const auto [u2x, u2y] = eigenvector(G, M, l2);
  const Mat2 P{u1x, u2x, u1y, u2y};
  const TwElem g1 = G.make(P, 0);
  const TwElem moved = G.conjugate(x, g1);
  const Mat2& B = moved.m;

  Elem lambda;
  if (form == Form::Dia) {
    if (B.b.v != 0 || B.c.v != 0) throw std::logic_error("canonical_form: diagonalization failed");
    lambda = F.div(B.a, B.d);
  } else {
    if (B.a.v != 0 || B.d.v != 0) throw std::logic_error("canonical_form: anti-diagonalization failed");
    lambda = F.div(B.b, B.c);
  }
  const std::uint64_t j = F.log(lambda);
  if (j % 2 == 0) throw std::logic_error("canonical_form: lambda is a square");

  // Fold j into the fundamental domain i = +-j mod (q -+ 1).
  const Elem one = F.one();
  const std::uint64_t modulus = form == Form::Dia ? q - 1 : q + 1;
  const std::uint64_t r = j % modulus;
  const bool plus = r <= modulus / 2;
  const CanonClass cls{form, plus ? r : modulus - r};
  const Elem target = class_lambda(G, cls);

  TwElem g2;
  if (form == Form::Dia) {
    if (plus) {
      const Elem eta = F.nth_roots(F.div(target, lambda), q - 1).at(0);
      g2 = G.make(G.dia(eta, one), 0);
    } else {
      const Elem zeta = F.nth_roots(F.inv(F.mul(lambda, target)), q - 1).at(0);
      g2 = G.make(G.off(zeta, one), 0);
    }
  } else {
    if (plus) {
      const Elem eta = F.nth_roots(F.div(lambda, target), q + 1).at(0);
      g2 = G.make(G.dia(eta, one), 0);
    } else {
      const Elem omega = F.nth_roots(F.div(G.sigma(lambda), target), q + 1).at(0);
      g2 = G.make(G.dia(omega, one), 1);
    }
  }
  const TwElem witness = G.mul(g1, g2);
  if (G.conjugate(x, witness) != representative(G, cls))
    throw std::logic_error("canonical_form: witness does not reach the representative");
  return {cls, witness};
}

bool twisted_conjugate_test(const TwistedGroup& G, const TwElem& x, const TwElem& y) {
  return canonical_form(G, x).cls == canonical_form(G, y).cls;
}

std::vector<StabElem> stabilizer_parametrized(const TwistedGroup& G, const CanonClass& c) {
  const Field& F = G.field();
  const std::uint64_t q = G.q();
  if (!is_valid_class(c, q)) throw std::invalid_argument("stabilizer_elements: invalid class " + to_string(c));
  const Elem one = F.one();
  const Elem lambda = class_lambda(G, c);
  std::vector<StabElem> out;

  if (c.form == Form::Dia) {
    for (Elem eta : F.nth_roots(one, q - 1)) out.push_back({StabKind::P1, eta, G.make(G.dia(eta, one), 0)});
    for (Elem eta : F.nth_roots(one, q - 1))
      out.push_back({StabKind::P2, eta, G.make(G.dia(F.mul(eta, lambda), one), 1)});
    if (is_exceptional(c, q)) {
      const auto zetas = F.nth_roots(F.inv(F.mul(lambda, lambda)), q - 1);
      for (Elem zeta : zetas) out.push_back({StabKind::P3, zeta, G.make(G.off(zeta, one), 0)});
      for (Elem zeta : zetas)
        out.push_back({StabKind::P4, zeta, G.make(G.off(F.div(zeta, lambda), one), 1)});
    }
  } else {
    for (Elem eta : F.nth_roots(one, q + 1)) out.push_back({StabKind::P1, eta, G.make(G.dia(eta, one), 0)});
    for (Elem eta : F.nth_roots(one, q + 1))
      out.push_back({StabKind::P2, eta, G.make(G.off(F.mul(eta, lambda), one), 1)});
    if (is_exceptional(c, q)) {
      const auto zetas = F.nth_roots(F.mul(lambda, lambda), q + 1);
      for (Elem zeta : zetas) out.push_back({StabKind::P3, zeta, G.make(G.off(zeta, one), 0)});
      for (Elem zeta : zetas)
        out.push_back({StabKind::P4, zeta, G.make(G.dia(F.div(zeta, lambda), one), 1)});
    }
  }
  return out;
}

std::vector<TwElem> stabilizer_elements(const TwistedGroup& G, const CanonClass& c) {
  std::vector<TwElem> out;
  for (const auto& s : stabilizer_parametrized(G, c)) out.push_back(s.element);
  return out;
}

}  // namespace mtwist
