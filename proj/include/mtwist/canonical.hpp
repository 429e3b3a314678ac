#pragma once

// Canonical conjugacy representatives of twisted elements [A,1] under the
// extended group, their orders, and explicit stabilizer element lists.
//
// Every twisted element is conjugate to exactly one [dia(xi^i,1),1] with odd
// 1 <= i <= (q-1)/2, or one [off(xi^i,1),1] with odd 1 <= i <= (q+1)/2.

#include <cstdint>
#include <string>
#include <vector>

#include "mtwist/twisted_group.hpp"

namespace mtwist {

enum class Form : std::uint8_t { Dia = 0, Off = 1 };

std::string to_string(Form form);

struct CanonClass {
  Form form = Form::Dia;
  std::uint64_t i = 1;  // odd exponent of the primitive element
  friend constexpr auto operator<=>(const CanonClass&, const CanonClass&) = default;
};

std::string to_string(const CanonClass& c);

/// True iff i is odd and inside the fundamental range for its form.
bool is_valid_class(const CanonClass& c, std::uint64_t q);
/// The enlarged-stabilizer cases: Dia with i=(q-1)/2, q = 3 mod 4; Off with i=(q+1)/2, q = 1 mod 4.
bool is_exceptional(const CanonClass& c, std::uint64_t q);
/// All classes, Dia first, each form by increasing i.
std::vector<CanonClass> canonical_classes(std::uint64_t q);

/// 2(q-1)/gcd(q-1,i) for Dia, 2(q+1)/gcd(q+1,i) for Off.
std::uint64_t canonical_order(const CanonClass& c, std::uint64_t q);

/// lambda = xi^i.
Elem class_lambda(const TwistedGroup& G, const CanonClass& c);
/// [dia(lambda,1),1] or [off(lambda,1),1].
TwElem representative(const TwistedGroup& G, const CanonClass& c);

struct CanonicalForm {
  CanonClass cls;
  TwElem witness;  // conjugate(x, witness) == representative(cls)
};

/// Throws std::invalid_argument for untwisted input.
CanonicalForm canonical_form(const TwistedGroup& G, const TwElem& x);

bool twisted_conjugate_test(const TwistedGroup& G, const TwElem& x, const TwElem& y);

enum class StabKind : std::uint8_t { P1 = 1, P2, P3, P4 };

struct StabElem {
  StabKind kind;
  Elem parameter;  // eta or zeta
  TwElem element;
};

/// Every element of the extended group fixing representative(c) under conjugation:
/// 2(q-1), 4(q-1), 2(q+1) or 4(q+1) elements by form and exceptionality.
std::vector<StabElem> stabilizer_parametrized(const TwistedGroup& G, const CanonClass& c);
std::vector<TwElem> stabilizer_elements(const TwistedGroup& G, const CanonClass& c);

}  // namespace mtwist
