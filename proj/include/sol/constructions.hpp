// Builders for defined notions: Leibniz equality, individual concepts, the
// translations between properties of concepts and properties of
// individuals, Dedekind finiteness, and the second-order encodings of the
// simplest branching (Henkin) quantifier.
//
// Bound names are deterministic (x, x', y, y', z, X, F, G, numbered on
// collision) so printed output is stable.

#ifndef SOL_CONSTRUCTIONS_HPP
#define SOL_CONSTRUCTIONS_HPP

#include <set>
#include <string>
#include <utility>

#include "sol/syntax.hpp"

namespace sol {

// Predicate constants of a Hintikka-style sentence: T (teams), B (boards),
// K (knows).
struct HenkinSignature {
  PredRef T;
  PredRef B;
  PredRef K;

  // Throws ArityMismatch unless T, B are unary and K binary constants.
  static HenkinSignature make(const std::string& t, const std::string& b,
                              const std::string& k);
  static HenkinSignature standard() { return make("T", "B", "K"); }

  friend bool operator==(const HenkinSignature&,
                         const HenkinSignature&) = default;
};

// forall X:1. X(t) -> X(u), with X chosen outside `avoid`.
Formula leibniz_eq(const Term& t, const Term& u,
                   const std::set<std::string>& avoid = {});

// lambda(y). t = y
PredAbstraction concept_of(const Term& t);

// Strict: (forall x. forall y. phi(x) & phi(y) -> x = y) & exists z. phi(z).
// Weak drops the existence conjunct. Throws ArityMismatch unless unary.
Formula is_concept(const PredAbstraction& abs, bool strict = true);

// lambda(x). exists X:1. C(X) & X(x) & phi(X)
PredAbstraction lower(const SecondOrderAbstraction& phi, bool strict = true);

// lambda X. exists x. X(x) & psi(x). Throws ArityMismatch unless unary.
SecondOrderAbstraction raise(const PredAbstraction& psi);

// Every injective total function, given as a binary relation, is surjective.
Formula dedekind_finiteness();

// exists X:n. forall x1..xn. (phi(x1..xn) <-> X(x1..xn)), X not in phi.
Formula comprehension(const PredAbstraction& abs);

// T(x) & B(y) & F(x,x') & G(y,y') -> K(x',y')
Formula build_Phi(const PredRef& F, const PredRef& G,
                  const HenkinSignature& sig);

// The three conjuncts of Psi(F,G).
Formula henkin_selector_left(const PredRef& F, const HenkinSignature& sig);
Formula henkin_selector_right(const PredRef& G, const HenkinSignature& sig);
Formula henkin_closure(const PredRef& F, const PredRef& G,
                       const HenkinSignature& sig);

// (selector_left & selector_right) & closure
Formula build_Psi(const PredRef& F, const PredRef& G,
                  const HenkinSignature& sig);

enum class HenkinVariant { Plain, Sorted };

// Plain: exists F:2. exists G:2. Psi(F,G). Sorted additionally keeps the
// selected representatives inside T and B.
Formula expand_henkin(const HenkinSignature& sig,
                      HenkinVariant variant = HenkinVariant::Plain);

// The two linear prefix orders over T(x) & B(y) -> K(x',y').
std::pair<Formula, Formula> linear_readings(const HenkinSignature& sig);

}  // namespace sol

#endif  // SOL_CONSTRUCTIONS_HPP
