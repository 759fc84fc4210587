// Natural deduction proof checker for classical second-order logic with
// explicit hypothesis labels, plus the direct introduction and elimination
// rules for the simplest branching quantifier.
//
// The checker is the trusted core: check() either returns the judgment a
// proof tree establishes or throws a CheckError naming the offending node.

#ifndef SOL_KERNEL_HPP
#define SOL_KERNEL_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sol/constructions.hpp"
#include "sol/syntax.hpp"

namespace sol {

enum class Rule {
  Hyp,
  AndI,
  AndEL,
  AndER,
  OrIL,
  OrIR,
  OrE,
  ImpI,
  ImpE,
  NotI,
  NotE,
  BotE,
  Raa,
  ForallI,
  ForallE,
  ExistsI,
  ExistsE,
  Forall2I,
  Forall2E,
  Exists2I,
  Exists2E,
  HenkinI,
  HenkinE,
};

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

// A proof tree node. Which payload fields are meaningful depends on the
// rule; see docs/rules.md.
struct Proof {
  Rule rule = Rule::Hyp;
  // Hypothesis label (Hyp) or discharged label. OrE uses both.
  std::string label;
  std::string label2;
  // Hyp: the hypothesis. ImpI/NotI/Raa: optional discharged formula.
  // OrIL/OrIR: the other disjunct. BotE: the conclusion.
  // ExistsI/Exists2I: the existential being introduced.
  std::optional<Formula> formula;
  std::optional<Term> term;
  // Eigenvariable or eigenpredicate; HenkinE uses var and var2.
  std::string var;
  std::string var2;
  // Forall2I, Exists2E: arity of the eigenpredicate (-1: inferred).
  int arity = 0;
  std::vector<PredAbstraction> abstractions;
  std::optional<HenkinSignature> signature;
  std::vector<Proof> premises;

  friend bool operator==(const Proof&, const Proof&) = default;

  static Proof hyp(std::string label, Formula f);
  static Proof and_i(Proof a, Proof b);
  static Proof and_el(Proof p);
  static Proof and_er(Proof p);
  static Proof or_il(Formula right, Proof p);
  static Proof or_ir(Formula left, Proof p);
  static Proof or_e(Proof major, std::string h1, Proof left, std::string h2,
                    Proof right);
  static Proof imp_i(std::string h, std::optional<Formula> a, Proof p);
  static Proof imp_e(Proof major, Proof minor);
  static Proof not_i(std::string h, std::optional<Formula> a, Proof p);
  static Proof not_e(Proof p, Proof q);
  static Proof bot_e(Formula c, Proof p);
  static Proof raa(std::string h, std::optional<Formula> neg_a, Proof p);
  static Proof forall_i(std::string x, Proof p);
  static Proof forall_e(Proof p, Term t);
  static Proof exists_i(Formula target, Term t, Proof p);
  static Proof exists_e(Proof major, std::string y, std::string h, Proof minor);
  static Proof forall2_i(std::string X, int n, Proof p);
  static Proof forall2_e(Proof p, PredAbstraction abs);
  static Proof exists2_i(Formula target, PredAbstraction abs, Proof p);
  // arity < 0 takes the arity of the major premise's binder.
  static Proof exists2_e(Proof major, std::string Y, std::string h,
                         Proof minor, int arity = -1);
  static Proof henkin_i(HenkinSignature sig, PredAbstraction a,
                        PredAbstraction b, Proof pa, Proof pb, Proof pphi);
  static Proof henkin_e(HenkinSignature sig, Proof major, std::string a,
                        std::string b, std::string h, Proof minor);
};

struct Judgment {
  std::map<std::string, Formula> hypotheses;
  Formula conclusion;
};

// Premise indices from the root down to the offending node.
using ProofPath = std::vector<int>;
std::string format_path(const ProofPath& path);

class CheckError : public Error {
 public:
  enum class Kind {
    EigenvariableViolation,
    EigenpredicateViolation,
    DischargeMismatch,
    ConclusionMismatch,
    ArityMismatch,
    UnknownHypothesis,
    SideConditionViolation,
  };

  CheckError(Kind kind, ProofPath location, std::string detail);

  Kind kind() const { return kind_; }
  const ProofPath& location() const { return location_; }
  const std::string& detail() const { return detail_; }

 private:
  Kind kind_;
  ProofPath location_;
  std::string detail_;
};

std::string_view kind_name(CheckError::Kind k);

Judgment check(const Proof& p);

// True iff p checks and proves exactly `expected`: alpha-equal conclusion and
// the same hypothesis labels with alpha-equal formulas. CheckError
// propagates.
bool check_against(const Proof& p, const Judgment& expected);

class FreshnessError : public Error {
 public:
  using Error::Error;
};

// A hypothesis-free proof of the comprehension instance for abs.
Proof derive_comprehension(const PredAbstraction& abs);

// Builds and checks a HenkinI node. premA proves
// forall x. exists x'. T(x) -> A(x,x'), premB the analogue for B, and
// premPhi the universal closure of Phi(A,B,...).
Proof henkin_intro(Proof premA, Proof premB, Proof premPhi,
                   const PredAbstraction& A, const PredAbstraction& B,
                   const HenkinSignature& sig = HenkinSignature::standard());

// Builds and checks a HenkinE node: major proves exists F G. Psi(F,G), minor
// proves some phi under hypothesis `discharge`: Psi(A,B).
Proof henkin_elim(Proof major, Proof minor, const std::string& A,
                  const std::string& B, const std::string& discharge,
                  const HenkinSignature& sig = HenkinSignature::standard());

// Replaces HenkinI/HenkinE nodes by their second-order unfoldings.
Proof elaborate(const Proof& p);

// True iff p contains a HenkinI or HenkinE node.
bool uses_henkin_rules(const Proof& p);

}  // namespace sol

#endif  // SOL_KERNEL_HPP
