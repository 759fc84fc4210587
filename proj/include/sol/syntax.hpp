// Terms, formulas and predicate abstractions of second-order logic without
// function symbols, together with binding operations: free variables,
// alpha-equivalence and capture-avoiding substitution of terms and of
// predicate abstractions.

#ifndef SOL_SYNTAX_HPP
#define SOL_SYNTAX_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sol {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

struct Term {
  enum class Kind : std::uint8_t { Var, Const };
  Kind kind = Kind::Var;
  std::string name;

  static Term var(std::string name) { return {Kind::Var, std::move(name)}; }
  static Term constant(std::string name) {
    return {Kind::Const, std::move(name)};
  }
  bool is_var() const { return kind == Kind::Var; }

  auto operator<=>(const Term&) const = default;
};

struct PredRef {
  enum class Kind : std::uint8_t { Const, Var };
  Kind kind = Kind::Const;
  std::string name;
  int arity = 0;

  static PredRef constant(std::string name, int arity) {
    return {Kind::Const, std::move(name), arity};
  }
  static PredRef var(std::string name, int arity) {
    return {Kind::Var, std::move(name), arity};
  }
  bool is_var() const { return kind == Kind::Var; }

  auto operator<=>(const PredRef&) const = default;
};

// A predicate variable is identified by its name together with its arity.
using PredVarKey = std::pair<std::string, int>;

enum class Op : std::uint8_t {
  Atom,
  Bot,
  Not,
  And,
  Or,
  Implies,
  ForallInd,
  ExistsInd,
  ForallPred,
  ExistsPred,
};

// Immutable formula handle. Copies share structure.
class Formula {
 public:
  // Defaults to bot.
  Formula();

  static Formula atom(PredRef pred, std::vector<Term> args);
  static Formula bot();
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  // A <-> B abbreviates (A -> B) & (B -> A).
  static Formula iff(const Formula& a, const Formula& b);
  static Formula forall_ind(std::string var, Formula body);
  static Formula exists_ind(std::string var, Formula body);
  static Formula forall_pred(std::string var, int arity, Formula body);
  static Formula exists_pred(std::string var, int arity, Formula body);

  Op op() const;
  const PredRef& pred() const;
  const std::vector<Term>& args() const;
  // Operand of Not, left operand of binary connectives, body of binders.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const { return lhs(); }
  // Bound variable of a quantifier, and the arity of a predicate binder.
  const std::string& var() const;
  int binder_arity() const;

  bool is_binary() const;
  bool is_ind_binder() const;
  bool is_pred_binder() const;

  // Structural (not alpha) equality.
  friend bool operator==(const Formula& a, const Formula& b);

  // Node count, used to bound generated test formulas.
  std::size_t size() const;

 private:
  struct Node;
  static Formula make_binary(Op op, Formula a, Formula b);
  static Formula make_binder(Op op, std::string var, int arity, Formula body);
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// A formula with n distinguished parameters; the instantiation payload of
// second-order rules.
class PredAbstraction {
 public:
  PredAbstraction(std::vector<std::string> params, Formula body);

  // The abstraction lambda(x1..xn). X(x1..xn).
  static PredAbstraction of_pred(const PredRef& pred);

  int arity() const { return static_cast<int>(params_.size()); }
  const std::vector<std::string>& params() const { return params_; }
  const Formula& body() const { return body_; }

  // body with params simultaneously replaced by args.
  Formula apply(const std::vector<Term>& args) const;

  friend bool operator==(const PredAbstraction&,
                         const PredAbstraction&) = default;

 private:
  std::vector<std::string> params_;
  Formula body_;
};

// A formula with one distinguished unary predicate parameter, i.e. a
// property of predicates.
class SecondOrderAbstraction {
 public:
  SecondOrderAbstraction(std::string param, Formula body);

  const std::string& param() const { return param_; }
  const Formula& body() const { return body_; }

  Formula apply(const PredAbstraction& arg) const;

 private:
  std::string param_;
  Formula body_;
};

std::set<std::string> free_ind_vars(const Formula& f);
std::set<PredVarKey> free_pred_vars(const Formula& f);
std::set<std::string> free_ind_vars(const PredAbstraction& a);
std::set<PredVarKey> free_pred_vars(const PredAbstraction& a);
// Individual constants occurring in f.
std::set<std::string> constants(const Formula& f);
// Predicate constants occurring in f, with arity.
std::set<PredVarKey> pred_constants(const Formula& f);
// Every identifier in f, bound or free, of any syntactic class.
std::set<std::string> all_names(const Formula& f);

bool alpha_eq(const Formula& f, const Formula& g);
bool alpha_eq(const PredAbstraction& a, const PredAbstraction& b);

// First name of the form base, base1, base2, ... not in avoid. Trailing
// digits of base are stripped before numbering.
std::string fresh_name(const std::string& base,
                       const std::set<std::string>& avoid);

Formula subst_term(const Formula& f, const std::string& x, const Term& t);
Formula subst_terms(const Formula& f, const std::map<std::string, Term>& m);

// Replaces every free occurrence X(t1..tn) with abs applied to (t1..tn).
// Throws ArityMismatch when abs.arity() != n.
Formula subst_pred(const Formula& f, const std::string& X, int n,
                   const PredAbstraction& abs);

}  // namespace sol

#endif  // SOL_SYNTAX_HPP
