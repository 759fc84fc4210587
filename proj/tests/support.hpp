// Shared helpers for the test binaries: quick parsing and random formulas,
// abstractions and models over a small fixed signature.

#ifndef SOL_TESTS_SUPPORT_HPP
#define SOL_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "sol/model.hpp"
#include "sol/parser.hpp"
#include "sol/syntax.hpp"

namespace sol::testing {

// Parses with the given constants and predicate variables (name:arity).
inline Formula F(std::string_view text, std::vector<std::string> consts = {},
                 std::vector<std::pair<std::string, int>> pvars = {}) {
  Signature sig;
  for (auto& c : consts) sig.constants.insert(c);
  for (auto& [n, k] : pvars) sig.pred_vars[n] = k;
  return parse_formula(text, sig);
}

// Signature of generated formulas: constants a b, predicate constants P/1,
// Q/2, R/0, predicate variables X/1, Z/0, individual variables x y z u.
struct RandomGen {
  std::mt19937_64 rng;
  int max_pred_binders = 2;

  explicit RandomGen(std::uint64_t seed) : rng(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  Term term() {
    static const char* names[] = {"x", "y", "z", "u", "a", "b"};
    const int i = pick(6);
    return i < 4 ? Term::var(names[i]) : Term::constant(names[i]);
  }

  Formula atom() {
    switch (pick(6)) {
      case 0: return Formula::atom(PredRef::constant("P", 1), {term()});
      case 1: return Formula::atom(PredRef::constant("Q", 2), {term(), term()});
      case 2: return Formula::atom(PredRef::constant("R", 0), {});
      case 3: return Formula::atom(PredRef::var("X", 1), {term()});
      case 4: return Formula::atom(PredRef::var("Z", 0), {});
      default: return Formula::bot();
    }
  }

  Formula formula(int depth, int pred_binders = 0) {
    if (depth <= 0 || pick(5) == 0) return atom();
    static const char* vars[] = {"x", "y", "z", "u"};
    switch (pick(pred_binders < max_pred_binders ? 10 : 8)) {
      case 0: return Formula::neg(formula(depth - 1, pred_binders));
      case 1: return Formula::conj(formula(depth - 1, pred_binders), formula(depth - 1, pred_binders));
      case 2: return Formula::disj(formula(depth - 1, pred_binders), formula(depth - 1, pred_binders));
      case 3:
      case 4: return Formula::implies(formula(depth - 1, pred_binders), formula(depth - 1, pred_binders));
      case 5:
      case 6: return Formula::forall_ind(vars[pick(4)], formula(depth - 1, pred_binders));
      case 7: return Formula::exists_ind(vars[pick(4)], formula(depth - 1, pred_binders));
      default: {
        const bool unary = pick(2) == 0;
        Formula body = formula(depth - 1, pred_binders + 1);
        return pick(2) == 0
                   ? Formula::forall_pred(unary ? "X" : "Z", unary ? 1 : 0, body)
                   : Formula::exists_pred(unary ? "X" : "Z", unary ? 1 : 0, body);
      }
    }
  }

  // lambda(w). body, the body possibly mentioning x, y free.
  PredAbstraction abstraction(int depth) {
    Formula body = formula(depth, max_pred_binders);
    if (pick(2) == 0)
      body = Formula::conj(body, Formula::atom(PredRef::constant("Q", 2),
                                               {Term::var("w"), Term::var("y")}));
    return PredAbstraction({"w"}, body);
  }

  std::set<Tuple> subset(int size, int arity) {
    std::set<Tuple> out;
    for (const auto& t : all_tuples(size, arity))
      if (pick(2) == 0) out.insert(t);
    return out;
  }

  std::pair<Model, Assignment> model(int size) {
    Model m;
    m.size = size;
    m.consts["a"] = pick(size);
    m.consts["b"] = pick(size);
    m.preds[{"P", 1}] = subset(size, 1);
    m.preds[{"Q", 2}] = subset(size, 2);
    m.preds[{"R", 0}] = subset(size, 0);
    Assignment a;
    for (const char* v : {"x", "y", "z", "u", "w"}) a.ind[v] = pick(size);
    a.pred[{"X", 1}] = subset(size, 1);
    a.pred[{"Z", 0}] = subset(size, 0);
    return {m, a};
  }
};

// Renames every bound variable to a fresh name; the result is alpha-equal.
inline Formula rename_bound(const Formula& f, std::set<std::string>& used,
                            std::mt19937_64& rng) {
  auto fresh = [&](const std::string& base) {
    std::string n = fresh_name(base + "r" + std::to_string(rng() % 7), used);
    used.insert(n);
    return n;
  };
  switch (f.op()) {
    case Op::Atom:
    case Op::Bot:
      return f;
    case Op::Not:
      return Formula::neg(rename_bound(f.lhs(), used, rng));
    case Op::And:
      return Formula::conj(rename_bound(f.lhs(), used, rng), rename_bound(f.rhs(), used, rng));
    case Op::Or:
      return Formula::disj(rename_bound(f.lhs(), used, rng), rename_bound(f.rhs(), used, rng));
    case Op::Implies:
      return Formula::implies(rename_bound(f.lhs(), used, rng), rename_bound(f.rhs(), used, rng));
    case Op::ForallInd:
    case Op::ExistsInd: {
      const std::string v = fresh(f.var());
      Formula body = rename_bound(subst_term(f.body(), f.var(), Term::var(v)), used, rng);
      return f.op() == Op::ForallInd ? Formula::forall_ind(v, body)
                                     : Formula::exists_ind(v, body);
    }
    case Op::ForallPred:
    case Op::ExistsPred: {
      const int n = f.binder_arity();
      const std::string V = fresh(f.var());
      Formula body = rename_bound(
          subst_pred(f.body(), f.var(), n, PredAbstraction::of_pred(PredRef::var(V, n))),
          used, rng);
      return f.op() == Op::ForallPred ? Formula::forall_pred(V, n, body)
                                      : Formula::exists_pred(V, n, body);
    }
  }
  return f;
}

}  // namespace sol::testing

#endif  // SOL_TESTS_SUPPORT_HPP
