#include "sol/constructions.hpp"

namespace sol {

namespace {

Formula atom(const PredRef& p, std::initializer_list<Term> args) {
  return Formula::atom(p, std::vector<Term>(args));
}

Term var(const std::string& name) { return Term::var(name); }

Formula conj_all(std::initializer_list<Formula> fs) {
  auto it = fs.begin();
  Formula acc = *it++;
  for (; it != fs.end(); ++it) acc = Formula::conj(acc, *it);
  return acc;
}

std::set<std::string> pred_names(const std::set<PredVarKey>& keys) {
  std::set<std::string> out;
  for (const auto& k : keys) out.insert(k.first);
  return out;
}

void require_binary(const PredRef& p, const char* what) {
  if (p.arity != 2)
    throw ArityMismatch(std::string(what) + " must be binary, got " + p.name +
                        "/" + std::to_string(p.arity));
}

}  // namespace

HenkinSignature HenkinSignature::make(const std::string& t,
                                      const std::string& b,
                                      const std::string& k) {
  if (t == b || t == k || b == k)
    throw ArityMismatch("henkin signature needs three distinct predicates");
  return {PredRef::constant(t, 1), PredRef::constant(b, 1),
          PredRef::constant(k, 2)};
}

Formula leibniz_eq(const Term& t, const Term& u,
                   const std::set<std::string>& avoid) {
  const std::string X = fresh_name("X", avoid);
  const PredRef x = PredRef::var(X, 1);
  return Formula::forall_pred(X, 1,
                              Formula::implies(atom(x, {t}), atom(x, {u})));
}

PredAbstraction concept_of(const Term& t) {
  const std::string y = fresh_name("y", t.is_var() ? std::set{t.name}
                                                   : std::set<std::string>{});
  return PredAbstraction({y}, leibniz_eq(t, var(y)));
}

Formula is_concept(const PredAbstraction& abs, bool strict) {
  if (abs.arity() != 1)
    throw ArityMismatch("individual concepts are unary, got arity " +
                        std::to_string(abs.arity()));
  auto avoid = free_ind_vars(abs);
  const std::string x = fresh_name("x", avoid);
  avoid.insert(x);
  const std::string y = fresh_name("y", avoid);
  avoid.insert(y);
  const std::string z = fresh_name("z", avoid);
  const auto preds = pred_names(free_pred_vars(abs));

  Formula unique = Formula::forall_ind(
      x, Formula::forall_ind(
             y, Formula::implies(
                    Formula::conj(abs.apply({var(x)}), abs.apply({var(y)})),
                    leibniz_eq(var(x), var(y), preds))));
  if (!strict) return unique;
  return Formula::conj(unique,
                       Formula::exists_ind(z, abs.apply({var(z)})));
}

PredAbstraction lower(const SecondOrderAbstraction& phi, bool strict) {
  auto preds = pred_names(free_pred_vars(phi.body()));
  preds.erase(phi.param());
  const std::string X = fresh_name("X", preds);
  auto inds = free_ind_vars(phi.body());
  const std::string x = fresh_name("x", inds);
  const PredRef xr = PredRef::var(X, 1);
  const auto as_abs = PredAbstraction::of_pred(xr);
  Formula body = Formula::exists_pred(
      X, 1,
      conj_all({is_concept(as_abs, strict), atom(xr, {var(x)}),
                phi.apply(as_abs)}));
  return PredAbstraction({x}, body);
}

SecondOrderAbstraction raise(const PredAbstraction& psi) {
  if (psi.arity() != 1)
    throw ArityMismatch("raise expects a unary property, got arity " +
                        std::to_string(psi.arity()));
  const std::string X = fresh_name("X", pred_names(free_pred_vars(psi)));
  const std::string x = fresh_name("x", free_ind_vars(psi));
  const PredRef xr = PredRef::var(X, 1);
  return SecondOrderAbstraction(
      X, Formula::exists_ind(x, Formula::conj(atom(xr, {var(x)}),
                                              psi.apply({var(x)}))));
}

Formula dedekind_finiteness() {
  const PredRef X = PredRef::var("X", 2);
  auto eq = [&](const char* a, const char* b) {
    return leibniz_eq(var(a), var(b), {"X"});
  };
  Formula functional = Formula::forall_ind(
      "x", Formula::forall_ind(
               "y", Formula::forall_ind(
                        "z", Formula::implies(
                                 Formula::conj(atom(X, {var("x"), var("y")}),
                                               atom(X, {var("x"), var("z")})),
                                 eq("y", "z")))));
  Formula total = Formula::forall_ind(
      "x", Formula::exists_ind("y", atom(X, {var("x"), var("y")})));
  Formula injective = Formula::forall_ind(
      "x", Formula::forall_ind(
               "y", Formula::forall_ind(
                        "z", Formula::implies(
                                 Formula::conj(atom(X, {var("y"), var("x")}),
                                               atom(X, {var("z"), var("x")})),
                                 eq("y", "z")))));
  Formula surjective = Formula::forall_ind(
      "w", Formula::exists_ind("u", atom(X, {var("u"), var("w")})));
  return Formula::forall_pred(
      "X", 2,
      Formula::implies(conj_all({total, functional, injective}), surjective));
}

Formula comprehension(const PredAbstraction& abs) {
  const std::string X = fresh_name("X", pred_names(free_pred_vars(abs)));
  const PredRef xr = PredRef::var(X, abs.arity());
  // Parameters are renamed away from the abstraction's free variables so the
  // universal closure captures nothing.
  auto avoid = free_ind_vars(abs);
  std::vector<std::string> names;
  std::vector<Term> args;
  for (const auto& p : abs.params()) {
    std::string n = fresh_name(p, avoid);
    avoid.insert(n);
    names.push_back(n);
    args.push_back(var(n));
  }
  Formula body = Formula::iff(abs.apply(args), Formula::atom(xr, args));
  for (auto it = names.rbegin(); it != names.rend(); ++it)
    body = Formula::forall_ind(*it, body);
  return Formula::exists_pred(X, abs.arity(), body);
}

Formula build_Phi(const PredRef& F, const PredRef& G,
                  const HenkinSignature& sig) {
  require_binary(F, "F");
  require_binary(G, "G");
  return Formula::implies(
      conj_all({atom(sig.T, {var("x")}), atom(sig.B, {var("y")}),
                atom(F, {var("x"), var("x'")}),
                atom(G, {var("y"), var("y'")})}),
      atom(sig.K, {var("x'"), var("y'")}));
}

Formula henkin_selector_left(const PredRef& F, const HenkinSignature& sig) {
  require_binary(F, "F");
  return Formula::forall_ind(
      "x", Formula::exists_ind(
               "x'", Formula::implies(atom(sig.T, {var("x")}),
                                      atom(F, {var("x"), var("x'")}))));
}

Formula henkin_selector_right(const PredRef& G, const HenkinSignature& sig) {
  require_binary(G, "G");
  return Formula::forall_ind(
      "y", Formula::exists_ind(
               "y'", Formula::implies(atom(sig.B, {var("y")}),
                                      atom(G, {var("y"), var("y'")}))));
}

Formula henkin_closure(const PredRef& F, const PredRef& G,
                       const HenkinSignature& sig) {
  return Formula::forall_ind(
      "x", Formula::forall_ind(
               "x'", Formula::forall_ind(
                         "y", Formula::forall_ind(
                                  "y'", build_Phi(F, G, sig)))));
}

Formula build_Psi(const PredRef& F, const PredRef& G,
                  const HenkinSignature& sig) {
  return conj_all({henkin_selector_left(F, sig), henkin_selector_right(G, sig),
                   henkin_closure(F, G, sig)});
}

namespace {

std::pair<std::string, std::string> selector_names(const HenkinSignature& sig) {
  const std::set<std::string> avoid{sig.T.name, sig.B.name, sig.K.name};
  std::string f = fresh_name("F", avoid);
  auto avoid2 = avoid;
  avoid2.insert(f);
  return {f, fresh_name("G", avoid2)};
}

Formula sorted_psi(const PredRef& F, const PredRef& G,
                   const HenkinSignature& sig) {
  Formula left = Formula::forall_ind(
      "x", Formula::exists_ind(
               "x'", Formula::implies(
                         atom(sig.T, {var("x")}),
                         Formula::conj(atom(F, {var("x"), var("x'")}),
                                       atom(sig.T, {var("x'")})))));
  Formula right = Formula::forall_ind(
      "y", Formula::exists_ind(
               "y'", Formula::implies(
                         atom(sig.B, {var("y")}),
                         Formula::conj(atom(G, {var("y"), var("y'")}),
                                       atom(sig.B, {var("y'")})))));
  Formula phi = Formula::implies(
      conj_all({atom(sig.T, {var("x")}), atom(sig.T, {var("x'")}),
                atom(sig.B, {var("y")}), atom(sig.B, {var("y'")}),
                atom(F, {var("x"), var("x'")}),
                atom(G, {var("y"), var("y'")})}),
      atom(sig.K, {var("x'"), var("y'")}));
  Formula closure = Formula::forall_ind(
      "x", Formula::forall_ind(
               "x'", Formula::forall_ind(
                         "y", Formula::forall_ind("y'", phi))));
  return conj_all({left, right, closure});
}

}  // namespace

Formula expand_henkin(const HenkinSignature& sig, HenkinVariant variant) {
  const auto [f, g] = selector_names(sig);
  const PredRef F = PredRef::var(f, 2);
  const PredRef G = PredRef::var(g, 2);
  Formula psi = variant == HenkinVariant::Plain ? build_Psi(F, G, sig)
                                                : sorted_psi(F, G, sig);
  return Formula::exists_pred(f, 2, Formula::exists_pred(g, 2, psi));
}

std::pair<Formula, Formula> linear_readings(const HenkinSignature& sig) {
  auto matrix = [&] {
    return Formula::implies(
        Formula::conj(atom(sig.T, {var("x")}), atom(sig.B, {var("y")})),
        atom(sig.K, {var("x'"), var("y'")}));
  };
  Formula xy = Formula::forall_ind(
      "x", Formula::exists_ind(
               "x'", Formula::forall_ind(
                         "y", Formula::exists_ind("y'", matrix()))));
  Formula yx = Formula::forall_ind(
      "y", Formula::exists_ind(
               "y'", Formula::forall_ind(
                         "x", Formula::exists_ind("x'", matrix()))));
  return {xy, yx};
}

}  // namespace sol
