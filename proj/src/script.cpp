#include <cctype>

#include "sol/parser.hpp"

namespace sol {

namespace fs = std::filesystem;

namespace {

struct Param {
  std::string name;
  bool pred = false;
  int arity = 0;
};

struct Def {
  std::vector<Param> params;
  Formula body;
};

struct Scope {
  std::vector<std::string> inds;
  std::vector<std::pair<std::string, int>> preds;
  // Open hypotheses whose formula is known from the enclosing rule.
  std::vector<std::pair<std::string, Formula>> hyps;

  Scope with_ind(const std::string& x) const {
    Scope s = *this;
    s.inds.push_back(x);
    return s;
  }
  Scope with_pred(const std::string& X, int n) const {
    Scope s = *this;
    s.preds.emplace_back(X, n);
    return s;
  }
  Scope with_hyp(const std::string& h, std::optional<Formula> f) const {
    Scope s = *this;
    if (f) s.hyps.emplace_back(h, std::move(*f));
    return s;
  }
  std::optional<Formula> hyp(const std::string& h) const {
    for (auto it = hyps.rbegin(); it != hyps.rend(); ++it)
      if (it->first == h) return it->second;
    return std::nullopt;
  }
  bool has_ind(const std::string& x) const {
    for (const auto& v : inds)
      if (v == x) return true;
    return false;
  }
  std::optional<int> pred_arity(const std::string& X) const {
    for (auto it = preds.rbegin(); it != preds.rend(); ++it)
      if (it->first == X) return it->second;
    return std::nullopt;
  }
};

bool is_upper(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

bool is_ident(const std::string& s) {
  if (s.empty()) return false;
  const unsigned char c = s[0];
  if (!std::isalpha(c) && c != '_') return false;
  for (unsigned char d : s)
    if (!std::isalnum(d) && d != '_' && d != '\'') return false;
  return true;
}

[[noreturn]] void malformed(const SExpr& e, const std::string& msg) {
  throw MalformedPayload(e.span, msg);
}

const std::string& symbol(const SExpr& e, const char* what) {
  if (!e.is_symbol() || !is_ident(e.text))
    malformed(e, std::string("expected ") + what);
  return e.text;
}

int natural(const SExpr& e) {
  if (!e.is_symbol() || e.text.empty() ||
      e.text.find_first_not_of("0123456789") != std::string::npos)
    malformed(e, "expected an arity");
  return std::stoi(e.text);
}

void expect_size(const SExpr& e, std::size_t n, const char* shape) {
  if (e.items.size() != n) malformed(e, std::string("expected ") + shape);
}

}  // namespace

struct ScriptContext::Impl {
  std::string file;
  fs::path base_dir;
  Signature sig;
  std::map<std::string, Def> defs;
  std::map<std::string, Formula> lets;
  std::map<std::string, Proof> lemmas;
  std::map<std::string, SExpr> overrides;
  mutable std::map<std::string, int> used_consts;

  Term term(const SExpr& e, const Scope& sc) const {
    const std::string& name = symbol(e, "a term");
    if (is_upper(name)) malformed(e, "terms start with a lowercase letter");
    if (!sc.has_ind(name) && sig.constants.contains(name))
      return Term::constant(name);
    return Term::var(name);
  }

  std::optional<int> known_arity(const std::string& X, const Scope& sc) const {
    if (auto n = sc.pred_arity(X)) return n;
    if (auto it = sig.pred_vars.find(X); it != sig.pred_vars.end())
      return it->second;
    if (auto it = sig.pred_consts.find(X); it != sig.pred_consts.end())
      return it->second;
    if (auto it = used_consts.find(X); it != used_consts.end())
      return it->second;
    return std::nullopt;
  }

  PredRef pred(const SExpr& e, int nargs, const Scope& sc) const {
    const std::string& name = symbol(e, "a predicate");
    if (!is_upper(name)) malformed(e, "predicates start with an uppercase letter");
    auto arity_error = [&](int declared) {
      throw ArityError(e.span, name + " has arity " + std::to_string(declared) +
                                   " but is applied to " + std::to_string(nargs) +
                                   " arguments");
    };
    if (auto n = sc.pred_arity(name)) {
      if (*n != nargs) arity_error(*n);
      return PredRef::var(name, nargs);
    }
    if (auto it = sig.pred_vars.find(name); it != sig.pred_vars.end()) {
      if (it->second != nargs) arity_error(it->second);
      return PredRef::var(name, nargs);
    }
    if (auto n = known_arity(name, sc)) {
      if (*n != nargs) arity_error(*n);
    } else {
      used_consts.emplace(name, nargs);
    }
    return PredRef::constant(name, nargs);
  }

  HenkinSignature henkin_sig(const SExpr& t, const SExpr& b, const SExpr& k) const {
    try {
      return HenkinSignature::make(symbol(t, "a predicate"), symbol(b, "a predicate"),
                                   symbol(k, "a predicate"));
    } catch (const ArityMismatch& ex) {
      malformed(t, ex.what());
    }
  }

  Formula infix(const SExpr& e, const Scope& sc) const {
    Signature local = sig;
    for (const auto& [name, n] : used_consts) local.pred_consts.emplace(name, n);
    for (const auto& x : sc.inds) local.constants.erase(x);
    for (const auto& [name, n] : sc.preds) local.pred_vars[name] = n;
    // The string body starts one column after the opening quote.
    return parse_formula_at(e.text, local, e.span.file, e.span.line,
                            e.span.column + 1);
  }

  Formula apply_def(const Def& d, const SExpr& e, const Scope& sc) const {
    if (e.items.size() - 1 != d.params.size())
      malformed(e, std::string(e.head()) + " takes " +
                       std::to_string(d.params.size()) + " arguments");
    std::map<std::string, Term> inds;
    std::vector<std::pair<const Param*, PredAbstraction>> preds;
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      const Param& p = d.params[i];
      const SExpr& arg = e.items[i + 1];
      if (p.pred)
        preds.emplace_back(&p, abstraction(arg, sc, p.arity));
      else
        inds.emplace(p.name, term(arg, sc));
    }
    Formula body = subst_terms(d.body, inds);
    if (preds.empty()) return body;
    auto avoid = all_names(body);
    for (const auto& [p, abs] : preds) {
      const auto more = all_names(abs.body());
      avoid.insert(more.begin(), more.end());
    }
    std::vector<std::string> renamed;
    for (const auto& [p, abs] : preds) {
      const std::string fresh = fresh_name(p->name, avoid);
      avoid.insert(fresh);
      renamed.push_back(fresh);
      body = subst_pred(body, p->name, p->arity,
                        PredAbstraction::of_pred(PredRef::var(fresh, p->arity)));
    }
    for (std::size_t i = 0; i < preds.size(); ++i)
      body = subst_pred(body, renamed[i], preds[i].first->arity, preds[i].second);
    return body;
  }

  Formula formula(const SExpr& e, const Scope& sc) const {
    if (e.kind == SExpr::Kind::String) return infix(e, sc);
    if (e.is_symbol()) {
      if (e.text == "bot") return Formula::bot();
      if (auto it = defs.find(e.text); it != defs.end()) {
        if (!it->second.params.empty())
          malformed(e, e.text + " takes " +
                           std::to_string(it->second.params.size()) + " arguments");
        return it->second.body;
      }
      if (is_upper(e.text)) return Formula::atom(pred(e, 0, sc), {});
      malformed(e, "expected a formula, found '" + e.text + "'");
    }
    const std::string_view h = e.head();
    if (h.empty()) malformed(e, "expected a formula");
    const auto& it = e.items;
    if (h == "not") {
      expect_size(e, 2, "(not F)");
      return Formula::neg(formula(it[1], sc));
    }
    if (h == "and" || h == "or") {
      if (it.size() < 3) malformed(e, "expected at least two operands");
      Formula acc = formula(it[1], sc);
      for (std::size_t i = 2; i < it.size(); ++i)
        acc = h == "and" ? Formula::conj(acc, formula(it[i], sc))
                         : Formula::disj(acc, formula(it[i], sc));
      return acc;
    }
    if (h == "->") {
      if (it.size() < 3) malformed(e, "expected (-> A B)");
      Formula acc = formula(it.back(), sc);
      for (std::size_t i = it.size() - 2; i >= 1; --i)
        acc = Formula::implies(formula(it[i], sc), acc);
      return acc;
    }
    if (h == "iff") {
      expect_size(e, 3, "(iff A B)");
      return Formula::iff(formula(it[1], sc), formula(it[2], sc));
    }
    if (h == "forall" || h == "exists") {
      expect_size(e, 3, "(forall x F)");
      const std::string& x = symbol(it[1], "a variable");
      if (is_upper(x)) malformed(it[1], "individual variables start lowercase");
      Formula body = formula(it[2], sc.with_ind(x));
      return h == "forall" ? Formula::forall_ind(x, body)
                           : Formula::exists_ind(x, body);
    }
    if (h == "forall2" || h == "exists2") {
      expect_size(e, 4, "(forall2 X n F)");
      const std::string& X = symbol(it[1], "a predicate variable");
      if (!is_upper(X)) malformed(it[1], "predicate variables start uppercase");
      const int n = natural(it[2]);
      Formula body = formula(it[3], sc.with_pred(X, n));
      return h == "forall2" ? Formula::forall_pred(X, n, body)
                            : Formula::exists_pred(X, n, body);
    }
    if (h == "eq") {
      expect_size(e, 3, "(eq t u)");
      return leibniz_eq(term(it[1], sc), term(it[2], sc));
    }
    if (h == "C" || h == "Cw") {
      expect_size(e, 2, "(C ABS)");
      return is_concept(abstraction(it[1], sc, 1), h == "C");
    }
    if (h == "@") {
      if (it.size() < 2) malformed(e, "expected (@ ABS t...)");
      std::vector<Term> args;
      for (std::size_t i = 2; i < it.size(); ++i) args.push_back(term(it[i], sc));
      return abstraction(it[1], sc, static_cast<int>(args.size())).apply(args);
    }
    if (h == "@@") {
      expect_size(e, 3, "(@@ SOABS ABS)");
      return so_abstraction(it[1], sc).apply(abstraction(it[2], sc, 1));
    }
    if (h == "dedekind") {
      expect_size(e, 1, "(dedekind)");
      return dedekind_finiteness();
    }
    if (h == "comprehension") {
      expect_size(e, 2, "(comprehension ABS)");
      return comprehension(abstraction(it[1], sc, std::nullopt));
    }
    if (h == "Phi" || h == "Psi") {
      expect_size(e, 6, "(Phi F G T B K)");
      const PredRef F = pred(it[1], 2, sc);
      const PredRef G = pred(it[2], 2, sc);
      const auto hs = henkin_sig(it[3], it[4], it[5]);
      return h == "Phi" ? build_Phi(F, G, hs) : build_Psi(F, G, hs);
    }
    if (h == "hpred" || h == "hpred-sorted" || h == "linear1" || h == "linear2") {
      expect_size(e, 4, "(hpred T B K)");
      const auto hs = henkin_sig(it[1], it[2], it[3]);
      if (h == "hpred") return expand_henkin(hs, HenkinVariant::Plain);
      if (h == "hpred-sorted") return expand_henkin(hs, HenkinVariant::Sorted);
      const auto [l1, l2] = linear_readings(hs);
      return h == "linear1" ? l1 : l2;
    }
    const std::string head(h);
    if (auto d = defs.find(head); d != defs.end()) return apply_def(d->second, e, sc);
    if (is_upper(head)) {
      std::vector<Term> args;
      for (std::size_t i = 1; i < it.size(); ++i) args.push_back(term(it[i], sc));
      const PredRef p = pred(it[0], static_cast<int>(args.size()), sc);
      return Formula::atom(p, std::move(args));
    }
    malformed(e, "unknown formula form '" + head + "'");
  }

  PredAbstraction abstraction(const SExpr& e, const Scope& sc,
                              std::optional<int> arity) const {
    PredAbstraction abs = abstraction_raw(e, sc, arity);
    if (arity && abs.arity() != *arity)
      throw ArityError(e.span, "expected an abstraction of arity " +
                                   std::to_string(*arity) + ", got arity " +
                                   std::to_string(abs.arity()));
    return abs;
  }

  PredAbstraction abstraction_raw(const SExpr& e, const Scope& sc,
                                  std::optional<int> arity) const {
    if (e.is_symbol()) {
      if (auto d = defs.find(e.text); d != defs.end()) {
        std::vector<std::string> names;
        for (const auto& p : d->second.params) {
          if (p.pred) malformed(e, e.text + " has a predicate parameter");
          names.push_back(p.name);
        }
        return PredAbstraction(names, d->second.body);
      }
      if (!is_upper(e.text)) malformed(e, "expected an abstraction");
      auto n = known_arity(e.text, sc);
      if (!n) n = arity;
      if (!n) malformed(e, "cannot infer the arity of " + e.text);
      return PredAbstraction::of_pred(pred(e, *n, sc));
    }
    const std::string_view h = e.head();
    if (h == "lam") {
      expect_size(e, 3, "(lam (x...) F)");
      if (!e.items[1].is_list()) malformed(e.items[1], "expected a parameter list");
      std::vector<std::string> params;
      Scope inner = sc;
      for (const auto& p : e.items[1].items) {
        const std::string& x = symbol(p, "a parameter");
        if (is_upper(x)) malformed(p, "parameters start lowercase");
        params.push_back(x);
        inner.inds.push_back(x);
      }
      try {
        return PredAbstraction(params, formula(e.items[2], inner));
      } catch (const std::invalid_argument& ex) {
        malformed(e.items[1], ex.what());
      }
    }
    if (h == "E") {
      expect_size(e, 2, "(E t)");
      return concept_of(term(e.items[1], sc));
    }
    if (h == "lower" || h == "lowerw") {
      expect_size(e, 2, "(lower SOABS)");
      return lower(so_abstraction(e.items[1], sc), h == "lower");
    }
    malformed(e, "expected an abstraction");
  }

  SecondOrderAbstraction so_abstraction(const SExpr& e, const Scope& sc) const {
    if (e.is_symbol()) {
      auto d = defs.find(e.text);
      if (d == defs.end() || d->second.params.size() != 1 ||
          !d->second.params[0].pred || d->second.params[0].arity != 1)
        malformed(e, "expected a property of unary predicates");
      return SecondOrderAbstraction(d->second.params[0].name, d->second.body);
    }
    const std::string_view h = e.head();
    if (h == "lam2") {
      expect_size(e, 3, "(lam2 X F)");
      const std::string& X = symbol(e.items[1], "a predicate variable");
      if (!is_upper(X)) malformed(e.items[1], "predicate variables start uppercase");
      return SecondOrderAbstraction(X, formula(e.items[2], sc.with_pred(X, 1)));
    }
    if (h == "raise") {
      expect_size(e, 2, "(raise ABS)");
      return raise(abstraction(e.items[1], sc, 1));
    }
    malformed(e, "expected a property of unary predicates");
  }

  std::optional<Formula> discharged(const std::string& label, const SExpr* f,
                                    const Scope& sc, bool open = false) const {
    if (f) return formula(*f, sc);
    if (auto h = sc.hyp(label); h && open) return h;
    if (auto it = lets.find(label); it != lets.end()) return it->second;
    return std::nullopt;
  }

  // Conclusion of an already elaborated premise, if it checks.
  static std::optional<Formula> conclusion_of(const Proof& p) {
    try {
      return check(p).conclusion;
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  Proof proof(const SExpr& e, const Scope& sc) const {
    if (!e.is_list() || e.head().empty()) malformed(e, "expected a proof");
    const std::string head(e.head());
    const auto& it = e.items;
    const std::size_t n = it.size();
    auto label = [&](std::size_t i) { return symbol(it[i], "a label"); };

    if (head == "ref") {
      expect_size(e, 2, "(ref name)");
      auto l = lemmas.find(label(1));
      if (l == lemmas.end()) malformed(it[1], "unknown lemma " + it[1].text);
      return l->second;
    }
    const auto rule = rule_from_name(head);
    if (!rule) throw UnknownRule(it[0].span, "unknown rule '" + head + "'");
    switch (*rule) {
      case Rule::Hyp: {
        if (n != 2 && n != 3) malformed(e, "expected (hyp h [F])");
        Proof p = Proof::hyp(label(1), Formula());
        p.formula = discharged(p.label, n == 3 ? &it[2] : nullptr, sc, true);
        return p;
      }
      case Rule::AndI:
      case Rule::ImpE:
      case Rule::NotE: {
        expect_size(e, 3, "two premises");
        Proof a = proof(it[1], sc);
        Proof b = proof(it[2], sc);
        if (*rule == Rule::AndI) return Proof::and_i(std::move(a), std::move(b));
        if (*rule == Rule::ImpE) return Proof::imp_e(std::move(a), std::move(b));
        return Proof::not_e(std::move(a), std::move(b));
      }
      case Rule::AndEL:
      case Rule::AndER: {
        expect_size(e, 2, "one premise");
        Proof a = proof(it[1], sc);
        return *rule == Rule::AndEL ? Proof::and_el(std::move(a))
                                    : Proof::and_er(std::move(a));
      }
      case Rule::OrIL:
      case Rule::OrIR:
      case Rule::BotE: {
        expect_size(e, 3, "a formula and a premise");
        Formula f = formula(it[1], sc);
        Proof a = proof(it[2], sc);
        if (*rule == Rule::OrIL) return Proof::or_il(std::move(f), std::move(a));
        if (*rule == Rule::OrIR) return Proof::or_ir(std::move(f), std::move(a));
        return Proof::bot_e(std::move(f), std::move(a));
      }
      case Rule::OrE: {
        expect_size(e, 6, "(orE p h1 q1 h2 q2)");
        Proof major = proof(it[1], sc);
        std::optional<Formula> l, r;
        if (auto c = conclusion_of(major); c && c->op() == Op::Or) {
          l = c->lhs();
          r = c->rhs();
        }
        Proof left = proof(it[3], sc.with_hyp(label(2), l));
        Proof right = proof(it[5], sc.with_hyp(label(4), r));
        return Proof::or_e(std::move(major), label(2), std::move(left), label(4),
                           std::move(right));
      }
      case Rule::ImpI:
      case Rule::NotI:
      case Rule::Raa: {
        if (n != 3 && n != 4) malformed(e, "expected (" + head + " h [F] p)");
        const std::string h = label(1);
        auto f = discharged(h, n == 4 ? &it[2] : nullptr, sc);
        Proof a = proof(it[n - 1], sc.with_hyp(h, f));
        if (*rule == Rule::ImpI) return Proof::imp_i(h, std::move(f), std::move(a));
        if (*rule == Rule::NotI) return Proof::not_i(h, std::move(f), std::move(a));
        return Proof::raa(h, std::move(f), std::move(a));
      }
      case Rule::ForallI: {
        expect_size(e, 3, "(forallI x p)");
        const std::string x = symbol(it[1], "a variable");
        if (is_upper(x)) malformed(it[1], "individual variables start lowercase");
        return Proof::forall_i(x, proof(it[2], sc.with_ind(x)));
      }
      case Rule::ForallE: {
        expect_size(e, 3, "(forallE p t)");
        return Proof::forall_e(proof(it[1], sc), term(it[2], sc));
      }
      case Rule::ExistsI: {
        expect_size(e, 4, "(existsI F t p)");
        return Proof::exists_i(formula(it[1], sc), term(it[2], sc), proof(it[3], sc));
      }
      case Rule::ExistsE: {
        expect_size(e, 5, "(existsE p y h q)");
        const std::string y = symbol(it[2], "a variable");
        if (is_upper(y)) malformed(it[2], "individual variables start lowercase");
        Proof major = proof(it[1], sc);
        std::optional<Formula> b;
        if (auto c = conclusion_of(major); c && c->op() == Op::ExistsInd)
          b = subst_term(c->body(), c->var(), Term::var(y));
        Proof minor = proof(it[4], sc.with_ind(y).with_hyp(label(3), b));
        return Proof::exists_e(std::move(major), y, label(3), std::move(minor));
      }
      case Rule::Forall2I: {
        expect_size(e, 4, "(forall2I X n p)");
        const std::string X = symbol(it[1], "a predicate variable");
        if (!is_upper(X)) malformed(it[1], "predicate variables start uppercase");
        const int k = natural(it[2]);
        return Proof::forall2_i(X, k, proof(it[3], sc.with_pred(X, k)));
      }
      case Rule::Forall2E: {
        expect_size(e, 3, "(forall2E p ABS)");
        Proof a = proof(it[1], sc);
        return Proof::forall2_e(std::move(a), abstraction(it[2], sc, std::nullopt));
      }
      case Rule::Exists2I: {
        expect_size(e, 4, "(exists2I F ABS p)");
        Formula target = formula(it[1], sc);
        std::optional<int> k;
        if (target.op() == Op::ExistsPred) k = target.binder_arity();
        return Proof::exists2_i(target, abstraction(it[2], sc, k), proof(it[3], sc));
      }
      case Rule::Exists2E: {
        expect_size(e, 5, "(exists2E p Y h q)");
        std::string Y;
        int k = -1;
        if (it[2].is_list()) {
          expect_size(it[2], 2, "(Y n)");
          Y = symbol(it[2].items[0], "a predicate variable");
          k = natural(it[2].items[1]);
        } else {
          Y = symbol(it[2], "a predicate variable");
          auto d = sc.pred_arity(Y);
          if (!d) {
            if (auto f = sig.pred_vars.find(Y); f != sig.pred_vars.end()) d = f->second;
          }
          if (!d) malformed(it[2], "give the arity of " + Y + " as (" + Y + " n)");
          k = *d;
        }
        if (!is_upper(Y)) malformed(it[2], "predicate variables start uppercase");
        Proof major = proof(it[1], sc);
        std::optional<Formula> b;
        if (auto c = conclusion_of(major);
            c && c->op() == Op::ExistsPred && c->binder_arity() == k)
          b = subst_pred(c->body(), c->var(), k,
                         PredAbstraction::of_pred(PredRef::var(Y, k)));
        Proof minor = proof(it[4], sc.with_pred(Y, k).with_hyp(label(3), b));
        return Proof::exists2_e(std::move(major), Y, label(3), std::move(minor), k);
      }
      case Rule::HenkinI: {
        expect_size(e, 7, "(henkinI (T B K) A B pA pB pPhi)");
        if (!it[1].is_list() || it[1].items.size() != 3)
          malformed(it[1], "expected (T B K)");
        const auto hs = henkin_sig(it[1].items[0], it[1].items[1], it[1].items[2]);
        return Proof::henkin_i(hs, abstraction(it[2], sc, 2), abstraction(it[3], sc, 2),
                               proof(it[4], sc), proof(it[5], sc), proof(it[6], sc));
      }
      case Rule::HenkinE: {
        expect_size(e, 7, "(henkinE (T B K) p A B h q)");
        if (!it[1].is_list() || it[1].items.size() != 3)
          malformed(it[1], "expected (T B K)");
        const auto hs = henkin_sig(it[1].items[0], it[1].items[1], it[1].items[2]);
        const std::string A = symbol(it[3], "a predicate variable");
        const std::string B = symbol(it[4], "a predicate variable");
        const Formula closed = expand_henkin(hs);
        const Formula inner = subst_pred(closed.body(), closed.var(), 2,
                                         PredAbstraction::of_pred(PredRef::var(A, 2)));
        const Formula psi = subst_pred(inner.body(), inner.var(), 2,
                                       PredAbstraction::of_pred(PredRef::var(B, 2)));
        Proof minor = proof(it[6], sc.with_pred(A, 2).with_pred(B, 2).with_hyp(label(5), psi));
        return Proof::henkin_e(hs, proof(it[2], sc), A, B, label(5), std::move(minor));
      }
    }
    malformed(e, "unsupported rule");
  }

  void define(const SExpr& form) {
    const auto& it = form.items;
    expect_size(form, 4, "(def name (params) BODY)");
    const std::string name = symbol(it[1], "a name");
    if (!it[2].is_list()) malformed(it[2], "expected a parameter list");
    Def d;
    Scope sc;
    for (const auto& p : it[2].items) {
      Param param;
      if (p.is_list()) {
        expect_size(p, 2, "(X n)");
        param.name = symbol(p.items[0], "a predicate parameter");
        if (!is_upper(param.name)) malformed(p, "predicate parameters start uppercase");
        param.pred = true;
        param.arity = natural(p.items[1]);
        sc.preds.emplace_back(param.name, param.arity);
      } else {
        param.name = symbol(p, "a parameter");
        if (is_upper(param.name))
          malformed(p, "write predicate parameters as (X n)");
        sc.inds.push_back(param.name);
      }
      for (const auto& q : d.params)
        if (q.name == param.name) malformed(p, "repeated parameter " + param.name);
      d.params.push_back(param);
    }
    d.body = formula(it[3], sc);
    defs.insert_or_assign(name, std::move(d));
  }

  bool declare(const SExpr& form) {
    const std::string_view h = form.head();
    const auto& it = form.items;
    if (h == "const") {
      for (std::size_t i = 1; i < it.size(); ++i) {
        const std::string& c = symbol(it[i], "a constant");
        if (is_upper(c)) malformed(it[i], "constants start lowercase");
        sig.constants.insert(c);
      }
      return true;
    }
    if (h == "predvar" || h == "pred") {
      if (it.size() % 2 != 1) malformed(form, "expected name/arity pairs");
      for (std::size_t i = 1; i < it.size(); i += 2) {
        const std::string& X = symbol(it[i], "a predicate");
        if (!is_upper(X)) malformed(it[i], "predicates start uppercase");
        const int k = natural(it[i + 1]);
        (h == "predvar" ? sig.pred_vars : sig.pred_consts)[X] = k;
      }
      return true;
    }
    if (h == "def") {
      if (it.size() >= 2 && it[1].is_symbol()) {
        if (auto o = overrides.find(it[1].text); o != overrides.end()) {
          define(o->second);
          return true;
        }
      }
      define(form);
      return true;
    }
    if (h == "let") {
      expect_size(form, 3, "(let h F)");
      lets.insert_or_assign(symbol(it[1], "a label"), formula(it[2], Scope{}));
      return true;
    }
    if (h == "lemma") {
      expect_size(form, 3, "(lemma name P)");
      lemmas.insert_or_assign(symbol(it[1], "a name"), proof(it[2], Scope{}));
      return true;
    }
    if (h == "include") {
      expect_size(form, 2, "(include \"file\")");
      if (it[1].kind != SExpr::Kind::String) malformed(it[1], "expected a file name");
      const fs::path path = base_dir / it[1].text;
      std::string text;
      try {
        text = read_text_file(path);
      } catch (const Error& ex) {
        malformed(it[1], ex.what());
      }
      for (const SExpr& d : read_sexprs(text, path.string()))
        if (!d.is_list() || !declare(d)) malformed(d, "an included file holds declarations only");
      return true;
    }
    if (h == "import") {
      expect_size(form, 3, "(import name \"file\")");
      if (it[2].kind != SExpr::Kind::String) malformed(it[2], "expected a file name");
      const fs::path path = base_dir / it[2].text;
      ScriptOptions opts;
      opts.overrides = overrides;
      try {
        lemmas.insert_or_assign(symbol(it[1], "a name"), parse_proof_file(path, opts));
      } catch (const SyntaxError&) {
        throw;
      } catch (const Error& ex) {
        malformed(it[2], ex.what());
      }
      return true;
    }
    return false;
  }
};

ScriptContext::ScriptContext(std::string file, fs::path base_dir)
    : impl_(std::make_unique<Impl>()) {
  impl_->file = std::move(file);
  impl_->base_dir = std::move(base_dir);
}
ScriptContext::~ScriptContext() = default;
ScriptContext::ScriptContext(ScriptContext&&) noexcept = default;
ScriptContext& ScriptContext::operator=(ScriptContext&&) noexcept = default;

void ScriptContext::set_overrides(std::map<std::string, SExpr> overrides) {
  impl_->overrides = std::move(overrides);
}
bool ScriptContext::declare(const SExpr& form) { return impl_->declare(form); }
Formula ScriptContext::formula(const SExpr& e) const {
  return impl_->formula(e, Scope{});
}
PredAbstraction ScriptContext::abstraction(const SExpr& e,
                                           std::optional<int> arity) const {
  return impl_->abstraction(e, Scope{}, arity);
}
Proof ScriptContext::proof(const SExpr& e) const { return impl_->proof(e, Scope{}); }
const Signature& ScriptContext::signature() const { return impl_->sig; }

Proof parse_proof(std::string_view text, const std::string& file,
                  const ScriptOptions& options) {
  ScriptContext ctx(file, options.base_dir);
  ctx.set_overrides(options.overrides);
  std::optional<Proof> result;
  for (const SExpr& form : read_sexprs(text, file)) {
    if (form.is_list() && ctx.declare(form)) continue;
    if (result) malformed(form, "a script holds exactly one proof");
    if (form.head() == "proof") {
      expect_size(form, 2, "(proof P)");
      result = ctx.proof(form.items[1]);
    } else {
      result = ctx.proof(form);
    }
  }
  if (!result) {
    SourceSpan end{file, 1, 1};
    for (char c : text) {
      if (c == '\n') {
        ++end.line;
        end.column = 1;
      } else {
        ++end.column;
      }
    }
    throw MalformedPayload(end, "script contains no proof");
  }
  return *result;
}

Proof parse_proof_file(const fs::path& path, const ScriptOptions& options) {
  const std::string text = read_text_file(path);
  ScriptOptions opts = options;
  opts.base_dir = path.parent_path();
  return parse_proof(text, path.string(), opts);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

struct Header {
  std::set<std::string> constants;
  std::map<std::string, int> pred_vars;

  void formula(const Formula& f) {
    const auto cs = constants_of(f);
    constants.insert(cs.begin(), cs.end());
    for (const auto& [name, n] : free_pred_vars(f)) pred_vars.emplace(name, n);
  }
  static std::set<std::string> constants_of(const Formula& f) {
    return sol::constants(f);
  }
  void term(const Term& t) {
    if (!t.is_var()) constants.insert(t.name);
  }
  void walk(const Proof& p) {
    if (p.formula) formula(*p.formula);
    if (p.term) term(*p.term);
    for (const auto& a : p.abstractions) formula(a.body());
    for (const auto& q : p.premises) walk(q);
  }
};

class ProofPrinter {
 public:
  std::string run(const Proof& p) {
    print(p, 2);
    return std::move(out_);
  }

 private:
  void print(const Proof& p, int indent) {
    out_ += '(';
    out_ += rule_name(p.rule);
    auto word = [&](const std::string& s) {
      out_ += ' ';
      out_ += s;
    };
    auto form = [&](const Formula& f) { word(pretty_sexpr(f)); };
    auto abs = [&](const PredAbstraction& a) { word(pretty_sexpr(a)); };
    auto prem = [&](std::size_t i) {
      out_ += '\n';
      out_.append(indent, ' ');
      print(p.premises.at(i), indent + 2);
    };
    auto sig = [&] {
      word("(" + p.signature->T.name + " " + p.signature->B.name + " " +
           p.signature->K.name + ")");
    };
    switch (p.rule) {
      case Rule::Hyp:
        word(p.label);
        if (p.formula) form(*p.formula);
        break;
      case Rule::AndI:
      case Rule::ImpE:
      case Rule::NotE:
        prem(0);
        prem(1);
        break;
      case Rule::AndEL:
      case Rule::AndER:
        prem(0);
        break;
      case Rule::OrIL:
      case Rule::OrIR:
      case Rule::BotE:
        form(*p.formula);
        prem(0);
        break;
      case Rule::OrE:
        prem(0);
        word(p.label);
        prem(1);
        word(p.label2);
        prem(2);
        break;
      case Rule::ImpI:
      case Rule::NotI:
      case Rule::Raa:
        word(p.label);
        if (p.formula) form(*p.formula);
        prem(0);
        break;
      case Rule::ForallI:
        word(p.var);
        prem(0);
        break;
      case Rule::ForallE:
        prem(0);
        word(p.term->name);
        break;
      case Rule::ExistsI:
        form(*p.formula);
        word(p.term->name);
        prem(0);
        break;
      case Rule::ExistsE:
        prem(0);
        word(p.var);
        word(p.label);
        prem(1);
        break;
      case Rule::Forall2I:
        word(p.var);
        word(std::to_string(p.arity));
        prem(0);
        break;
      case Rule::Forall2E:
        prem(0);
        abs(p.abstractions.at(0));
        break;
      case Rule::Exists2I:
        form(*p.formula);
        abs(p.abstractions.at(0));
        prem(0);
        break;
      case Rule::Exists2E:
        prem(0);
        word(p.arity < 0 ? p.var : "(" + p.var + " " + std::to_string(p.arity) + ")");
        word(p.label);
        prem(1);
        break;
      case Rule::HenkinI:
        sig();
        abs(p.abstractions.at(0));
        abs(p.abstractions.at(1));
        prem(0);
        prem(1);
        prem(2);
        break;
      case Rule::HenkinE:
        sig();
        prem(0);
        word(p.var);
        word(p.var2);
        word(p.label);
        prem(1);
        break;
    }
    out_ += ')';
  }

  std::string out_;
};

}  // namespace

std::string pretty_proof(const Proof& p) {
  Header h;
  h.walk(p);
  std::string out;
  if (!h.constants.empty()) {
    out += "(const";
    for (const auto& c : h.constants) out += " " + c;
    out += ")\n";
  }
  if (!h.pred_vars.empty()) {
    out += "(predvar";
    for (const auto& [name, n] : h.pred_vars) out += " " + name + " " + std::to_string(n);
    out += ")\n";
  }
  out += "(proof\n  ";
  out += ProofPrinter{}.run(p);
  out += ")\n";
  return out;
}

}  // namespace sol
