#include "sol/syntax.hpp"

#include <algorithm>
#include <cctype>

namespace sol {

struct Formula::Node {
  Op op = Op::Bot;
  PredRef pred;
  std::vector<Term> args;
  std::string var;
  int arity = 0;
  Formula a;
  Formula b;
};

// A null node denotes bot.
Formula::Formula() = default;

Formula Formula::atom(PredRef pred, std::vector<Term> args) {
  if (static_cast<int>(args.size()) != pred.arity)
    throw ArityMismatch("atom " + pred.name + " has arity " +
                        std::to_string(pred.arity) + " but " +
                        std::to_string(args.size()) + " arguments");
  auto n = std::make_shared<Node>();
  n->op = Op::Atom;
  n->pred = std::move(pred);
  n->args = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::bot() { return Formula(); }

Formula Formula::neg(Formula f) {
  auto n = std::make_shared<Node>();
  n->op = Op::Not;
  n->a = std::move(f);
  return Formula(std::move(n));
}

Formula Formula::make_binary(Op op, Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::make_binder(Op op, std::string var, int arity, Formula body) {
  if (arity < 0) throw ArityMismatch("negative binder arity");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->var = std::move(var);
  n->arity = arity;
  n->a = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
  return make_binary(Op::And, std::move(a), std::move(b));
}
Formula Formula::disj(Formula a, Formula b) {
  return make_binary(Op::Or, std::move(a), std::move(b));
}
Formula Formula::implies(Formula a, Formula b) {
  return make_binary(Op::Implies, std::move(a), std::move(b));
}
Formula Formula::iff(const Formula& a, const Formula& b) {
  return conj(implies(a, b), implies(b, a));
}
Formula Formula::forall_ind(std::string var, Formula body) {
  return make_binder(Op::ForallInd, std::move(var), 0, std::move(body));
}
Formula Formula::exists_ind(std::string var, Formula body) {
  return make_binder(Op::ExistsInd, std::move(var), 0, std::move(body));
}
Formula Formula::forall_pred(std::string var, int arity, Formula body) {
  return make_binder(Op::ForallPred, std::move(var), arity, std::move(body));
}
Formula Formula::exists_pred(std::string var, int arity, Formula body) {
  return make_binder(Op::ExistsPred, std::move(var), arity, std::move(body));
}

Op Formula::op() const { return node_ ? node_->op : Op::Bot; }
const PredRef& Formula::pred() const { return node_->pred; }
const std::vector<Term>& Formula::args() const { return node_->args; }
const Formula& Formula::lhs() const { return node_->a; }
const Formula& Formula::rhs() const { return node_->b; }
const std::string& Formula::var() const { return node_->var; }
int Formula::binder_arity() const { return node_->arity; }

bool Formula::is_binary() const {
  return op() == Op::And || op() == Op::Or || op() == Op::Implies;
}
bool Formula::is_ind_binder() const {
  return op() == Op::ForallInd || op() == Op::ExistsInd;
}
bool Formula::is_pred_binder() const {
  return op() == Op::ForallPred || op() == Op::ExistsPred;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Bot:
      return true;
    case Op::Atom:
      return a.pred() == b.pred() && a.args() == b.args();
    case Op::Not:
      return a.lhs() == b.lhs();
    case Op::And:
    case Op::Or:
    case Op::Implies:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    default:
      return a.var() == b.var() && a.binder_arity() == b.binder_arity() &&
             a.body() == b.body();
  }
}

std::size_t Formula::size() const {
  switch (op()) {
    case Op::Atom:
    case Op::Bot:
      return 1;
    case Op::Not:
      return 1 + lhs().size();
    case Op::And:
    case Op::Or:
    case Op::Implies:
      return 1 + lhs().size() + rhs().size();
    default:
      return 1 + body().size();
  }
}

// ---------------------------------------------------------------------------
// Abstractions

PredAbstraction::PredAbstraction(std::vector<std::string> params, Formula body)
    : params_(std::move(params)), body_(std::move(body)) {
  std::set<std::string> seen;
  for (const auto& p : params_)
    if (!seen.insert(p).second)
      throw std::invalid_argument("abstraction parameter " + p +
                                  " repeated");
}

PredAbstraction PredAbstraction::of_pred(const PredRef& pred) {
  std::vector<std::string> params;
  std::vector<Term> args;
  for (int i = 0; i < pred.arity; ++i) {
    params.push_back("x" + std::to_string(i + 1));
    args.push_back(Term::var(params.back()));
  }
  return PredAbstraction(std::move(params), Formula::atom(pred, std::move(args)));
}

Formula PredAbstraction::apply(const std::vector<Term>& args) const {
  if (static_cast<int>(args.size()) != arity())
    throw ArityMismatch("abstraction of arity " + std::to_string(arity()) +
                        " applied to " + std::to_string(args.size()) +
                        " terms");
  std::map<std::string, Term> m;
  for (std::size_t i = 0; i < args.size(); ++i) m.emplace(params_[i], args[i]);
  return subst_terms(body_, m);
}

SecondOrderAbstraction::SecondOrderAbstraction(std::string param, Formula body)
    : param_(std::move(param)), body_(std::move(body)) {}

Formula SecondOrderAbstraction::apply(const PredAbstraction& arg) const {
  return subst_pred(body_, param_, 1, arg);
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

void collect_free_ind(const Formula& f, std::vector<std::string>& bound,
                      std::set<std::string>& out) {
  switch (f.op()) {
    case Op::Atom:
      for (const auto& t : f.args())
        if (t.is_var() &&
            std::find(bound.begin(), bound.end(), t.name) == bound.end())
          out.insert(t.name);
      return;
    case Op::Bot:
      return;
    case Op::Not:
      collect_free_ind(f.lhs(), bound, out);
      return;
    case Op::And:
    case Op::Or:
    case Op::Implies:
      collect_free_ind(f.lhs(), bound, out);
      collect_free_ind(f.rhs(), bound, out);
      return;
    case Op::ForallInd:
    case Op::ExistsInd:
      bound.push_back(f.var());
      collect_free_ind(f.body(), bound, out);
      bound.pop_back();
      return;
    case Op::ForallPred:
    case Op::ExistsPred:
      collect_free_ind(f.body(), bound, out);
      return;
  }
}

void collect_free_pred(const Formula& f, std::vector<PredVarKey>& bound,
                       std::set<PredVarKey>& out) {
  switch (f.op()) {
    case Op::Atom:
      if (f.pred().is_var()) {
        PredVarKey k{f.pred().name, f.pred().arity};
        if (std::find(bound.begin(), bound.end(), k) == bound.end())
          out.insert(k);
      }
      return;
    case Op::Bot:
      return;
    case Op::Not:
      collect_free_pred(f.lhs(), bound, out);
      return;
    case Op::And:
    case Op::Or:
    case Op::Implies:
      collect_free_pred(f.lhs(), bound, out);
      collect_free_pred(f.rhs(), bound, out);
      return;
    case Op::ForallInd:
    case Op::ExistsInd:
      collect_free_pred(f.body(), bound, out);
      return;
    case Op::ForallPred:
    case Op::ExistsPred:
      bound.emplace_back(f.var(), f.binder_arity());
      collect_free_pred(f.body(), bound, out);
      bound.pop_back();
      return;
  }
}

template <typename Fn>
void visit(const Formula& f, Fn&& fn) {
  fn(f);
  switch (f.op()) {
    case Op::Atom:
    case Op::Bot:
      return;
    case Op::Not:
      visit(f.lhs(), fn);
      return;
    case Op::And:
    case Op::Or:
    case Op::Implies:
      visit(f.lhs(), fn);
      visit(f.rhs(), fn);
      return;
    default:
      visit(f.body(), fn);
      return;
  }
}

}  // namespace

std::set<std::string> free_ind_vars(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free_ind(f, bound, out);
  return out;
}

std::set<PredVarKey> free_pred_vars(const Formula& f) {
  std::vector<PredVarKey> bound;
  std::set<PredVarKey> out;
  collect_free_pred(f, bound, out);
  return out;
}

std::set<std::string> free_ind_vars(const PredAbstraction& a) {
  auto out = free_ind_vars(a.body());
  for (const auto& p : a.params()) out.erase(p);
  return out;
}

std::set<PredVarKey> free_pred_vars(const PredAbstraction& a) {
  return free_pred_vars(a.body());
}

std::set<std::string> constants(const Formula& f) {
  std::set<std::string> out;
  visit(f, [&](const Formula& g) {
    if (g.op() == Op::Atom)
      for (const auto& t : g.args())
        if (!t.is_var()) out.insert(t.name);
  });
  return out;
}

std::set<PredVarKey> pred_constants(const Formula& f) {
  std::set<PredVarKey> out;
  visit(f, [&](const Formula& g) {
    if (g.op() == Op::Atom && !g.pred().is_var())
      out.emplace(g.pred().name, g.pred().arity);
  });
  return out;
}

std::set<std::string> all_names(const Formula& f) {
  std::set<std::string> out;
  visit(f, [&](const Formula& g) {
    if (g.op() == Op::Atom) {
      out.insert(g.pred().name);
      for (const auto& t : g.args()) out.insert(t.name);
    } else if (g.is_ind_binder() || g.is_pred_binder()) {
      out.insert(g.var());
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace {

template <typename Key>
int lookup(const std::vector<Key>& stack, const Key& k) {
  for (int i = static_cast<int>(stack.size()) - 1; i >= 0; --i)
    if (stack[i] == k) return i;
  return -1;
}

struct AlphaEnv {
  std::vector<std::string> ind_l, ind_r;
  std::vector<PredVarKey> pred_l, pred_r;
};

bool term_aeq(const Term& s, const Term& t, const AlphaEnv& env) {
  if (s.kind != t.kind) return false;
  if (!s.is_var()) return s.name == t.name;
  const int i = lookup(env.ind_l, s.name);
  const int j = lookup(env.ind_r, t.name);
  if (i < 0 && j < 0) return s.name == t.name;
  return i == j;
}

bool aeq(const Formula& f, const Formula& g, AlphaEnv& env) {
  if (f.op() != g.op()) return false;
  switch (f.op()) {
    case Op::Bot:
      return true;
    case Op::Atom: {
      const auto& p = f.pred();
      const auto& q = g.pred();
      if (p.kind != q.kind || p.arity != q.arity) return false;
      if (p.is_var()) {
        const int i = lookup(env.pred_l, PredVarKey{p.name, p.arity});
        const int j = lookup(env.pred_r, PredVarKey{q.name, q.arity});
        if (i < 0 && j < 0) {
          if (p.name != q.name) return false;
        } else if (i != j) {
          return false;
        }
      } else if (p.name != q.name) {
        return false;
      }
      for (std::size_t k = 0; k < f.args().size(); ++k)
        if (!term_aeq(f.args()[k], g.args()[k], env)) return false;
      return true;
    }
    case Op::Not:
      return aeq(f.lhs(), g.lhs(), env);
    case Op::And:
    case Op::Or:
    case Op::Implies:
      return aeq(f.lhs(), g.lhs(), env) && aeq(f.rhs(), g.rhs(), env);
    case Op::ForallInd:
    case Op::ExistsInd: {
      env.ind_l.push_back(f.var());
      env.ind_r.push_back(g.var());
      const bool r = aeq(f.body(), g.body(), env);
      env.ind_l.pop_back();
      env.ind_r.pop_back();
      return r;
    }
    case Op::ForallPred:
    case Op::ExistsPred: {
      if (f.binder_arity() != g.binder_arity()) return false;
      env.pred_l.emplace_back(f.var(), f.binder_arity());
      env.pred_r.emplace_back(g.var(), g.binder_arity());
      const bool r = aeq(f.body(), g.body(), env);
      env.pred_l.pop_back();
      env.pred_r.pop_back();
      return r;
    }
  }
  return false;
}

}  // namespace

bool alpha_eq(const Formula& f, const Formula& g) {
  AlphaEnv env;
  return aeq(f, g, env);
}

bool alpha_eq(const PredAbstraction& a, const PredAbstraction& b) {
  if (a.arity() != b.arity()) return false;
  AlphaEnv env;
  env.ind_l = a.params();
  env.ind_r = b.params();
  return aeq(a.body(), b.body(), env);
}

// ---------------------------------------------------------------------------
// Substitution

std::string fresh_name(const std::string& base,
                       const std::set<std::string>& avoid) {
  if (!avoid.contains(base)) return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back())))
    stem.pop_back();
  if (stem.empty()) stem = base;
  for (int i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!avoid.contains(candidate)) return candidate;
  }
}

namespace {

struct Subst {
  std::map<std::string, Term> ind;
  std::map<PredVarKey, PredAbstraction> pred;

  bool empty() const { return ind.empty() && pred.empty(); }
};

Term apply_term(const Term& t, const Subst& s) {
  if (!t.is_var()) return t;
  auto it = s.ind.find(t.name);
  return it == s.ind.end() ? t : it->second;
}

// Drops entries whose key does not occur free in body.
Subst restrict_to(const Subst& s, const Formula& body) {
  Subst r;
  if (!s.ind.empty()) {
    const auto fv = free_ind_vars(body);
    for (const auto& [k, v] : s.ind)
      if (fv.contains(k)) r.ind.emplace(k, v);
  }
  if (!s.pred.empty()) {
    const auto fp = free_pred_vars(body);
    for (const auto& [k, v] : s.pred)
      if (fp.contains(k)) r.pred.emplace(k, v);
  }
  return r;
}

Formula apply(const Formula& f, const Subst& s) {
  if (s.empty()) return f;
  switch (f.op()) {
    case Op::Bot:
      return f;
    case Op::Atom: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      for (const auto& t : f.args()) args.push_back(apply_term(t, s));
      if (f.pred().is_var()) {
        auto it = s.pred.find({f.pred().name, f.pred().arity});
        if (it != s.pred.end()) return it->second.apply(args);
      }
      return Formula::atom(f.pred(), std::move(args));
    }
    case Op::Not:
      return Formula::neg(apply(f.lhs(), s));
    case Op::And:
      return Formula::conj(apply(f.lhs(), s), apply(f.rhs(), s));
    case Op::Or:
      return Formula::disj(apply(f.lhs(), s), apply(f.rhs(), s));
    case Op::Implies:
      return Formula::implies(apply(f.lhs(), s), apply(f.rhs(), s));
    case Op::ForallInd:
    case Op::ExistsInd: {
      Subst inner = s;
      inner.ind.erase(f.var());
      inner = restrict_to(inner, f.body());
      if (inner.empty()) return f;
      std::set<std::string> range;
      for (const auto& [k, t] : inner.ind)
        if (t.is_var()) range.insert(t.name);
      for (const auto& [k, a] : inner.pred)
        for (const auto& v : free_ind_vars(a)) range.insert(v);
      std::string var = f.var();
      if (range.contains(var)) {
        auto avoid = range;
        for (const auto& v : free_ind_vars(f.body())) avoid.insert(v);
        var = fresh_name(var, avoid);
        inner.ind.insert_or_assign(f.var(), Term::var(var));
      }
      Formula body = apply(f.body(), inner);
      return f.op() == Op::ForallInd ? Formula::forall_ind(var, body)
                                     : Formula::exists_ind(var, body);
    }
    case Op::ForallPred:
    case Op::ExistsPred: {
      const PredVarKey key{f.var(), f.binder_arity()};
      Subst inner = s;
      inner.pred.erase(key);
      inner = restrict_to(inner, f.body());
      if (inner.empty()) return f;
      std::set<PredVarKey> range;
      for (const auto& [k, a] : inner.pred)
        for (const auto& v : free_pred_vars(a)) range.insert(v);
      std::string var = f.var();
      if (range.contains(key)) {
        std::set<std::string> avoid;
        for (const auto& v : range) avoid.insert(v.first);
        for (const auto& v : free_pred_vars(f.body())) avoid.insert(v.first);
        var = fresh_name(var, avoid);
        inner.pred.insert_or_assign(
            key, PredAbstraction::of_pred(PredRef::var(var, f.binder_arity())));
      }
      Formula body = apply(f.body(), inner);
      return f.op() == Op::ForallPred
                 ? Formula::forall_pred(var, f.binder_arity(), body)
                 : Formula::exists_pred(var, f.binder_arity(), body);
    }
  }
  return f;
}

}  // namespace

Formula subst_terms(const Formula& f, const std::map<std::string, Term>& m) {
  Subst s;
  for (const auto& [k, v] : m)
    if (!(v.is_var() && v.name == k)) s.ind.emplace(k, v);
  return apply(f, s);
}

Formula subst_term(const Formula& f, const std::string& x, const Term& t) {
  return subst_terms(f, {{x, t}});
}

Formula subst_pred(const Formula& f, const std::string& X, int n,
                   const PredAbstraction& abs) {
  if (abs.arity() != n)
    throw ArityMismatch("substituting an abstraction of arity " +
                        std::to_string(abs.arity()) + " for " + X + "/" +
                        std::to_string(n));
  Subst s;
  s.pred.emplace(PredVarKey{X, n}, abs);
  return apply(f, s);
}

}  // namespace sol
