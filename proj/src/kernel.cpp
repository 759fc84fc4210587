#include "sol/kernel.hpp"

#include <array>

#include "sol/parser.hpp"

namespace sol {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 23> kRuleNames{{
    {Rule::Hyp, "hyp"},         {Rule::AndI, "andI"},
    {Rule::AndEL, "andEL"},     {Rule::AndER, "andER"},
    {Rule::OrIL, "orIL"},       {Rule::OrIR, "orIR"},
    {Rule::OrE, "orE"},         {Rule::ImpI, "impI"},
    {Rule::ImpE, "impE"},       {Rule::NotI, "notI"},
    {Rule::NotE, "notE"},       {Rule::BotE, "botE"},
    {Rule::Raa, "raa"},         {Rule::ForallI, "forallI"},
    {Rule::ForallE, "forallE"}, {Rule::ExistsI, "existsI"},
    {Rule::ExistsE, "existsE"}, {Rule::Forall2I, "forall2I"},
    {Rule::Forall2E, "forall2E"}, {Rule::Exists2I, "exists2I"},
    {Rule::Exists2E, "exists2E"}, {Rule::HenkinI, "henkinI"},
    {Rule::HenkinE, "henkinE"},
}};

}  // namespace

std::string_view rule_name(Rule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& [rule, n] : kRuleNames)
    if (n == name) return rule;
  return std::nullopt;
}

std::string format_path(const ProofPath& path) {
  std::string out = "root";
  for (int i : path) out += "." + std::to_string(i);
  return out;
}

std::string_view kind_name(CheckError::Kind k) {
  switch (k) {
    case CheckError::Kind::EigenvariableViolation:
      return "EigenvariableViolation";
    case CheckError::Kind::EigenpredicateViolation:
      return "EigenpredicateViolation";
    case CheckError::Kind::DischargeMismatch:
      return "DischargeMismatch";
    case CheckError::Kind::ConclusionMismatch:
      return "ConclusionMismatch";
    case CheckError::Kind::ArityMismatch:
      return "ArityMismatch";
    case CheckError::Kind::UnknownHypothesis:
      return "UnknownHypothesis";
    case CheckError::Kind::SideConditionViolation:
      return "SideConditionViolation";
  }
  return "?";
}

CheckError::CheckError(Kind kind, ProofPath location, std::string detail)
    : Error(std::string(kind_name(kind)) + " at " + format_path(location) +
            ": " + detail),
      kind_(kind),
      location_(std::move(location)),
      detail_(std::move(detail)) {}

// ---------------------------------------------------------------------------
// Constructors

namespace {

Proof node(Rule r, std::vector<Proof> premises) {
  Proof p;
  p.rule = r;
  p.premises = std::move(premises);
  return p;
}

}  // namespace

Proof Proof::hyp(std::string label, Formula f) {
  Proof p = node(Rule::Hyp, {});
  p.label = std::move(label);
  p.formula = std::move(f);
  return p;
}
Proof Proof::and_i(Proof a, Proof b) {
  return node(Rule::AndI, {std::move(a), std::move(b)});
}
Proof Proof::and_el(Proof p) { return node(Rule::AndEL, {std::move(p)}); }
Proof Proof::and_er(Proof p) { return node(Rule::AndER, {std::move(p)}); }
Proof Proof::or_il(Formula right, Proof p) {
  Proof q = node(Rule::OrIL, {std::move(p)});
  q.formula = std::move(right);
  return q;
}
Proof Proof::or_ir(Formula left, Proof p) {
  Proof q = node(Rule::OrIR, {std::move(p)});
  q.formula = std::move(left);
  return q;
}
Proof Proof::or_e(Proof major, std::string h1, Proof left, std::string h2,
                  Proof right) {
  Proof q = node(Rule::OrE, {std::move(major), std::move(left), std::move(right)});
  q.label = std::move(h1);
  q.label2 = std::move(h2);
  return q;
}
Proof Proof::imp_i(std::string h, std::optional<Formula> a, Proof p) {
  Proof q = node(Rule::ImpI, {std::move(p)});
  q.label = std::move(h);
  q.formula = std::move(a);
  return q;
}
Proof Proof::imp_e(Proof major, Proof minor) {
  return node(Rule::ImpE, {std::move(major), std::move(minor)});
}
Proof Proof::not_i(std::string h, std::optional<Formula> a, Proof p) {
  Proof q = node(Rule::NotI, {std::move(p)});
  q.label = std::move(h);
  q.formula = std::move(a);
  return q;
}
Proof Proof::not_e(Proof p, Proof q) {
  return node(Rule::NotE, {std::move(p), std::move(q)});
}
Proof Proof::bot_e(Formula c, Proof p) {
  Proof q = node(Rule::BotE, {std::move(p)});
  q.formula = std::move(c);
  return q;
}
Proof Proof::raa(std::string h, std::optional<Formula> neg_a, Proof p) {
  Proof q = node(Rule::Raa, {std::move(p)});
  q.label = std::move(h);
  q.formula = std::move(neg_a);
  return q;
}
Proof Proof::forall_i(std::string x, Proof p) {
  Proof q = node(Rule::ForallI, {std::move(p)});
  q.var = std::move(x);
  return q;
}
Proof Proof::forall_e(Proof p, Term t) {
  Proof q = node(Rule::ForallE, {std::move(p)});
  q.term = std::move(t);
  return q;
}
Proof Proof::exists_i(Formula target, Term t, Proof p) {
  Proof q = node(Rule::ExistsI, {std::move(p)});
  q.formula = std::move(target);
  q.term = std::move(t);
  return q;
}
Proof Proof::exists_e(Proof major, std::string y, std::string h, Proof minor) {
  Proof q = node(Rule::ExistsE, {std::move(major), std::move(minor)});
  q.var = std::move(y);
  q.label = std::move(h);
  return q;
}
Proof Proof::forall2_i(std::string X, int n, Proof p) {
  Proof q = node(Rule::Forall2I, {std::move(p)});
  q.var = std::move(X);
  q.arity = n;
  return q;
}
Proof Proof::forall2_e(Proof p, PredAbstraction abs) {
  Proof q = node(Rule::Forall2E, {std::move(p)});
  q.abstractions.push_back(std::move(abs));
  return q;
}
Proof Proof::exists2_i(Formula target, PredAbstraction abs, Proof p) {
  Proof q = node(Rule::Exists2I, {std::move(p)});
  q.formula = std::move(target);
  q.abstractions.push_back(std::move(abs));
  return q;
}
Proof Proof::exists2_e(Proof major, std::string Y, std::string h, Proof minor,
                       int arity) {
  Proof q = node(Rule::Exists2E, {std::move(major), std::move(minor)});
  q.var = std::move(Y);
  q.label = std::move(h);
  q.arity = arity;
  return q;
}
Proof Proof::henkin_i(HenkinSignature sig, PredAbstraction a, PredAbstraction b,
                      Proof pa, Proof pb, Proof pphi) {
  Proof q = node(Rule::HenkinI, {std::move(pa), std::move(pb), std::move(pphi)});
  q.signature = std::move(sig);
  q.abstractions = {std::move(a), std::move(b)};
  return q;
}
Proof Proof::henkin_e(HenkinSignature sig, Proof major, std::string a,
                      std::string b, std::string h, Proof minor) {
  Proof q = node(Rule::HenkinE, {std::move(major), std::move(minor)});
  q.signature = std::move(sig);
  q.var = std::move(a);
  q.var2 = std::move(b);
  q.label = std::move(h);
  return q;
}

// ---------------------------------------------------------------------------
// Henkin encodings seen through substitution

namespace {

struct HenkinShape {
  Formula closed;  // exists F G. Psi(F,G)
  Formula inner;   // exists G'. Psi(A,G')
  Formula psi;     // Psi(A,B)
};

HenkinShape henkin_shape(const HenkinSignature& sig, const PredAbstraction& a,
                         const PredAbstraction& b) {
  HenkinShape s;
  s.closed = expand_henkin(sig, HenkinVariant::Plain);
  s.inner = subst_pred(s.closed.body(), s.closed.var(), 2, a);
  s.psi = subst_pred(s.inner.body(), s.inner.var(), 2, b);
  return s;
}

using Hyps = std::map<std::string, Formula>;

class Checker {
 public:
  Judgment run(const Proof& p) {
    path_.clear();
    return visit(p);
  }

 private:
  [[noreturn]] void fail(CheckError::Kind k, const std::string& msg) const {
    throw CheckError(k, path_, msg);
  }

  Judgment sub(const Proof& p, int i) {
    if (i >= static_cast<int>(p.premises.size()))
      fail(CheckError::Kind::ConclusionMismatch,
           std::string(rule_name(p.rule)) + " is missing premise " +
               std::to_string(i));
    path_.push_back(i);
    Judgment j = visit(p.premises[i]);
    path_.pop_back();
    return j;
  }

  void expect_premises(const Proof& p, std::size_t n) const {
    if (p.premises.size() != n)
      fail(CheckError::Kind::ConclusionMismatch,
           std::string(rule_name(p.rule)) + " takes " + std::to_string(n) +
               " premises, got " + std::to_string(p.premises.size()));
  }

  void merge_into(Hyps& into, const Hyps& from) const {
    for (const auto& [label, f] : from) {
      auto [it, inserted] = into.emplace(label, f);
      if (!inserted && !alpha_eq(it->second, f))
        fail(CheckError::Kind::DischargeMismatch,
             "label " + label + " names both " + pretty(it->second) + " and " +
                 pretty(f));
    }
  }

  // Removes `label` from hyps. If present its formula must match `expected`.
  void discharge(Hyps& hyps, const std::string& label,
                 const Formula& expected) const {
    auto it = hyps.find(label);
    if (it == hyps.end()) return;
    if (!alpha_eq(it->second, expected))
      fail(CheckError::Kind::DischargeMismatch,
           "hypothesis " + label + " is " + pretty(it->second) +
               " but the rule discharges " + pretty(expected));
    hyps.erase(it);
  }

  void require(const Formula& got, const Formula& want,
               const std::string& what) const {
    if (!alpha_eq(got, want))
      fail(CheckError::Kind::ConclusionMismatch,
           what + ": expected " + pretty(want) + ", got " + pretty(got));
  }

  void require_op(const Formula& f, Op op, const std::string& what) const {
    if (f.op() != op)
      fail(CheckError::Kind::ConclusionMismatch,
           what + " has the wrong shape: " + pretty(f));
  }

  const Formula& payload(const Proof& p) const {
    if (!p.formula)
      fail(CheckError::Kind::ConclusionMismatch,
           std::string(rule_name(p.rule)) + " needs a formula payload");
    return *p.formula;
  }

  const PredAbstraction& abstraction(const Proof& p, std::size_t i) const {
    if (p.abstractions.size() <= i)
      fail(CheckError::Kind::ArityMismatch,
           std::string(rule_name(p.rule)) + " needs an abstraction payload");
    return p.abstractions[i];
  }

  void eigenvariable(const std::string& y, const Hyps& others,
                     std::initializer_list<const Formula*> also) const {
    for (const auto& [label, f] : others)
      if (free_ind_vars(f).contains(y))
        fail(CheckError::Kind::EigenvariableViolation,
             y + " is free in open hypothesis " + label + ": " + pretty(f));
    for (const Formula* f : also)
      if (free_ind_vars(*f).contains(y))
        fail(CheckError::Kind::EigenvariableViolation,
             y + " is free in " + pretty(*f));
  }

  void eigenpredicate(const PredVarKey& key, const Hyps& others,
                      std::initializer_list<const Formula*> also) const {
    const std::string shown = key.first + ":" + std::to_string(key.second);
    for (const auto& [label, f] : others)
      if (free_pred_vars(f).contains(key))
        fail(CheckError::Kind::EigenpredicateViolation,
             shown + " is free in open hypothesis " + label + ": " + pretty(f));
    for (const Formula* f : also)
      if (free_pred_vars(*f).contains(key))
        fail(CheckError::Kind::EigenpredicateViolation,
             shown + " is free in " + pretty(*f));
  }

  Judgment visit(const Proof& p) {
    using K = CheckError::Kind;
    switch (p.rule) {
      case Rule::Hyp: {
        expect_premises(p, 0);
        if (!p.formula)
          fail(K::UnknownHypothesis, "hypothesis " + p.label + " has no formula");
        return {{{p.label, *p.formula}}, *p.formula};
      }
      case Rule::AndI: {
        expect_premises(p, 2);
        Judgment a = sub(p, 0);
        Judgment b = sub(p, 1);
        merge_into(a.hypotheses, b.hypotheses);
        a.conclusion = Formula::conj(a.conclusion, b.conclusion);
        return a;
      }
      case Rule::AndEL:
      case Rule::AndER: {
        expect_premises(p, 1);
        Judgment a = sub(p, 0);
        require_op(a.conclusion, Op::And, "premise");
        a.conclusion = p.rule == Rule::AndEL ? a.conclusion.lhs() : a.conclusion.rhs();
        return a;
      }
      case Rule::OrIL:
      case Rule::OrIR: {
        expect_premises(p, 1);
        Judgment a = sub(p, 0);
        const Formula& other = payload(p);
        a.conclusion = p.rule == Rule::OrIL ? Formula::disj(a.conclusion, other)
                                            : Formula::disj(other, a.conclusion);
        return a;
      }
      case Rule::OrE: {
        expect_premises(p, 3);
        Judgment major = sub(p, 0);
        require_op(major.conclusion, Op::Or, "major premise");
        Judgment left = sub(p, 1);
        Judgment right = sub(p, 2);
        require(right.conclusion, left.conclusion, "right case");
        discharge(left.hypotheses, p.label, major.conclusion.lhs());
        discharge(right.hypotheses, p.label2, major.conclusion.rhs());
        merge_into(major.hypotheses, left.hypotheses);
        merge_into(major.hypotheses, right.hypotheses);
        major.conclusion = left.conclusion;
        return major;
      }
      case Rule::ImpI:
      case Rule::NotI: {
        expect_premises(p, 1);
        Judgment a = sub(p, 0);
        std::optional<Formula> assumed = p.formula;
        if (!assumed) {
          auto it = a.hypotheses.find(p.label);
          if (it == a.hypotheses.end())
            fail(K::DischargeMismatch, "vacuous discharge of " + p.label +
                                           " needs the discharged formula");
          assumed = it->second;
        }
        discharge(a.hypotheses, p.label, *assumed);
        if (p.rule == Rule::NotI) {
          require_op(a.conclusion, Op::Bot, "premise of notI");
          a.conclusion = Formula::neg(*assumed);
        } else {
          a.conclusion = Formula::implies(*assumed, a.conclusion);
        }
        return a;
      }
      case Rule::ImpE: {
        expect_premises(p, 2);
        Judgment major = sub(p, 0);
        require_op(major.conclusion, Op::Implies, "major premise");
        Judgment minor = sub(p, 1);
        require(minor.conclusion, major.conclusion.lhs(), "minor premise");
        merge_into(major.hypotheses, minor.hypotheses);
        major.conclusion = major.conclusion.rhs();
        return major;
      }
      case Rule::NotE: {
        expect_premises(p, 2);
        Judgment a = sub(p, 0);
        Judgment b = sub(p, 1);
        require(b.conclusion, Formula::neg(a.conclusion), "second premise");
        merge_into(a.hypotheses, b.hypotheses);
        a.conclusion = Formula::bot();
        return a;
      }
      case Rule::BotE: {
        expect_premises(p, 1);
        Judgment a = sub(p, 0);
        require_op(a.conclusion, Op::Bot, "premise of botE");
        a.conclusion = payload(p);
        return a;
      }
      case Rule::Raa: {
        expect_premises(p, 1);
        Judgment a = sub(p, 0);
        require_op(a.conclusion, Op::Bot, "premise of raa");
        std::optional<Formula> assumed = p.formula;
        if (!assumed) {
          auto it = a.hypotheses.find(p.label);
          if (it == a.hypotheses.end())
            fail(K::DischargeMismatch, "vacuous discharge of " + p.label +
                                           " needs the discharged formula");
          assumed = it->second;
        }
        if (assumed->op() != Op::Not)
          fail(K::DischargeMismatch,
               "raa discharges a negation, got " + pretty(*assumed));
        discharge(a.hypotheses, p.label, *assumed);
        a.conclusion = assumed->lhs();
        return a;
      }
      case Rule::ForallI: {
        expect_premises(p, 1);
        Judgment a = sub(p, 0);
        eigenvariable(p.var, a.hypotheses, {});
        a.conclusion = Formula::forall_ind(p.var, a.conclusion);
        return a;
      }
      case Rule::ForallE: {
        expect_premises(p, 1);
        Judgment a = sub(p, 0);
        require_op(a.conclusion, Op::ForallInd, "premise of forallE");
        if (!p.term) fail(K::ConclusionMismatch, "forallE needs a term");
        a.conclusion = subst_term(a.conclusion.body(), a.conclusion.var(), *p.term);
        return a;
      }
      case Rule::ExistsI: {
        expect_premises(p, 1);
        Judgment a = sub(p, 0);
        const Formula& target = payload(p);
        require_op(target, Op::ExistsInd, "existsI target");
        if (!p.term) fail(K::ConclusionMismatch, "existsI needs a term");
        require(a.conclusion, subst_term(target.body(), target.var(), *p.term),
                "premise of existsI");
        a.conclusion = target;
        return a;
      }
      case Rule::ExistsE: {
        expect_premises(p, 2);
        Judgment major = sub(p, 0);
        require_op(major.conclusion, Op::ExistsInd, "major premise");
        Judgment minor = sub(p, 1);
        const Formula instance = subst_term(major.conclusion.body(),
                                            major.conclusion.var(), Term::var(p.var));
        discharge(minor.hypotheses, p.label, instance);
        eigenvariable(p.var, minor.hypotheses,
                      {&minor.conclusion, &major.conclusion});
        merge_into(major.hypotheses, minor.hypotheses);
        major.conclusion = minor.conclusion;
        return major;
      }
      case Rule::Forall2I: {
        expect_premises(p, 1);
        if (p.arity < 0) fail(K::ArityMismatch, "forall2I needs an arity");
        Judgment a = sub(p, 0);
        eigenpredicate({p.var, p.arity}, a.hypotheses, {});
        a.conclusion = Formula::forall_pred(p.var, p.arity, a.conclusion);
        return a;
      }
      case Rule::Forall2E: {
        expect_premises(p, 1);
        Judgment a = sub(p, 0);
        require_op(a.conclusion, Op::ForallPred, "premise of forall2E");
        const auto& abs = abstraction(p, 0);
        const int n = a.conclusion.binder_arity();
        if (abs.arity() != n)
          fail(K::ArityMismatch, "abstraction of arity " +
                                     std::to_string(abs.arity()) +
                                     " for a binder of arity " + std::to_string(n));
        a.conclusion = subst_pred(a.conclusion.body(), a.conclusion.var(), n, abs);
        return a;
      }
      case Rule::Exists2I: {
        expect_premises(p, 1);
        Judgment a = sub(p, 0);
        const Formula& target = payload(p);
        require_op(target, Op::ExistsPred, "exists2I target");
        const auto& abs = abstraction(p, 0);
        const int n = target.binder_arity();
        if (abs.arity() != n)
          fail(K::ArityMismatch, "abstraction of arity " +
                                     std::to_string(abs.arity()) +
                                     " for a binder of arity " + std::to_string(n));
        require(a.conclusion, subst_pred(target.body(), target.var(), n, abs),
                "premise of exists2I");
        a.conclusion = target;
        return a;
      }
      case Rule::Exists2E: {
        expect_premises(p, 2);
        Judgment major = sub(p, 0);
        require_op(major.conclusion, Op::ExistsPred, "major premise");
        const int n = major.conclusion.binder_arity();
        if (p.arity >= 0 && p.arity != n)
          fail(K::ArityMismatch, "eigenpredicate " + p.var + " declared with arity " +
                                     std::to_string(p.arity) + " for a binder of arity " +
                                     std::to_string(n));
        Judgment minor = sub(p, 1);
        const Formula instance =
            subst_pred(major.conclusion.body(), major.conclusion.var(), n,
                       PredAbstraction::of_pred(PredRef::var(p.var, n)));
        discharge(minor.hypotheses, p.label, instance);
        eigenpredicate({p.var, n}, minor.hypotheses,
                       {&minor.conclusion, &major.conclusion});
        merge_into(major.hypotheses, minor.hypotheses);
        major.conclusion = minor.conclusion;
        return major;
      }
      case Rule::HenkinI: {
        expect_premises(p, 3);
        if (!p.signature) fail(K::ConclusionMismatch, "henkinI needs a signature");
        const auto& a = abstraction(p, 0);
        const auto& b = abstraction(p, 1);
        if (a.arity() != 2 || b.arity() != 2)
          fail(K::ArityMismatch, "henkinI selectors must be binary");
        const HenkinShape shape = henkin_shape(*p.signature, a, b);
        const Formula& psi = shape.psi;
        Judgment ja = sub(p, 0);
        require(ja.conclusion, psi.lhs().lhs(), "left selector premise");
        Judgment jb = sub(p, 1);
        require(jb.conclusion, psi.lhs().rhs(), "right selector premise");
        Judgment jphi = sub(p, 2);
        require(jphi.conclusion, psi.rhs(), "closure premise");
        merge_into(ja.hypotheses, jb.hypotheses);
        merge_into(ja.hypotheses, jphi.hypotheses);
        ja.conclusion = shape.closed;
        return ja;
      }
      case Rule::HenkinE: {
        expect_premises(p, 2);
        if (!p.signature) fail(K::ConclusionMismatch, "henkinE needs a signature");
        const auto A = PredAbstraction::of_pred(PredRef::var(p.var, 2));
        const auto B = PredAbstraction::of_pred(PredRef::var(p.var2, 2));
        Judgment major = sub(p, 0);
        const HenkinShape shape = henkin_shape(*p.signature, A, B);
        require(major.conclusion, shape.closed, "major premise");
        if (p.var == p.var2)
          fail(K::SideConditionViolation,
               "eigenpredicate " + p.var2 + " is free in " + pretty(shape.inner));
        Judgment minor = sub(p, 1);
        discharge(minor.hypotheses, p.label, shape.psi);
        eigenpredicate({p.var, 2}, minor.hypotheses, {&minor.conclusion});
        eigenpredicate({p.var2, 2}, minor.hypotheses, {&minor.conclusion});
        merge_into(major.hypotheses, minor.hypotheses);
        major.conclusion = minor.conclusion;
        return major;
      }
    }
    fail(K::ConclusionMismatch, "unknown rule");
  }

  ProofPath path_;
};

void collect_labels(const Proof& p, std::set<std::string>& out) {
  if (!p.label.empty()) out.insert(p.label);
  if (!p.label2.empty()) out.insert(p.label2);
  for (const auto& q : p.premises) collect_labels(q, out);
}

Proof elaborate_node(const Proof& p, std::set<std::string>& labels) {
  Proof q = p;
  for (auto& s : q.premises) s = elaborate_node(s, labels);
  if (q.rule == Rule::HenkinI) {
    const HenkinShape shape =
        henkin_shape(*q.signature, q.abstractions[0], q.abstractions[1]);
    Proof body = Proof::and_i(Proof::and_i(q.premises[0], q.premises[1]),
                              q.premises[2]);
    Proof inner = Proof::exists2_i(shape.inner, q.abstractions[1], std::move(body));
    return Proof::exists2_i(shape.closed, q.abstractions[0], std::move(inner));
  }
  if (q.rule == Rule::HenkinE) {
    const auto A = PredAbstraction::of_pred(PredRef::var(q.var, 2));
    const auto B = PredAbstraction::of_pred(PredRef::var(q.var2, 2));
    const HenkinShape shape = henkin_shape(*q.signature, A, B);
    const std::string h2 = fresh_name(q.label + "_", labels);
    labels.insert(h2);
    Proof inner = Proof::exists2_e(Proof::hyp(h2, shape.inner), q.var2, q.label,
                                   q.premises[1], 2);
    return Proof::exists2_e(q.premises[0], q.var, h2, std::move(inner), 2);
  }
  return q;
}

}  // namespace

Judgment check(const Proof& p) { return Checker{}.run(p); }

bool check_against(const Proof& p, const Judgment& expected) {
  const Judgment got = check(p);
  if (!alpha_eq(got.conclusion, expected.conclusion)) return false;
  if (got.hypotheses.size() != expected.hypotheses.size()) return false;
  for (const auto& [label, f] : got.hypotheses) {
    auto it = expected.hypotheses.find(label);
    if (it == expected.hypotheses.end() || !alpha_eq(it->second, f)) return false;
  }
  return true;
}

Proof derive_comprehension(const PredAbstraction& abs) {
  const Formula target = comprehension(abs);
  const std::string& X = target.var();
  const int n = target.binder_arity();
  if (free_pred_vars(abs).contains({X, n}))
    throw FreshnessError("comprehension variable " + X + " occurs in the abstraction");

  Formula instance = subst_pred(target.body(), X, n, abs);
  std::vector<std::string> vars;
  while (instance.op() == Op::ForallInd) {
    vars.push_back(instance.var());
    instance = instance.body();
  }
  // instance is (A -> B) & (B -> A) with B alpha-equal to A.
  const Formula& a = instance.lhs().lhs();
  const Formula& b = instance.lhs().rhs();
  Proof proof = Proof::and_i(Proof::imp_i("h", a, Proof::hyp("h", a)),
                             Proof::imp_i("h", b, Proof::hyp("h", b)));
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    proof = Proof::forall_i(*it, std::move(proof));
  proof = Proof::exists2_i(target, abs, std::move(proof));
  check(proof);
  return proof;
}

Proof henkin_intro(Proof premA, Proof premB, Proof premPhi,
                   const PredAbstraction& A, const PredAbstraction& B,
                   const HenkinSignature& sig) {
  Proof p = Proof::henkin_i(sig, A, B, std::move(premA), std::move(premB),
                            std::move(premPhi));
  check(p);
  return p;
}

Proof henkin_elim(Proof major, Proof minor, const std::string& A,
                  const std::string& B, const std::string& discharge,
                  const HenkinSignature& sig) {
  Proof p = Proof::henkin_e(sig, std::move(major), A, B, discharge, std::move(minor));
  check(p);
  return p;
}

Proof elaborate(const Proof& p) {
  std::set<std::string> labels;
  collect_labels(p, labels);
  return elaborate_node(p, labels);
}

bool uses_henkin_rules(const Proof& p) {
  if (p.rule == Rule::HenkinI || p.rule == Rule::HenkinE) return true;
  for (const auto& q : p.premises)
    if (uses_henkin_rules(q)) return true;
  return false;
}

}  // namespace sol
