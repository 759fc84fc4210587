#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "sol/corpus.hpp"
#include "sol/kernel.hpp"
#include "sol/parser.hpp"
#include "support.hpp"

using namespace sol;
using sol::testing::F;
using K = CheckError::Kind;

namespace {

const char* kHeader = "(const a b) (predvar A 0 B 0 C 0) ";

Proof P(const std::string& text) { return parse_proof(kHeader + text); }

Formula G(std::string_view text) {
  return F(text, {"a", "b"}, {{"A", 0}, {"B", 0}, {"C", 0}});
}

Formula concl(const std::string& text) { return check(P(text)).conclusion; }

std::optional<K> kind(const Proof& p) {
  try {
    check(p);
  } catch (const CheckError& e) {
    return e.kind();
  }
  return std::nullopt;
}
std::optional<K> kind(const std::string& text) { return kind(P(text)); }

int count(const Proof& p, Rule r) {
  int n = p.rule == r;
  for (const auto& q : p.premises) n += count(q, r);
  return n;
}

}  // namespace

TEST_CASE("rule names") {
  for (int i = 0; i <= static_cast<int>(Rule::HenkinE); ++i) {
    const auto r = static_cast<Rule>(i);
    CHECK(rule_from_name(rule_name(r)) == r);
  }
  CHECK_FALSE(rule_from_name("cut").has_value());
  CHECK(kind_name(K::EigenpredicateViolation) == "EigenpredicateViolation");
  CHECK(format_path({}) == "root");
  CHECK(format_path({0, 1}) == "root.0.1");
}

TEST_CASE("hyp") {
  const Judgment j = check(P("(hyp h A)"));
  CHECK(j.conclusion == G("A"));
  CHECK(j.hypotheses.at("h") == G("A"));
  CHECK(kind("(hyp h)") == K::UnknownHypothesis);
}

TEST_CASE("andI") {
  CHECK(concl("(andI (hyp h A) (hyp k B))") == G("A & B"));
  CHECK(concl("(andI (hyp h A) (hyp h A))") == G("A & A"));
  CHECK(kind("(andI (hyp h A) (hyp h B))") == K::DischargeMismatch);
}

TEST_CASE("andEL and andER") {
  CHECK(concl("(andEL (hyp h (and A B)))") == G("A"));
  CHECK(concl("(andER (hyp h (and A B)))") == G("B"));
  CHECK(kind("(andEL (hyp h (or A B)))") == K::ConclusionMismatch);
  CHECK(kind("(andER (hyp h A))") == K::ConclusionMismatch);
}

TEST_CASE("orIL and orIR") {
  CHECK(concl("(orIL B (hyp h A))") == G("A | B"));
  CHECK(concl("(orIR B (hyp h A))") == G("B | A"));
  Proof p = Proof::or_il(G("B"), Proof::hyp("h", G("A")));
  p.formula.reset();
  CHECK(kind(p) == K::ConclusionMismatch);
}

TEST_CASE("orE") {
  const Judgment j = check(P("(orE (hyp h (or A B)) l (orIR B (hyp l A)) r (orIL A (hyp r B)))"));
  CHECK(j.conclusion == G("B | A"));
  CHECK(j.hypotheses.size() == 1);
  CHECK(kind("(orE (hyp h (or A B)) l (hyp l A) r (hyp r B))") == K::ConclusionMismatch);
  CHECK(kind("(orE (hyp h (or A B)) l (hyp l B) r (hyp r B))") == K::DischargeMismatch);
  CHECK(kind("(orE (hyp h (and A B)) l (hyp l A) r (hyp r A))") == K::ConclusionMismatch);
}

TEST_CASE("impI") {
  const Judgment j = check(P("(impI h A (hyp h A))"));
  CHECK(j.conclusion == G("A -> A"));
  CHECK(j.hypotheses.empty());
  CHECK(concl("(impI h B (hyp k A))") == G("B -> A"));
  CHECK(concl("(impI h (hyp h (and A B)))") == G("A & B -> A & B"));
  CHECK(kind("(impI h (hyp k A))") == K::DischargeMismatch);
  CHECK(kind("(impI h B (hyp h A))") == K::DischargeMismatch);
}

TEST_CASE("impE") {
  CHECK(concl("(impE (hyp h (-> A B)) (hyp k A))") == G("B"));
  CHECK(kind("(impE (hyp h (-> A B)) (hyp k B))") == K::ConclusionMismatch);
  CHECK(kind("(impE (hyp h (and A B)) (hyp k A))") == K::ConclusionMismatch);
}

TEST_CASE("notI") {
  CHECK(concl("(notI h A (notE (hyp h A) (hyp k (not A))))") == G("~A"));
  CHECK(kind("(notI h A (hyp k B))") == K::ConclusionMismatch);
}

TEST_CASE("notE") {
  CHECK(concl("(notE (hyp h A) (hyp k (not A)))") == Formula::bot());
  CHECK(kind("(notE (hyp h A) (hyp k (not B)))") == K::ConclusionMismatch);
  CHECK(kind("(notE (hyp k (not A)) (hyp h A))") == K::ConclusionMismatch);
}

TEST_CASE("botE") {
  CHECK(concl("(botE (and A B) (hyp h bot))") == G("A & B"));
  CHECK(kind("(botE B (hyp h A))") == K::ConclusionMismatch);
}

TEST_CASE("raa") {
  const Judgment j = check(P("(raa n (not A) (notE (hyp h (not (not A))) (hyp h2 (not (not (not A))))))"));
  CHECK(j.conclusion == G("A"));
  CHECK(concl("(raa n (not (not A)) (notE (hyp n (not (not A))) (hyp k (not (not (not A))))))") ==
        G("~A"));
  CHECK(kind("(raa n A (hyp h bot))") == K::DischargeMismatch);
  CHECK(kind("(raa n (not A) (hyp h A))") == K::ConclusionMismatch);
}

TEST_CASE("forallI") {
  CHECK(alpha_eq(concl("(forallI x (impI h (P x) (hyp h (P x))))"), G("forall x. P(x) -> P(x)")));
  CHECK(kind("(forallI x (hyp h (P x)))") == K::EigenvariableViolation);
  // A bound occurrence in an open hypothesis is fine.
  CHECK(alpha_eq(concl("(forallI x (forallE (hyp h (forall y (P y))) x))"),
                 G("forall x. P(x)")));
}

TEST_CASE("forallE") {
  CHECK(concl("(forallE (hyp h (forall x (Q x b))) a)") == G("Q(a,b)"));
  const Formula got = concl("(forallE (hyp h (forall x (exists y (Q x y)))) y)");
  CHECK(alpha_eq(got, G("exists z. Q(y,z)")));
  CHECK(kind("(forallE (hyp h (exists x (P x))) a)") == K::ConclusionMismatch);
}

TEST_CASE("existsI") {
  CHECK(concl("(existsI (exists x (Q x x)) a (hyp h (Q a a)))") == G("exists x. Q(x,x)"));
  CHECK(kind("(existsI (exists x (Q x x)) a (hyp h (Q a b)))") == K::ConclusionMismatch);
  CHECK(kind("(existsI (forall x (Q x x)) a (hyp h (Q a a)))") == K::ConclusionMismatch);
}

TEST_CASE("existsE") {
  const Judgment j = check(P(
      "(existsE (hyp h (exists x (and (P x) (R x)))) y k (existsI (exists z (P z)) y (andEL (hyp k))))"));
  CHECK(alpha_eq(j.conclusion, G("exists z. P(z)")));
  CHECK(j.hypotheses.size() == 1);
  CHECK(kind("(existsE (hyp h (exists x (P x))) y k (hyp k (P y)))") == K::EigenvariableViolation);
  CHECK(kind("(existsE (hyp h (exists x (P x))) y k (andEL (andI (hyp k (P y)) (hyp m (R y)))))") ==
        K::EigenvariableViolation);
  CHECK(kind("(existsE (hyp h (exists x (P x))) y k (andEL (andI (hyp m A) (hyp k (R y)))))") ==
        K::DischargeMismatch);
}

TEST_CASE("forall2I") {
  CHECK(alpha_eq(concl("(forall2I X 1 (impI h (X a) (hyp h (X a))))"),
                 G("forall2 X:1. X(a) -> X(a)")));
  CHECK(kind("(forall2I X 1 (hyp h (X a)))") == K::EigenpredicateViolation);
}

TEST_CASE("forall2E") {
  const Formula got = concl(
      "(forall2E (hyp h (forall2 X 2 (and (X z a) (X a b)))) (lam (x y) (and (P x y) (Q y a))))");
  CHECK(alpha_eq(got, G("(P(z,a) & Q(a,a)) & (P(a,b) & Q(b,a))")));
  CHECK(kind("(forall2E (hyp h (forall2 X 2 (X a a))) (lam (x) (P x)))") == K::ArityMismatch);
  CHECK(kind("(forall2E (hyp h (exists2 X 1 (X a))) (lam (x) (P x)))") == K::ConclusionMismatch);
}

TEST_CASE("exists2I") {
  const Formula got = concl(
      "(exists2I (exists2 X 2 (and (X z a) (X a b))) (lam (x y) (and (P x y) (Q y a)))"
      "  (hyp h (and (and (P z a) (Q a a)) (and (P a b) (Q b a)))))");
  CHECK(alpha_eq(got, G("exists2 X:2. X(z,a) & X(a,b)")));
  CHECK(kind("(exists2I (exists2 X 2 (and (X z a) (X a b))) (lam (x y) (and (P x y) (Q y a)))"
             "  (hyp h (and (and (P z a) (Q a a)) (and (P a b) (Q a b)))))") ==
        K::ConclusionMismatch);
  Proof bad = Proof::exists2_i(G("exists2 X:2. X(a,a)"), PredAbstraction({"x"}, G("P(x)")),
                               Proof::hyp("h", G("P(a)")));
  CHECK(kind(bad) == K::ArityMismatch);
}

TEST_CASE("exists2E") {
  const Judgment j = check(P(
      "(exists2E (hyp h (exists2 X 1 (and (X a) (P a)))) (Y 1) k (andER (hyp k)))"));
  CHECK(j.conclusion == G("P(a)"));
  CHECK(j.hypotheses.size() == 1);
  CHECK(kind("(exists2E (hyp h (exists2 X 1 (X a))) (Y 1) k (hyp k))") ==
        K::EigenpredicateViolation);
  CHECK(kind("(exists2E (hyp h (exists2 X 1 (X a))) (Y 1) k (andER (andI (hyp k) (hyp m (Y b)))))") ==
        K::EigenpredicateViolation);
  CHECK(kind("(exists2E (hyp h (exists2 X 1 (X a))) (Y 2) k (hyp m A))") == K::ArityMismatch);
  CHECK(kind("(exists2E (hyp h (forall2 X 1 (X a))) (Y 1) k (hyp m A))") == K::ConclusionMismatch);
}

namespace {

const char* kTotal =
    "(pred T 1 B 1 K 2)"
    "(let k (forall u (forall v (K u v))))"
    "(def top (u v) (-> (K u v) (K u v)))";

std::string intro(const char* closure_witness) {
  return std::string(kTotal) +
         "(henkinI (T B K) top top"
         "  (forallI x (existsI (exists x1 (-> (T x) (top x x1))) x"
         "    (impI t (T x) (impI h (K x x) (hyp h)))))"
         "  (forallI y (existsI (exists y1 (-> (B y) (top y y1))) y"
         "    (impI t (B y) (impI h (K y y) (hyp h)))))"
         "  (forallI x (forallI x1 (forallI y (forallI y1"
         "    (impI c (and (T x) (B y) (top x x1) (top y y1)) " +
         closure_witness + "))))))";
}

}  // namespace

TEST_CASE("henkinI") {
  const Proof p = parse_proof(intro("(forallE (forallE (hyp k) x1) y1)"));
  const Judgment j = check(p);
  CHECK(alpha_eq(j.conclusion, expand_henkin(HenkinSignature::standard())));
  CHECK(j.hypotheses.size() == 1);
  CHECK(check(henkin_intro(p.premises[0], p.premises[1], p.premises[2], p.abstractions[0],
                           p.abstractions[1]))
            .conclusion == j.conclusion);
  // Closure premise for the wrong pair of individuals.
  CHECK(kind(parse_proof(intro("(forallE (forallE (hyp k) y1) x1)"))) == K::ConclusionMismatch);
  CHECK_THROWS_AS(henkin_intro(p.premises[1], p.premises[0], p.premises[2],
                               p.abstractions[0], p.abstractions[1]),
                  CheckError);
}

namespace {

const char* kRound =
    "(pred T 1 B 1 K 2)"
    "(let h (hpred T B K))";

}  // namespace

TEST_CASE("henkinE") {
  const Proof p = parse_proof(std::string(kRound) +
                              "(henkinE (T B K) (hyp h) F G k"
                              "  (exists2I (hpred T B K) F"
                              "    (exists2I (exists2 G 2 (Psi F G T B K)) G (hyp k))))");
  const Judgment j = check(p);
  CHECK(alpha_eq(j.conclusion, expand_henkin(HenkinSignature::standard())));
  CHECK(j.hypotheses.size() == 1);

  // The conclusion mentions the eigenpredicate F.
  CHECK(kind(parse_proof(std::string(kRound) +
                         "(henkinE (T B K) (hyp h) F G k (andEL (andEL (hyp k))))")) ==
        K::EigenpredicateViolation);
  // Both selectors named alike.
  CHECK(kind(parse_proof(std::string(kRound) +
                         "(henkinE (T B K) (hyp h) F F k (hyp m (T a)))")) ==
        K::SideConditionViolation);
  // Another open hypothesis mentions G.
  CHECK(kind(parse_proof(std::string(kRound) +
                         "(henkinE (T B K) (hyp h) F G k (andEL (andI (hyp m (T a)) (hyp n (G a a)))))")) ==
        K::EigenpredicateViolation);
  // Major premise is not the branching formula.
  CHECK(kind(parse_proof("(pred T 1 B 1 K 2)"
                         "(henkinE (T B K) (hyp h (hpred-sorted T B K)) F G k (hyp m (T a)))")) ==
        K::ConclusionMismatch);
  // Discharged formula does not match Psi(F,G).
  CHECK(kind(parse_proof(std::string(kRound) +
                         "(henkinE (T B K) (hyp h) F G k (andEL (andI (hyp m (T a)) (hyp k (T a)))))")) ==
        K::DischargeMismatch);

  const Proof minor = p.premises[1];
  CHECK(check(henkin_elim(p.premises[0], minor, "F", "G", "k")).conclusion == j.conclusion);
  CHECK_THROWS_AS(henkin_elim(p.premises[0], minor, "G", "F", "k"), CheckError);
}

TEST_CASE("error locations") {
  try {
    check(P("(impE (hyp h (-> A B)) (andEL (hyp k (or A B))))"));
    FAIL("accepted");
  } catch (const CheckError& e) {
    CHECK(e.location() == ProofPath{1});
    CHECK(std::string(e.what()).starts_with("ConclusionMismatch at root.1: "));
  }
}

TEST_CASE("check_against") {
  const Proof id = P("(impI h A (hyp h A))");
  CHECK(check_against(id, Judgment{{}, G("A -> A")}));
  CHECK(check_against(id, Judgment{{}, G("A -> A")}));
  CHECK_FALSE(check_against(id, Judgment{{}, G("A -> B")}));
  CHECK_FALSE(check_against(id, Judgment{{{"z", G("A")}}, G("A -> A")}));
  const Proof open = P("(hyp h A)");
  CHECK(check_against(open, Judgment{{{"h", G("A")}}, G("A")}));
  CHECK_FALSE(check_against(open, Judgment{{{"k", G("A")}}, G("A")}));
  CHECK_FALSE(check_against(open, Judgment{{{"h", G("B")}}, G("A")}));
  const Proof delta = parse_proof_file("corpus/delta.solp");
  CHECK(check_against(delta, Judgment{{}, is_concept(concept_of(Term::var("x")))}));
  CHECK_THROWS_AS(check_against(P("(hyp h)"), Judgment{{}, G("A")}), CheckError);
}

TEST_CASE("weakening") {
  const Proof p = P("(andEL (hyp h (and A B)))");
  const Judgment j = check(p);
  const Proof weak = Proof::and_el(Proof::and_i(p, Proof::hyp("extra", G("C"))));
  const Judgment w = check(weak);
  CHECK(w.conclusion == j.conclusion);
  CHECK(w.hypotheses.size() == j.hypotheses.size() + 1);
}

TEST_CASE("derive_comprehension") {
  auto ok = [](const PredAbstraction& abs) {
    const Proof p = derive_comprehension(abs);
    const Judgment j = check(p);
    CHECK(j.hypotheses.empty());
    CHECK(alpha_eq(j.conclusion, comprehension(abs)));
  };
  ok(PredAbstraction({"x"}, G("P(x)")));
  ok(PredAbstraction({"x", "y"}, G("P(x,y) & Q(y,a)")));
  ok(PredAbstraction({}, G("Q")));
  ok(PredAbstraction({"x"}, F("X(x) & forall2 X:1. X(x)", {}, {{"X", 1}})));
  CHECK(alpha_eq(comprehension(PredAbstraction({"x"}, G("P(x)"))),
                 G("exists2 X:1. forall x. (P(x) -> X(x)) & (X(x) -> P(x))")));
  CHECK(alpha_eq(comprehension(PredAbstraction({}, G("Q"))),
                 G("exists2 X:0. (Q -> X) & (X -> Q)")));
}

TEST_CASE("elaborate") {
  const Proof in = parse_proof(intro("(forallE (forallE (hyp k) x1) y1)"));
  const Proof ein = elaborate(in);
  CHECK_FALSE(uses_henkin_rules(ein));
  CHECK(ein.rule == Rule::Exists2I);
  CHECK(ein.premises[0].rule == Rule::Exists2I);
  CHECK(ein.premises[0].premises[0].rule == Rule::AndI);
  CHECK(count(ein, Rule::Exists2I) == 2 + count(in, Rule::Exists2I));
  CHECK(alpha_eq(check(ein).conclusion, check(in).conclusion));

  const Proof out = parse_proof_file("corpus/henkin-roundtrip.solp");
  CHECK(uses_henkin_rules(out));
  const Proof eout = elaborate(out);
  CHECK_FALSE(uses_henkin_rules(eout));
  const Proof& outer = eout.premises[0];
  REQUIRE(outer.rule == Rule::Exists2E);
  CHECK(outer.var == "F");
  REQUIRE(outer.premises[1].rule == Rule::Exists2E);
  CHECK(outer.premises[1].var == "G");
  CHECK(outer.premises[1].label == "k");
  CHECK(outer.premises[1].premises[0].label == outer.label);
  CHECK(check_against(eout, check(out)));

  const Proof plain = P("(impI h A (hyp h A))");
  CHECK(elaborate(plain) == plain);
}

TEST_CASE("henkinI with no teams and no boards") {
  const Proof p = parse_proof(
      "(pred T 1 B 1 K 2)"
      "(let nt (forall x (not (T x))))"
      "(let nb (forall y (not (B y))))"
      "(def none (u v) bot)"
      "(henkinI (T B K) none none"
      "  (forallI x (existsI (exists x1 (-> (T x) (none x x1))) x"
      "    (impI t (T x) (notE (hyp t) (forallE (hyp nt) x)))))"
      "  (forallI y (existsI (exists y1 (-> (B y) (none y y1))) y"
      "    (impI t (B y) (notE (hyp t) (forallE (hyp nb) y)))))"
      "  (forallI x (forallI x1 (forallI y (forallI y1"
      "    (impI c (and (T x) (B y) (none x x1) (none y y1))"
      "      (botE (K x1 y1) (andER (andEL (hyp c))))))))))");
  const Judgment j = check(p);
  CHECK(alpha_eq(j.conclusion, expand_henkin(HenkinSignature::standard())));
  CHECK(j.hypotheses.size() == 2);
  CHECK(check_against(elaborate(p), j));
}

TEST_CASE("a corollary of the branching quantifier") {
  // With a board c, every team member's selection knows someone.
  const Proof p = parse_proof(
      "(pred T 1 B 1 K 2) (const c)"
      "(let h (hpred T B K))"
      "(let b (B c))"
      "(henkinE (T B K) (hyp h) F G k"
      "  (forallI x (impI t (T x)"
      "    (existsE (forallE (andEL (andEL (hyp k))) x) x1 f"
      "      (existsE (forallE (andER (andEL (hyp k))) c) y1 g"
      "        (existsI (exists u (exists v (K u v))) x1"
      "          (existsI (exists v (K x1 v)) y1"
      "            (impE (forallE (forallE (forallE (forallE (andER (hyp k)) x) x1) c) y1)"
      "                  (andI (andI (andI (hyp t) (hyp b)) (impE (hyp f) (hyp t)))"
      "                        (impE (hyp g) (hyp b)))))))))))");
  const Judgment j = check(p);
  CHECK(alpha_eq(j.conclusion,
                 F("forall x. T(x) -> exists u. exists v. K(u,v)", {"c"})));
  CHECK(j.hypotheses.size() == 2);
  const Proof e = elaborate(p);
  CHECK_FALSE(uses_henkin_rules(e));
  CHECK(check_against(e, j));
}
