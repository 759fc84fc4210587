#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sol/constructions.hpp"
#include "sol/sweep.hpp"
#include "support.hpp"

using namespace sol;
using sol::testing::F;
using sol::testing::RandomGen;

namespace {

const SecondOrderAbstraction kSome("X", F("exists z. X(z)", {}, {{"X", 1}}));
const SecondOrderAbstraction kNone("X", F("forall z. ~X(z)", {}, {{"X", 1}}));

// forall x. phi_down(x) -> forall2 X. C(X) -> phi(X)
Formula weak_universal(const SecondOrderAbstraction& phi) {
  const auto X = PredAbstraction::of_pred(PredRef::var("X", 1));
  return Formula::implies(
      Formula::forall_ind("x", lower(phi, false).apply({Term::var("x")})),
      Formula::forall_pred("X", 1, Formula::implies(is_concept(X, false), phi.apply(X))));
}

// exists2 X. C(X) & phi(X) -> exists x. phi_down(x)
Formula weak_existential(const SecondOrderAbstraction& phi) {
  const auto X = PredAbstraction::of_pred(PredRef::var("X", 1));
  return Formula::implies(
      Formula::exists_pred("X", 1, Formula::conj(is_concept(X, false), phi.apply(X))),
      Formula::exists_ind("x", lower(phi, false).apply({Term::var("x")})));
}

void same(const ValidityResult& a, const ValidityResult& b) {
  CHECK(a.valid == b.valid);
  if (!a.valid && !b.valid) {
    CHECK(a.model == b.model);
    CHECK(a.assignment == b.assignment);
  }
}

}  // namespace

TEST_CASE("symbol tables") {
  const Formula f = F("forall x. Q(x,b) & P(a) & X(y) & Z & R", {"a", "b"}, {{"X", 1}, {"Z", 0}});
  const SymbolTable t = SymbolTable::of(f);
  CHECK(t.preds == std::vector<PredVarKey>{{"P", 1}, {"Q", 2}, {"R", 0}});
  CHECK(t.constants == std::vector<std::string>{"a", "b"});
  CHECK(t.ind_vars == std::vector<std::string>{"y"});
  CHECK(t.pred_vars == std::vector<PredVarKey>{{"X", 1}, {"Z", 0}});
  SymbolTable u = SymbolTable::of(F("P(c) & S(c)", {"c"}));
  u.merge(t);
  CHECK(u.preds == std::vector<PredVarKey>{{"P", 1}, {"S", 1}, {"Q", 2}, {"R", 0}});
  CHECK(u.constants == std::vector<std::string>{"c", "a", "b"});
}

TEST_CASE("structure enumeration") {
  SymbolTable t;
  t.preds = {{"P", 1}, {"R", 0}};
  t.constants = {"a"};
  int n = 0;
  std::vector<Model> seen;
  for_each_model(t, 2, [&](const Model& m, const Assignment&) {
    ++n;
    seen.push_back(m);
  });
  CHECK(n == 4 * 2 * 2);
  CHECK(seen.front().preds.at({"P", 1}).empty());
  CHECK(seen.front().consts.at("a") == 0);
  CHECK(seen[1].consts.at("a") == 1);
  const auto [m, a] = structure_model(t, 2, {0b10, 1, 0});
  CHECK(m.preds.at({"P", 1}) == Relation{{1}});
  CHECK(m.preds.at({"R", 0}) == Relation{{}});
  CHECK(m.consts.at("a") == 0);
  CHECK(seen[(2 * 2 + 1) * 2] == m);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) CHECK_NOTHROW(random_model(t, 3, rng).first.validate());
}

TEST_CASE("compiled evaluator agrees with the reference evaluator") {
  RandomGen gen(7);
  for (int i = 0; i < 1500; ++i) {
    const Formula f = gen.formula(5);
    auto [m, a] = gen.model(1 + i % 3);
    CHECK(eval_budgeted(f, m, a) == eval(f, m, a));
    SymbolTable t = SymbolTable::of(f);
    StepCounter c;
    CompiledFormula raw(f, t, false);
    CompiledFormula mini(f, t, true);
    std::vector<int> inds;
    for (const auto& k : t.constants) inds.push_back(m.consts.at(k));
    for (const auto& x : t.ind_vars) inds.push_back(a.ind.at(x));
    std::vector<std::uint64_t> masks;
    auto mask = [&](const Relation& r, int arity) {
      std::uint64_t bits = 0;
      const auto all = all_tuples(m.size, arity);
      for (std::size_t j = 0; j < all.size(); ++j)
        if (r.count(all[j])) bits |= std::uint64_t{1} << j;
      return bits;
    };
    for (const auto& k : t.preds) masks.push_back(mask(m.preds.at(k), k.second));
    for (const auto& k : t.pred_vars) masks.push_back(mask(a.pred.at(k), k.second));
    const bool want = eval(f, m, a);
    CHECK(raw.eval(m.size, inds.data(), masks.data(), c) == want);
    CHECK(mini.eval(m.size, inds.data(), masks.data(), c) == want);
  }
}

TEST_CASE("miniscoping preserves meaning") {
  RandomGen gen(19);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = gen.formula(5);
    const Formula g = miniscope(f);
    CHECK(free_ind_vars(g) <= free_ind_vars(f));
    auto [m, a] = gen.model(1 + i % 3);
    CHECK(eval(g, m, a) == eval(f, m, a));
  }
  CHECK(miniscope(F("forall x. P(a) & Q(x,x)", {"a"})) ==
        F("P(a) & forall x. Q(x,x)", {"a"}));
  CHECK(miniscope(F("exists x. P(a)", {"a"})) == F("P(a)", {"a"}));
}

TEST_CASE("validity basics") {
  CHECK(check_validity(F("Z | ~Z", {}, {{"Z", 0}}), 3).valid);
  CHECK(check_validity(F("forall2 X:1. forall x. X(x) | ~X(x)"), 3).valid);
  CHECK(check_validity(comprehension(PredAbstraction({"x"}, F("P(x) & ~P(x)"))), 3).valid);

  const ValidityResult r = check_validity(F("exists x. P(x)"), 3);
  REQUIRE_FALSE(r.valid);
  CHECK(r.model.size == 1);
  CHECK(r.model.preds.at({"P", 1}).empty());

  const ValidityResult two = check_validity(F("forall x. forall y. forall2 E:1. E(x) -> E(y)"), 3);
  REQUIRE_FALSE(two.valid);
  CHECK(two.model.size == 2);
}

TEST_CASE("symmetry pruning and parallelism keep the first countermodel") {
  RandomGen gen(5);
  int compared = 0;
  for (int i = 0; i < 80; ++i) {
    const Formula f = gen.formula(3);
    const SymbolTable t = SymbolTable::of(f);
    ValidityResult ref;
    try {
      ref = check_validity_reference(f, t, 2, 2'000'000);
    } catch (const ResourceLimit&) {
      continue;
    }
    ++compared;
    for (bool par : {false, true})
      for (bool sym : {false, true}) same(check_validity(f, t, 2, {kDefaultBudget, par, sym}), ref);
    if (!ref.valid) CHECK_FALSE(eval(f, ref.model, ref.assignment));
  }
  CHECK(compared > 40);
}

TEST_CASE("valid results survive random models") {
  RandomGen gen(23);
  std::vector<Formula> valid;
  for (int i = 0; i < 400 && valid.size() < 25; ++i) {
    Formula f = gen.formula(4);
    if (i % 2) f = Formula::implies(f, Formula::disj(f, gen.formula(2)));
    if (check_validity(f, 3).valid) valid.push_back(f);
  }
  REQUIRE(valid.size() >= 10);
  for (int i = 0; i < 1000; ++i) {
    auto [m, a] = gen.model(1 + i % 3);
    CHECK(eval(valid[i % valid.size()], m, a));
  }
}

TEST_CASE("weak concepts") {
  for (const auto& f : {weak_universal(kSome), weak_existential(kNone)}) {
    const ValidityResult r = check_validity(f, 2);
    REQUIRE_FALSE(r.valid);
    CHECK(r.model.size == 1);
  }
  CHECK(check_validity(weak_universal(kNone), 2).valid);
  CHECK(check_validity(weak_existential(kSome), 2).valid);
}

TEST_CASE("budgets") {
  const Formula f = F("forall2 X:2. forall2 Y:2. forall x. X(x,x) & Y(x,x) | ~(X(x,x) & Y(x,x))");
  CHECK_THROWS_AS(check_validity(f, 3, {100, true, true}), ResourceLimit);
  CHECK_THROWS_AS(check_validity(f, 3, {100, false, true}), ResourceLimit);
  CHECK_THROWS_AS(check_validity_reference(f, SymbolTable::of(f), 3, 1), ResourceLimit);
  Model m;
  m.size = 3;
  CHECK_THROWS_AS(eval_budgeted(f, m, {}, 50), ResourceLimit);
  CHECK(eval_budgeted(f, m, Assignment{}));
  try {
    check_validity(f, 3, {100, false, true});
  } catch (const ResourceLimit& e) {
    CHECK(e.steps() > 100);
  }
  CHECK_THROWS_AS(eval_budgeted(F("P(a)", {"a"}), m, {}), UnboundSymbol);
}

TEST_CASE("branching semantics on bitmasks") {
  const auto sig = HenkinSignature::standard();
  const auto [xy, yx] = linear_readings(sig);
  for (int n = 1; n <= 3; ++n) {
    const std::uint64_t un = std::uint64_t{1} << n;
    const std::uint64_t bin = std::uint64_t{1} << (n * n);
    for (std::uint64_t T = 0; T < un; ++T)
      for (std::uint64_t B = 0; B < un; ++B)
        for (std::uint64_t K = 0; K < bin; ++K) {
          const bool h = branching_holds(n, T, B, K);
          const bool want = T == 0 || B == 0 || K != 0;
          if (h != want) CHECK(h == want);
        }
    Model m;
    m.size = n;
    SymbolTable t;
    t.preds = {{"T", 1}, {"B", 1}, {"K", 2}};
    int agree = 0, total = 0;
    for_each_model(t, n, [&](const Model& mm, const Assignment&) {
      ++total;
      const bool direct = eval_henkin_direct(mm, sig, HenkinMode::Functions);
      const bool l1 = eval(xy, mm), l2 = eval(yx, mm);
      agree += direct <= (l1 && l2);
    });
    CHECK(agree == total);
  }
}

TEST_CASE("separator search") {
  CHECK_THROWS_AS(find_branching_separator(1), NotFound);
  CHECK_THROWS_AS(find_branching_separator(3), NotFound);
  CHECK_THROWS_AS(find_branching_separator(3, {kDefaultBudget, false, true}), NotFound);
  CHECK_THROWS_AS(find_branching_separator(2, {10, true, true}), ResourceLimit);
}
