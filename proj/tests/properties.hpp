// Randomized property suites shared by the unit tests and the acceptance
// binary. Each returns the number of failing cases.

#ifndef SOL_TESTS_PROPERTIES_HPP
#define SOL_TESTS_PROPERTIES_HPP

#include <string>
#include <vector>

#include "support.hpp"

namespace sol::testing {

struct PropertyResult {
  int cases = 0;
  int failures = 0;
  std::vector<std::string> examples;

  void record(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    ++failures;
    if (examples.size() < 5) examples.push_back(what);
  }
};

// pretty then parse gives back an alpha-equal formula, and printing is stable.
inline PropertyResult round_trip_property(int n, std::uint64_t seed) {
  PropertyResult r;
  RandomGen gen(seed);
  for (int i = 0; i < n; ++i) {
    const Formula f = gen.formula(1 + i % 6);
    const std::string text = pretty(f);
    bool ok = false;
    try {
      const Formula g = parse_formula(text, signature_of(f));
      ok = alpha_eq(f, g) && pretty(g) == text;
    } catch (const Error&) {
    }
    r.record(ok, text);
  }
  return r;
}

// eval(f[X := abs]) under a equals eval(f) with X bound to abs's extension,
// and likewise for a term substituted for an individual variable.
inline PropertyResult substitution_property(int n, std::uint64_t seed) {
  PropertyResult r;
  RandomGen gen(seed);
  for (int i = 0; i < n; ++i) {
    const Formula f = gen.formula(4);
    const PredAbstraction abs = gen.abstraction(2);
    auto [m, a] = gen.model(1 + i % 3);

    Assignment b = a;
    b.pred[{"X", 1}] = extension(abs, m, a);
    const bool pred_ok = eval(subst_pred(f, "X", 1, abs), m, a) == eval(f, m, b);

    const Term t = gen.term();
    Assignment c = a;
    c.ind["x"] = t.is_var() ? a.ind.at(t.name) : m.consts.at(t.name);
    const bool term_ok = eval(subst_term(f, "x", t), m, a) == eval(f, m, c);

    r.record(pred_ok && term_ok, pretty(f) + " with " + pretty(abs.body()));
  }
  return r;
}

// An alpha-variant is alpha-equal and evaluates the same everywhere.
inline PropertyResult alpha_property(int n, std::uint64_t seed) {
  PropertyResult r;
  RandomGen gen(seed);
  for (int i = 0; i < n; ++i) {
    const Formula f = gen.formula(5);
    std::set<std::string> used = all_names(f);
    const Formula g = rename_bound(f, used, gen.rng);
    auto [m, a] = gen.model(1 + i % 3);
    r.record(alpha_eq(f, g) && eval(f, m, a) == eval(g, m, a), pretty(f) + " vs " + pretty(g));
  }
  return r;
}

}  // namespace sol::testing

#endif  // SOL_TESTS_PROPERTIES_HPP
