#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "sol/corpus.hpp"
#include "sol/sweep.hpp"
#include "support.hpp"

using namespace sol;
using sol::testing::F;

namespace {

const std::vector<std::string> kMandatory = {
    "delta",          "univ-lower-to-concepts",       "univ-concepts-to-lower",       "univ-individuals-to-raise",
    "univ-raise-to-individuals",       "exist-lower-to-concepts",       "exist-concepts-to-lower",       "exist-concepts-to-lower-alpha",
    "exist-concepts-to-lower-beta",  "exist-concepts-to-lower-gamma", "exist-individuals-to-raise",       "exist-raise-to-individuals",
    "comprehension",  "eq-refl",        "eq-sym",         "excluded-middle",
    "weak-1",         "weak-2",         "henkin-roundtrip", "def-bot",
    "def-not",        "def-and",        "def-or",         "def-exists"};

const std::vector<CorpusEntry>& manifest() {
  static const auto entries = load_manifest("corpus/manifest.solm");
  return entries;
}

}  // namespace

TEST_CASE("manifest lists every mandatory entry") {
  const auto& es = manifest();
  for (const auto& name : kMandatory) {
    const bool found = std::any_of(es.begin(), es.end(),
                                   [&](const CorpusEntry& e) { return e.name == name; });
    CHECK_MESSAGE(found, name);
  }
  for (const auto& e : es) {
    CHECK_FALSE(e.citation.empty());
    CHECK(std::filesystem::exists(e.script));
  }
  const auto delta = std::find_if(es.begin(), es.end(),
                                  [](const CorpusEntry& e) { return e.name == "delta"; });
  REQUIRE(delta != es.end());
  CHECK(delta->statement.hypotheses.empty());
  CHECK(alpha_eq(delta->statement.conclusion, is_concept(concept_of(Term::var("x")))));
  int instances = 0;
  for (const auto& e : es) instances += static_cast<int>(e.instances.size());
  CHECK(instances >= 10);
}

TEST_CASE("corpus checks, serially and in parallel") {
  const CorpusReport par = run_corpus(manifest());
  const CorpusReport ser = run_corpus(manifest(), false);
  CHECK(par.passed());
  CHECK(ser.passed());
  REQUIRE(par.entries.size() == manifest().size());
  for (std::size_t i = 0; i < par.entries.size(); ++i) {
    const EntryResult& r = par.entries[i];
    CHECK_MESSAGE(r.passed(), r.name << ": " << r.error);
    CHECK(r.name == manifest()[i].name);
    CHECK(r.name == ser.entries[i].name);
    CHECK(r.instances == static_cast<int>(manifest()[i].instances.size()));
  }
  CHECK(par.seconds < 5);
}

TEST_CASE("instances really change the statement") {
  for (const auto& e : manifest())
    for (const auto& inst : e.instances) {
      CHECK_FALSE(inst.overrides.empty());
      CHECK_FALSE(alpha_eq(judgment_formula(inst.statement), judgment_formula(e.statement)));
    }
}

TEST_CASE("failures are reported per entry") {
  const auto es = parse_manifest(
      "(entry wrong (script \"delta.solp\") (citation \"x\") (concl (forall2 X 1 (X x))))\n"
      "(entry missing (script \"nope.solp\") (citation \"x\") (concl bot))\n"
      "(entry ok (script \"excluded-middle.solp\") (citation \"x\")"
      "  (predvar A 0) (concl (or A (not A))))\n",
      "<test>", "corpus");
  const CorpusReport r = run_corpus(es);
  CHECK_FALSE(r.passed());
  REQUIRE(r.entries.size() == 3);
  CHECK_FALSE(r.entries[0].checked);
  CHECK(r.entries[0].error.find("proves") != std::string::npos);
  CHECK_FALSE(r.entries[1].passed());
  CHECK_FALSE(r.entries[1].error.empty());
  CHECK(r.entries[2].passed());
}

TEST_CASE("malformed manifests") {
  CHECK_THROWS_AS(parse_manifest("(entry)", "<t>", "."), SyntaxError);
  CHECK_THROWS_AS(parse_manifest("(entry e (citation \"c\") (concl bot))", "<t>", "."), SyntaxError);
  CHECK_THROWS_AS(parse_manifest("(entry e (script \"s\") (citation \"c\"))", "<t>", "."), SyntaxError);
  CHECK_THROWS_AS(parse_manifest("(frob)", "<t>", "."), SyntaxError);
  CHECK_THROWS_AS(load_manifest("corpus/absent.solm"), Error);
}

TEST_CASE("judgment files") {
  const Judgment j = parse_judgment(
      "(predvar A 0 B 0) (hyp k (-> A B)) (hyp h A) (concl B)", "<t>", ".");
  CHECK(j.hypotheses.size() == 2);
  CHECK(j.conclusion == F("B", {}, {{"B", 0}}));
  CHECK(alpha_eq(judgment_formula(j), F("A -> (A -> B) -> B", {}, {{"A", 0}, {"B", 0}})));
  CHECK(format_judgment(j) == "h: A, k: A -> B ⊢ B");
  CHECK(format_judgment(Judgment{{}, Formula::bot()}) == "⊢ bot");
  CHECK_THROWS_AS(parse_judgment("(hyp h bot)", "<t>", "."), SyntaxError);
  const Judgment f = load_judgment("tests/data/weak-1.judgment");
  CHECK(f.hypotheses.size() == 1);
}

TEST_CASE("corpus theorems are valid on small models") {
  for (const auto& e : manifest()) {
    std::vector<Judgment> js{e.statement};
    for (const auto& i : e.instances) js.push_back(i.statement);
    for (const auto& j : js) {
      const ValidityResult r = check_validity(judgment_formula(j), 2);
      CHECK_MESSAGE(r.valid, e.name);
    }
  }
}
