// sol: command-line front end for the checker, the evaluator and the corpus.
//
// Exit codes: 0 success, 1 negative result (rejected proof, false formula,
// countermodel found, failing corpus), 2 usage or parse error, 3 resource
// limit.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sol/corpus.hpp"
#include "sol/kernel.hpp"
#include "sol/model.hpp"
#include "sol/parser.hpp"
#include "sol/sweep.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kResource = 3 };

bool g_json = false;

void emit(const json& record) { std::cout << record.dump() << '\n'; }

int fail(const std::string& command, int code, const std::string& message) {
  if (g_json) {
    emit({{"command", command}, {"status", "error"}, {"exit", code},
          {"message", message}});
  } else {
    std::cerr << message << '\n';
  }
  return code;
}

sol::SolFile read_sol(const fs::path& path) {
  return sol::parse_sol(sol::read_text_file(path), path.string());
}

int cmd_check(const std::string& file, const std::string& expect) {
  sol::Proof proof;
  std::optional<sol::Judgment> expected;
  try {
    proof = sol::parse_proof_file(file);
    if (!expect.empty()) expected = sol::load_judgment(expect);
  } catch (const sol::Error& ex) {
    return fail("check", kUsage, ex.what());
  }
  json rec{{"command", "check"}, {"file", file}};
  try {
    const sol::Judgment got = sol::check(proof);
    rec["judgment"] = sol::format_judgment(got);
    if (expected && !sol::check_against(proof, *expected)) {
      const std::string msg = "proves " + sol::format_judgment(got) +
                              "\nexpected " + sol::format_judgment(*expected);
      if (g_json) {
        rec["status"] = "mismatch";
        rec["expected"] = sol::format_judgment(*expected);
        rec["exit"] = kNegative;
        emit(rec);
      } else {
        std::cout << msg << '\n';
      }
      return kNegative;
    }
    if (g_json) {
      rec["status"] = "ok";
      rec["exit"] = kOk;
      emit(rec);
    } else {
      std::cout << sol::format_judgment(got) << '\n';
    }
    return kOk;
  } catch (const sol::CheckError& ex) {
    if (g_json) {
      rec["status"] = "rejected";
      rec["exit"] = kNegative;
      rec["error"] = {{"kind", sol::kind_name(ex.kind())},
                      {"path", sol::format_path(ex.location())},
                      {"detail", ex.detail()}};
      emit(rec);
    } else {
      std::cout << file << ": " << ex.what() << '\n';
    }
    return kNegative;
  }
}

int cmd_eval(const std::string& formula_file, const std::string& model_file,
             std::uint64_t budget) {
  try {
    const sol::SolFile f = read_sol(formula_file);
    const sol::ModelFile m =
        sol::parse_model(sol::read_text_file(model_file), model_file);
    const bool v = sol::eval_budgeted(f.formula, m.model, m.assignment, budget);
    if (g_json)
      emit({{"command", "eval"}, {"value", v}, {"exit", v ? kOk : kNegative}});
    else
      std::cout << (v ? "true" : "false") << '\n';
    return v ? kOk : kNegative;
  } catch (const sol::ResourceLimit& ex) {
    return fail("eval", kResource, ex.what());
  } catch (const sol::Error& ex) {
    return fail("eval", kUsage, ex.what());
  }
}

int cmd_expand(const std::vector<std::string>& names, const std::string& variant,
               bool linear) {
  try {
    if (names.size() != 3) throw sol::Error("expected three predicate names T B K");
    for (const auto& n : names)
      if (n.empty() || !std::isupper(static_cast<unsigned char>(n[0])))
        throw sol::Error("predicate names start uppercase: " + n);
    const auto sig = sol::HenkinSignature::make(names[0], names[1], names[2]);
    std::vector<std::string> out;
    if (linear) {
      const auto [l1, l2] = sol::linear_readings(sig);
      out = {sol::pretty(l1), sol::pretty(l2)};
    } else {
      const auto v = variant == "sorted" ? sol::HenkinVariant::Sorted
                                         : sol::HenkinVariant::Plain;
      out = {sol::pretty(sol::expand_henkin(sig, v))};
    }
    if (g_json) {
      emit({{"command", "expand"},
            {"variant", linear ? "linear" : variant},
            {"formulas", out},
            {"exit", kOk}});
    } else {
      for (const auto& s : out) std::cout << s << '\n';
    }
    return kOk;
  } catch (const sol::Error& ex) {
    return fail("expand", kUsage, ex.what());
  }
}

int cmd_countermodel(const std::string& file, int max_size,
                     const sol::SweepOptions& opts) {
  try {
    const sol::SolFile f = read_sol(file);
    const auto r = sol::check_validity(f.formula, max_size, opts);
    if (g_json) {
      json rec{{"command", "countermodel"}, {"file", file},
               {"max_size", max_size},     {"valid", r.valid},
               {"steps", r.steps},         {"exit", r.valid ? kOk : kNegative}};
      if (!r.valid) rec["model"] = sol::format_model(r.model, r.assignment);
      emit(rec);
    } else if (r.valid) {
      std::cout << "valid up to size " << max_size << '\n';
    } else {
      std::cout << sol::format_model(r.model, r.assignment);
    }
    return r.valid ? kOk : kNegative;
  } catch (const sol::ResourceLimit& ex) {
    return fail("countermodel", kResource, ex.what());
  } catch (const sol::Error& ex) {
    return fail("countermodel", kUsage, ex.what());
  }
}

int cmd_separator(int max_size, const sol::SweepOptions& opts) {
  try {
    const sol::Model m = sol::find_branching_separator(max_size, opts);
    if (g_json)
      emit({{"command", "separator"}, {"found", true},
            {"model", sol::format_model(m)}, {"exit", kOk}});
    else
      std::cout << sol::format_model(m);
    return kOk;
  } catch (const sol::NotFound& ex) {
    if (g_json)
      emit({{"command", "separator"}, {"found", false}, {"exit", kNegative}});
    else
      std::cout << ex.what() << '\n';
    return kNegative;
  } catch (const sol::ResourceLimit& ex) {
    return fail("separator", kResource, ex.what());
  }
}

int cmd_corpus(const std::string& manifest) {
  std::vector<sol::CorpusEntry> entries;
  try {
    entries = sol::load_manifest(manifest);
  } catch (const sol::Error& ex) {
    return fail("corpus", kUsage, ex.what());
  }
  const sol::CorpusReport report = sol::run_corpus(entries);
  std::size_t width = 5;
  for (const auto& e : report.entries) width = std::max(width, e.name.size());
  for (const auto& e : report.entries) {
    if (g_json) {
      emit({{"command", "corpus"}, {"entry", e.name}, {"passed", e.passed()},
            {"checked", e.checked}, {"elaborated", e.elaborated},
            {"instances", e.instances}, {"instances_passed", e.instances_passed},
            {"error", e.error}});
      continue;
    }
    std::printf("%-*s  %s  check %s  elaborated %s  instances %d/%d\n",
                static_cast<int>(width), e.name.c_str(),
                e.passed() ? "PASS" : "FAIL", e.checked ? "ok" : "--",
                e.elaborated ? "ok" : "--", e.instances_passed, e.instances);
    if (!e.error.empty()) std::printf("    %s\n", e.error.c_str());
  }
  std::size_t passed = 0;
  for (const auto& e : report.entries) passed += e.passed();
  if (g_json)
    emit({{"command", "corpus"}, {"summary", true}, {"passed", passed},
          {"total", report.entries.size()},
          {"exit", report.passed() ? kOk : kNegative}});
  else
    std::printf("%zu/%zu entries pass\n", passed, report.entries.size());
  return report.passed() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second-order natural deduction checker and finite model tools"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "One JSON record per result on stdout");

  std::string file, expect, model_file, variant = "plain";
  std::vector<std::string> names;
  bool linear = false, serial = false, no_symmetry = false;
  int max_size = 3;
  std::uint64_t budget = sol::kDefaultBudget;

  auto* check = app.add_subcommand("check", "Check a proof script");
  check->add_option("proof", file, "Proof script (.solp)")->required();
  check->add_option("--expect", expect, "Judgment file the proof must establish");

  auto* eval = app.add_subcommand("eval", "Evaluate a formula on a model");
  eval->add_option("formula", file, "Formula file (.sol)")->required();
  eval->add_option("model", model_file, "Model file")->required();
  eval->add_option("--budget", budget, "Step budget");

  auto* expand = app.add_subcommand("expand", "Print the second-order encodings");
  expand->add_option("names", names, "Predicate names T B K")->expected(3);
  expand->add_option("--variant", variant, "plain or sorted")
      ->check(CLI::IsMember({"plain", "sorted"}));
  expand->add_flag("--linear", linear, "Print the two linear readings instead");

  auto add_sweep = [&](CLI::App* sub) {
    sub->add_option("--max-size", max_size, "Largest domain size")
        ->check(CLI::Range(1, 16));
    sub->add_option("--budget", budget, "Step budget");
    sub->add_flag("--serial", serial, "Disable parallel enumeration");
    sub->add_flag("--no-symmetry", no_symmetry, "Visit isomorphic models too");
  };
  auto* cm = app.add_subcommand("countermodel", "Search for a countermodel");
  cm->add_option("formula", file, "Formula file (.sol)")->required();
  add_sweep(cm);

  auto* sep = app.add_subcommand(
      "separator", "Search a model where both linear readings hold but the branching one fails");
  add_sweep(sep);

  auto* corpus = app.add_subcommand("corpus", "Check every entry of a corpus manifest");
  corpus->add_option("manifest", file, "Manifest file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  sol::SweepOptions opts;
  opts.budget = budget;
  opts.parallel = !serial;
  opts.symmetry = !no_symmetry;

  if (*check) return cmd_check(file, expect);
  if (*eval) return cmd_eval(file, model_file, budget);
  if (*expand) return cmd_expand(names, variant, linear);
  if (*cm) return cmd_countermodel(file, max_size, opts);
  if (*sep) {
    if (sep->count("--max-size") == 0) max_size = 4;
    return cmd_separator(max_size, opts);
  }
  if (*corpus) return cmd_corpus(file);
  return kUsage;
}
