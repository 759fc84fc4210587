#include "sol/corpus.hpp"

#include <chrono>

namespace sol {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void malformed(const SExpr& e, const std::string& msg) {
  throw MalformedPayload(e.span, msg);
}

const std::string& name_of(const SExpr& e, const char* what) {
  if (!e.is_symbol()) malformed(e, std::string("expected ") + what);
  return e.text;
}

struct RawEntry {
  std::vector<const SExpr*> decls;
  std::vector<std::pair<std::string, const SExpr*>> hyps;
  const SExpr* concl = nullptr;
};

Judgment statement(const RawEntry& raw, const std::string& file,
                   const fs::path& base_dir,
                   const std::map<std::string, SExpr>& overrides) {
  ScriptContext ctx(file, base_dir);
  ctx.set_overrides(overrides);
  for (const SExpr* d : raw.decls)
    if (!ctx.declare(*d)) malformed(*d, "expected a declaration");
  Judgment j;
  for (const auto& [label, f] : raw.hyps) {
    if (j.hypotheses.contains(label)) malformed(*f, "repeated hypothesis " + label);
    j.hypotheses.emplace(label, ctx.formula(*f));
  }
  j.conclusion = ctx.formula(*raw.concl);
  return j;
}

CorpusEntry entry(const SExpr& form, const std::string& file,
                  const fs::path& base_dir) {
  if (form.head() != "entry" || form.items.size() < 2)
    malformed(form, "expected (entry NAME ...)");
  CorpusEntry out;
  out.name = name_of(form.items[1], "an entry name");
  RawEntry raw;
  std::vector<const SExpr*> instances;
  for (std::size_t i = 2; i < form.items.size(); ++i) {
    const SExpr& f = form.items[i];
    const std::string_view h = f.head();
    if (h == "script" || h == "citation") {
      if (f.items.size() != 2 || f.items[1].kind != SExpr::Kind::String)
        malformed(f, "expected (" + std::string(h) + " \"text\")");
      if (h == "script")
        out.script = base_dir / f.items[1].text;
      else
        out.citation = f.items[1].text;
    } else if (h == "hyp") {
      if (f.items.size() != 3) malformed(f, "expected (hyp LABEL FORMULA)");
      raw.hyps.emplace_back(name_of(f.items[1], "a label"), &f.items[2]);
    } else if (h == "concl") {
      if (f.items.size() != 2) malformed(f, "expected (concl FORMULA)");
      if (raw.concl) malformed(f, "repeated conclusion");
      raw.concl = &f.items[1];
    } else if (h == "instance") {
      instances.push_back(&f);
    } else if (f.is_list()) {
      raw.decls.push_back(&f);
    } else {
      malformed(f, "unexpected entry field");
    }
  }
  if (out.script.empty()) malformed(form, "entry " + out.name + " has no script");
  if (!raw.concl) malformed(form, "entry " + out.name + " has no conclusion");
  out.statement = statement(raw, file, base_dir, {});
  for (const SExpr* inst : instances) {
    if (inst->items.size() < 3) malformed(*inst, "expected (instance LABEL (def ...)...)");
    CorpusInstance ci;
    ci.label = name_of(inst->items[1], "an instance label");
    for (std::size_t i = 2; i < inst->items.size(); ++i) {
      const SExpr& d = inst->items[i];
      if (d.head() != "def" || d.items.size() < 2)
        malformed(d, "an instance holds (def ...) forms");
      ci.overrides.insert_or_assign(name_of(d.items[1], "a def name"), d);
    }
    ci.statement = statement(raw, file, base_dir, ci.overrides);
    out.instances.push_back(std::move(ci));
  }
  return out;
}

bool proves(const fs::path& script, const Judgment& j,
            const std::map<std::string, SExpr>& overrides, bool elaborated,
            std::string& error) {
  try {
    ScriptOptions opts;
    opts.overrides = overrides;
    Proof p = parse_proof_file(script, opts);
    if (elaborated) p = elaborate(p);
    if (check_against(p, j)) return true;
    const Judgment got = check(p);
    error = "proves " + format_judgment(got);
  } catch (const Error& ex) {
    error = ex.what();
  }
  return false;
}

}  // namespace

Judgment parse_judgment(std::string_view text, const std::string& file,
                        const fs::path& base_dir) {
  const auto forms = read_sexprs(text, file);
  RawEntry raw;
  for (const SExpr& f : forms) {
    const std::string_view h = f.head();
    if (h == "hyp") {
      if (f.items.size() != 3) malformed(f, "expected (hyp LABEL FORMULA)");
      raw.hyps.emplace_back(name_of(f.items[1], "a label"), &f.items[2]);
    } else if (h == "concl") {
      if (f.items.size() != 2) malformed(f, "expected (concl FORMULA)");
      if (raw.concl) malformed(f, "repeated conclusion");
      raw.concl = &f.items[1];
    } else if (f.is_list()) {
      raw.decls.push_back(&f);
    } else {
      malformed(f, "expected a declaration, (hyp ...) or (concl ...)");
    }
  }
  if (!raw.concl) {
    SourceSpan end{file, 1, 1};
    if (!forms.empty()) end = forms.back().span;
    throw MalformedPayload(end, "judgment has no conclusion");
  }
  return statement(raw, file, base_dir, {});
}

Judgment load_judgment(const fs::path& path) {
  return parse_judgment(read_text_file(path), path.string(), path.parent_path());
}

std::vector<CorpusEntry> parse_manifest(std::string_view text,
                                        const std::string& file,
                                        const fs::path& base_dir) {
  std::vector<CorpusEntry> out;
  for (const SExpr& form : read_sexprs(text, file)) {
    for (const auto& e : out)
      if (form.items.size() > 1 && form.items[1].text == e.name)
        malformed(form, "repeated entry " + e.name);
    out.push_back(entry(form, file, base_dir));
  }
  return out;
}

std::vector<CorpusEntry> load_manifest(const fs::path& path) {
  return parse_manifest(read_text_file(path), path.string(), path.parent_path());
}

bool CorpusReport::passed() const {
  for (const auto& e : entries)
    if (!e.passed()) return false;
  return true;
}

CorpusReport run_corpus(const std::vector<CorpusEntry>& entries, bool parallel) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  CorpusReport report;
  report.entries.resize(entries.size());
  const long n = static_cast<long>(entries.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (long i = 0; i < n; ++i) {
    const auto t0 = clock::now();
    const CorpusEntry& e = entries[i];
    EntryResult& r = report.entries[i];
    r.name = e.name;
    r.citation = e.citation;
    r.instances = static_cast<int>(e.instances.size());
    r.checked = proves(e.script, e.statement, {}, false, r.error);
    if (r.checked) r.elaborated = proves(e.script, e.statement, {}, true, r.error);
    for (const auto& inst : e.instances) {
      std::string err;
      if (proves(e.script, inst.statement, inst.overrides, false, err) &&
          proves(e.script, inst.statement, inst.overrides, true, err)) {
        ++r.instances_passed;
      } else if (r.error.empty()) {
        r.error = "instance " + inst.label + ": " + err;
      }
    }
    r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
  }
  report.seconds = std::chrono::duration<double>(clock::now() - start).count();
  return report;
}

Formula judgment_formula(const Judgment& j) {
  Formula f = j.conclusion;
  for (auto it = j.hypotheses.rbegin(); it != j.hypotheses.rend(); ++it)
    f = Formula::implies(it->second, f);
  return f;
}

std::string format_judgment(const Judgment& j) {
  std::string out;
  for (const auto& [label, f] : j.hypotheses) {
    if (!out.empty()) out += ", ";
    out += label + ": " + pretty(f);
  }
  if (!out.empty()) out += " ";
  return out + "⊢ " + pretty(j.conclusion);
}

}  // namespace sol
