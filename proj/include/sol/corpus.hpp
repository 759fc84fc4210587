// Regression corpus: a manifest of judgments, each with the proof script
// that establishes it.
//
// Manifest format (one s-expression per entry):
//   (entry NAME
//     (script "file.solp")
//     (citation "free text")
//     DECLARATIONS...            ; const, predvar, pred, def, include
//     (hyp LABEL FORMULA)...
//     (concl FORMULA)
//     (instance LABEL (def ...)...)...)
// An instance re-reads both the statement and the script with the given
// defs in place of the script's own.

#ifndef SOL_CORPUS_HPP
#define SOL_CORPUS_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sol/kernel.hpp"
#include "sol/parser.hpp"

namespace sol {

struct CorpusInstance {
  std::string label;
  Judgment statement;
  std::map<std::string, SExpr> overrides;
};

struct CorpusEntry {
  std::string name;
  Judgment statement;
  std::filesystem::path script;
  std::string citation;
  std::vector<CorpusInstance> instances;
};

// Throws SyntaxError on a malformed manifest.
std::vector<CorpusEntry> load_manifest(const std::filesystem::path& path);
std::vector<CorpusEntry> parse_manifest(std::string_view text,
                                        const std::string& file,
                                        const std::filesystem::path& base_dir);

// A judgment file: declarations, then (hyp LABEL FORMULA)... and
// (concl FORMULA).
Judgment parse_judgment(std::string_view text, const std::string& file,
                        const std::filesystem::path& base_dir);
Judgment load_judgment(const std::filesystem::path& path);

struct EntryResult {
  std::string name;
  std::string citation;
  bool checked = false;
  bool elaborated = false;
  int instances = 0;
  int instances_passed = 0;
  std::string error;
  double seconds = 0;

  bool passed() const {
    return checked && elaborated && instances_passed == instances;
  }
};

struct CorpusReport {
  std::vector<EntryResult> entries;
  double seconds = 0;

  bool passed() const;
};

// Checks every entry, its elaboration and its instances. Entries run in
// parallel when `parallel` is set; the report keeps manifest order.
CorpusReport run_corpus(const std::vector<CorpusEntry>& entries,
                        bool parallel = true);

// h1 -> h2 -> ... -> conclusion, hypotheses in label order.
Formula judgment_formula(const Judgment& j);

std::string format_judgment(const Judgment& j);

}  // namespace sol

#endif  // SOL_CORPUS_HPP
