// Concrete syntax: the infix formula language of .sol files, the
// s-expression language of .solp proof scripts, and canonical printers for
// both.

#ifndef SOL_PARSER_HPP
#define SOL_PARSER_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sol/kernel.hpp"
#include "sol/syntax.hpp"

namespace sol {

struct SourceSpan {
  std::string file = "<input>";
  int line = 1;
  int column = 1;

  std::string str() const;
};

class SyntaxError : public Error {
 public:
  SyntaxError(SourceSpan span, const std::string& message);
  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }

 private:
  SourceSpan span_;
  std::string message_;
};

// An atom's argument count contradicts the arity its predicate was declared
// or first used with.
class ArityError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class UnknownRule : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class MalformedPayload : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

// Names whose syntactic class the text alone does not fix: lowercase
// identifiers are variables unless listed as constants, uppercase ones are
// predicate constants unless listed as (free) predicate variables.
struct Signature {
  std::set<std::string> constants;
  std::map<std::string, int> pred_vars;
  std::map<std::string, int> pred_consts;

  void merge(const Signature& other);
};

// Constants, free predicate variables and predicate constants of f.
Signature signature_of(const Formula& f);

Formula parse_formula(std::string_view text, const Signature& sig = {},
                      const std::string& file = "<input>");
// As parse_formula, with positions reported relative to (line, column).
Formula parse_formula_at(std::string_view text, const Signature& sig,
                         const std::string& file, int line, int column);

// Canonical infix text; parse_formula(pretty(f), signature_of(f)) is
// alpha-equal to f.
std::string pretty(const Formula& f);
std::string pretty(const PredAbstraction& a);

// A .sol file: optional header lines `const a b`, `predvar X:1`,
// `pred P/2`, then one formula. Lines starting with '#' are comments.
struct SolFile {
  Signature signature;
  Formula formula;
};
SolFile parse_sol(std::string_view text, const std::string& file = "<input>");
std::string format_sol(const Formula& f);

// ---------------------------------------------------------------------------
// S-expressions

struct SExpr {
  enum class Kind { Symbol, String, List };
  Kind kind = Kind::Symbol;
  std::string text;
  std::vector<SExpr> items;
  SourceSpan span;

  bool is_symbol() const { return kind == Kind::Symbol; }
  bool is_symbol(std::string_view s) const {
    return kind == Kind::Symbol && text == s;
  }
  bool is_list() const { return kind == Kind::List; }
  // Head symbol of a non-empty list, or "".
  std::string_view head() const;
};

std::vector<SExpr> read_sexprs(std::string_view text,
                               const std::string& file = "<input>");

std::string pretty_sexpr(const Formula& f);
std::string pretty_sexpr(const PredAbstraction& a);

// ---------------------------------------------------------------------------
// Proof scripts

// Elaborates script forms into formulas, abstractions and proofs. Holds the
// declarations seen so far: constants, free predicate variables, formula
// macros (def), hypothesis formulas (let) and named sub-proofs (lemma).
class ScriptContext {
 public:
  explicit ScriptContext(std::string file = "<input>",
                         std::filesystem::path base_dir = {});
  ~ScriptContext();
  ScriptContext(ScriptContext&&) noexcept;
  ScriptContext& operator=(ScriptContext&&) noexcept;

  // Replacement (def ...) forms: a def whose name is a key here is taken
  // from the map instead of the script.
  void set_overrides(std::map<std::string, SExpr> overrides);

  // Handles const/predvar/pred/def/let/lemma/import. Returns false if the
  // form is not a declaration.
  bool declare(const SExpr& form);

  Formula formula(const SExpr& e) const;
  PredAbstraction abstraction(const SExpr& e,
                              std::optional<int> arity = std::nullopt) const;
  Proof proof(const SExpr& e) const;

  const Signature& signature() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct ScriptOptions {
  std::filesystem::path base_dir;
  std::map<std::string, SExpr> overrides;
};

// Parses a whole script: declarations followed by exactly one (proof ...).
Proof parse_proof(std::string_view text, const std::string& file = "<input>",
                  const ScriptOptions& options = {});
Proof parse_proof_file(const std::filesystem::path& path,
                       const ScriptOptions& options = {});

// Canonical script text: declarations for constants and predicate
// variables, then the proof with every formula written out.
std::string pretty_proof(const Proof& p);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace sol

#endif  // SOL_PARSER_HPP
