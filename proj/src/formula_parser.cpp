#include <cctype>
#include <fstream>
#include <sstream>

#include "sol/parser.hpp"

namespace sol {

std::string SourceSpan::str() const {
  return file + ":" + std::to_string(line) + ":" + std::to_string(column);
}

SyntaxError::SyntaxError(SourceSpan span, const std::string& message)
    : Error(span.str() + ": " + message),
      span_(std::move(span)),
      message_(message) {}

void Signature::merge(const Signature& other) {
  constants.insert(other.constants.begin(), other.constants.end());
  for (const auto& [k, v] : other.pred_vars) pred_vars.insert_or_assign(k, v);
  for (const auto& [k, v] : other.pred_consts)
    pred_consts.insert_or_assign(k, v);
}

Signature signature_of(const Formula& f) {
  Signature s;
  s.constants = constants(f);
  for (const auto& [name, arity] : free_pred_vars(f)) s.pred_vars[name] = arity;
  for (const auto& [name, arity] : pred_constants(f))
    s.pred_consts[name] = arity;
  return s;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

bool is_upper_ident(std::string_view s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  Ident,
  Nat,
  LParen,
  RParen,
  Comma,
  Dot,
  Colon,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall,
  Exists,
  Forall2,
  Exists2,
  Bot,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string file, int line, int column)
      : text_(text), file_(std::move(file)), line_(line), column_(column) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const int line = line_;
      const int col = column_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      out.push_back(next(line, col));
    }
  }

 private:
  void advance(std::size_t bytes) {
    for (std::size_t i = 0; i < bytes; ++i) {
      const unsigned char c = text_[pos_ + i];
      if (c == '\n') {
        ++line_;
        column_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++column_;
      }
    }
    pos_ += bytes;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const unsigned char c = text_[pos_];
      if (std::isspace(c)) {
        advance(1);
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  bool starts(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  Token next(int line, int col) {
    struct Fixed {
      std::string_view text;
      Tok kind;
    };
    static constexpr Fixed kFixed[] = {
        {"<->", Tok::Iff},      {"->", Tok::Implies},   {"↔", Tok::Iff},
        {"→", Tok::Implies}, {"∧", Tok::And}, {"∨", Tok::Or},
        {"¬", Tok::Not},   {"⊥", Tok::Bot},   {"∀", Tok::Forall},
        {"∃", Tok::Exists}, {"(", Tok::LParen},    {")", Tok::RParen},
        {",", Tok::Comma},      {".", Tok::Dot},        {":", Tok::Colon},
        {"~", Tok::Not},        {"&", Tok::And},        {"|", Tok::Or},
    };
    for (const auto& f : kFixed) {
      if (starts(f.text)) {
        advance(f.text.size());
        return {f.kind, std::string(f.text), line, col};
      }
    }
    const unsigned char c = text_[pos_];
    if (std::isdigit(c)) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      std::string s(text_.substr(pos_, end - pos_));
      advance(end - pos_);
      return {Tok::Nat, s, line, col};
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size()) {
        const unsigned char d = text_[end];
        if (std::isalnum(d) || d == '_' || d == '\'') {
          ++end;
        } else {
          break;
        }
      }
      std::string s(text_.substr(pos_, end - pos_));
      advance(end - pos_);
      Tok kind = Tok::Ident;
      if (s == "forall") kind = Tok::Forall;
      else if (s == "exists") kind = Tok::Exists;
      else if (s == "forall2") kind = Tok::Forall2;
      else if (s == "exists2") kind = Tok::Exists2;
      else if (s == "bot") kind = Tok::Bot;
      return {kind, s, line, col};
    }
    std::size_t len = 1;
    if (c >= 0xC0) {
      while (pos_ + len < text_.size() &&
             (static_cast<unsigned char>(text_[pos_ + len]) & 0xC0) == 0x80)
        ++len;
    }
    throw SyntaxError({file_, line, col},
                      "unexpected character '" +
                          std::string(text_.substr(pos_, len)) + "'");
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_;
  int column_;
};

// ---------------------------------------------------------------------------
// Parser

class FormulaParser {
 public:
  FormulaParser(std::vector<Token> tokens, const Signature& sig,
                std::string file)
      : toks_(std::move(tokens)), sig_(sig), file_(std::move(file)) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw SyntaxError({file_, t.line, t.column}, msg);
  }

  Token expect(Tok k, const char* what) {
    if (peek().kind != k) {
      const auto& t = peek();
      fail(t, std::string("expected ") + what +
                  (t.kind == Tok::End ? " at end of input"
                                      : ", found '" + t.text + "'"));
    }
    return take();
  }

  static bool is_quant(Tok k) {
    return k == Tok::Forall || k == Tok::Exists || k == Tok::Forall2 ||
           k == Tok::Exists2;
  }

  Formula formula() {
    if (is_quant(peek().kind)) return quant();
    return impl();
  }

  Formula quant() {
    const Token kw = take();
    const Token name = expect(Tok::Ident, "a variable");
    const bool pred_binder = kw.kind == Tok::Forall2 || kw.kind == Tok::Exists2 ||
                             (is_upper_ident(name.text) && peek().kind == Tok::Colon);
    const bool universal = kw.kind == Tok::Forall || kw.kind == Tok::Forall2;
    if (pred_binder) {
      if (!is_upper_ident(name.text))
        fail(name, "predicate variables start with an uppercase letter");
      expect(Tok::Colon, "':' and an arity");
      const Token n = expect(Tok::Nat, "an arity");
      const int arity = std::stoi(n.text);
      expect(Tok::Dot, "'.'");
      bound_preds_.emplace_back(name.text, arity);
      Formula body = formula();
      bound_preds_.pop_back();
      return universal ? Formula::forall_pred(name.text, arity, body)
                       : Formula::exists_pred(name.text, arity, body);
    }
    if (is_upper_ident(name.text))
      fail(name, "individual variables start with a lowercase letter");
    expect(Tok::Dot, "'.'");
    bound_inds_.push_back(name.text);
    Formula body = formula();
    bound_inds_.pop_back();
    return universal ? Formula::forall_ind(name.text, body)
                     : Formula::exists_ind(name.text, body);
  }

  Formula impl() {
    Formula lhs = disj();
    if (accept(Tok::Implies)) return Formula::implies(lhs, formula());
    if (accept(Tok::Iff)) return Formula::iff(lhs, formula());
    return lhs;
  }

  Formula disj() {
    Formula acc = conj();
    while (accept(Tok::Or)) acc = Formula::disj(acc, conj());
    return acc;
  }

  Formula conj() {
    Formula acc = neg();
    while (accept(Tok::And)) acc = Formula::conj(acc, neg());
    return acc;
  }

  Formula neg() {
    if (accept(Tok::Not)) return Formula::neg(neg());
    if (is_quant(peek().kind)) return quant();
    return atom();
  }

  Formula atom() {
    if (accept(Tok::Bot)) return Formula::bot();
    if (accept(Tok::LParen)) {
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    const Token& t = peek();
    if (t.kind != Tok::Ident) {
      fail(t, t.kind == Tok::End ? "expected a formula at end of input"
                                 : "expected a formula, found '" + t.text + "'");
    }
    const Token name = take();
    if (!is_upper_ident(name.text))
      fail(name, "predicates start with an uppercase letter");
    std::vector<Term> args;
    if (accept(Tok::LParen)) {
      if (!accept(Tok::RParen)) {
        args.push_back(term());
        while (accept(Tok::Comma)) args.push_back(term());
        expect(Tok::RParen, "',' or ')'");
      }
    }
    const PredRef pred = resolve_pred(name, static_cast<int>(args.size()));
    return Formula::atom(pred, std::move(args));
  }

  Term term() {
    const Token t = expect(Tok::Ident, "a term");
    if (is_upper_ident(t.text)) fail(t, "terms start with a lowercase letter");
    for (auto it = bound_inds_.rbegin(); it != bound_inds_.rend(); ++it)
      if (*it == t.text) return Term::var(t.text);
    if (sig_.constants.contains(t.text)) return Term::constant(t.text);
    return Term::var(t.text);
  }

  PredRef resolve_pred(const Token& name, int nargs) {
    auto arity_error = [&](int declared) {
      throw ArityError({file_, name.line, name.column},
                       name.text + " has arity " + std::to_string(declared) +
                           " but is applied to " + std::to_string(nargs) +
                           " arguments");
    };
    for (auto it = bound_preds_.rbegin(); it != bound_preds_.rend(); ++it) {
      if (it->first == name.text) {
        if (it->second != nargs) arity_error(it->second);
        return PredRef::var(name.text, nargs);
      }
    }
    if (auto it = sig_.pred_vars.find(name.text); it != sig_.pred_vars.end()) {
      if (it->second != nargs) arity_error(it->second);
      return PredRef::var(name.text, nargs);
    }
    if (auto it = sig_.pred_consts.find(name.text); it != sig_.pred_consts.end()) {
      if (it->second != nargs) arity_error(it->second);
    } else if (auto jt = used_consts_.find(name.text); jt != used_consts_.end()) {
      if (jt->second != nargs) arity_error(jt->second);
    } else {
      used_consts_.emplace(name.text, nargs);
    }
    return PredRef::constant(name.text, nargs);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  std::string file_;
  std::vector<std::string> bound_inds_;
  std::vector<std::pair<std::string, int>> bound_preds_;
  std::map<std::string, int> used_consts_;
};

// ---------------------------------------------------------------------------
// Printer

int precedence(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Bot:
      return 5;
    case Op::Not:
      return 4;
    case Op::And:
      return 3;
    case Op::Or:
      return 2;
    case Op::Implies:
      return 1;
    default:
      return 0;
  }
}

void print(const Formula& f, int ctx, std::string& out) {
  const bool parens = precedence(f) < ctx;
  if (parens) out += '(';
  switch (f.op()) {
    case Op::Bot:
      out += "bot";
      break;
    case Op::Atom:
      out += f.pred().name;
      if (!f.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ',';
          out += f.args()[i].name;
        }
        out += ')';
      }
      break;
    case Op::Not:
      out += '~';
      print(f.lhs(), 4, out);
      break;
    case Op::And:
      print(f.lhs(), 3, out);
      out += " & ";
      print(f.rhs(), 4, out);
      break;
    case Op::Or:
      print(f.lhs(), 2, out);
      out += " | ";
      print(f.rhs(), 3, out);
      break;
    case Op::Implies:
      print(f.lhs(), 2, out);
      out += " -> ";
      print(f.rhs(), 0, out);
      break;
    case Op::ForallInd:
    case Op::ExistsInd:
      out += f.op() == Op::ForallInd ? "forall " : "exists ";
      out += f.var();
      out += ". ";
      print(f.body(), 0, out);
      break;
    case Op::ForallPred:
    case Op::ExistsPred:
      out += f.op() == Op::ForallPred ? "forall2 " : "exists2 ";
      out += f.var();
      out += ':';
      out += std::to_string(f.binder_arity());
      out += ". ";
      print(f.body(), 0, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig,
                      const std::string& file) {
  return parse_formula_at(text, sig, file, 1, 1);
}

Formula parse_formula_at(std::string_view text, const Signature& sig,
                         const std::string& file, int line, int column) {
  Lexer lex(text, file, line, column);
  FormulaParser parser(lex.run(), sig, file);
  return parser.parse_all();
}

std::string pretty(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

std::string pretty(const PredAbstraction& a) {
  std::string out = "lam (";
  for (std::size_t i = 0; i < a.params().size(); ++i) {
    if (i) out += ' ';
    out += a.params()[i];
  }
  out += "). ";
  print(a.body(), 0, out);
  return out;
}

SolFile parse_sol(std::string_view text, const std::string& file) {
  SolFile result;
  std::size_t pos = 0;
  int line = 1;
  // Header lines come first; the formula starts at the first other line.
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    std::istringstream words{std::string(raw)};
    std::string kw;
    words >> kw;
    if (kw.empty() || kw[0] == '#') {
      pos = eol + 1;
      ++line;
      continue;
    }
    if (kw != "const" && kw != "predvar" && kw != "pred") break;
    std::string item;
    int col = 1;
    while (words >> item) {
      col = static_cast<int>(raw.find(item)) + 1;
      if (kw == "const") {
        result.signature.constants.insert(item);
        continue;
      }
      const char sep = kw == "predvar" ? ':' : '/';
      const auto at = item.find(sep);
      if (at == std::string::npos || at == 0 || at + 1 == item.size())
        throw SyntaxError({file, line, col},
                          "expected Name" + std::string(1, sep) + "arity");
      int arity = 0;
      try {
        arity = std::stoi(item.substr(at + 1));
      } catch (const std::exception&) {
        throw SyntaxError({file, line, col}, "bad arity in '" + item + "'");
      }
      const std::string name = item.substr(0, at);
      if (kw == "predvar")
        result.signature.pred_vars[name] = arity;
      else
        result.signature.pred_consts[name] = arity;
    }
    pos = eol + 1;
    ++line;
  }
  if (pos > text.size()) pos = text.size();
  result.formula = parse_formula_at(text.substr(pos), result.signature, file,
                                    line, 1);
  return result;
}

std::string format_sol(const Formula& f) {
  const Signature sig = signature_of(f);
  std::string out;
  if (!sig.constants.empty()) {
    out += "const";
    for (const auto& c : sig.constants) out += " " + c;
    out += '\n';
  }
  if (!sig.pred_vars.empty()) {
    out += "predvar";
    for (const auto& [name, arity] : sig.pred_vars)
      out += " " + name + ":" + std::to_string(arity);
    out += '\n';
  }
  out += pretty(f);
  out += '\n';
  return out;
}

}  // namespace sol
