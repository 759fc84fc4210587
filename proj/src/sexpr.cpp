#include <cctype>

#include "sol/parser.hpp"

namespace sol {

std::string_view SExpr::head() const {
  if (kind != Kind::List || items.empty() || !items[0].is_symbol()) return {};
  return items[0].text;
}

namespace {

class Reader {
 public:
  Reader(std::string_view text, std::string file)
      : text_(text), file_(std::move(file)) {}

  std::vector<SExpr> all() {
    std::vector<SExpr> out;
    for (;;) {
      skip();
      if (pos_ >= text_.size()) return out;
      out.push_back(read());
    }
  }

 private:
  SourceSpan here() const { return {file_, line_, column_}; }

  void advance() {
    const unsigned char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++column_;
    }
  }

  void skip() {
    while (pos_ < text_.size()) {
      const unsigned char c = text_[pos_];
      if (std::isspace(c)) {
        advance();
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.span = here();
    const char c = text_[pos_];
    if (c == ')') throw SyntaxError(e.span, "unexpected ')'");
    if (c == '(') {
      advance();
      e.kind = SExpr::Kind::List;
      for (;;) {
        skip();
        if (pos_ >= text_.size())
          throw SyntaxError(here(), "unclosed '(' opened at " + e.span.str());
        if (text_[pos_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == '"') {
      advance();
      e.kind = SExpr::Kind::String;
      for (;;) {
        if (pos_ >= text_.size())
          throw SyntaxError(e.span, "unterminated string");
        char d = text_[pos_];
        if (d == '"') {
          advance();
          return e;
        }
        if (d == '\\' && pos_ + 1 < text_.size()) {
          advance();
          d = text_[pos_];
        }
        e.text += d;
        advance();
      }
    }
    e.kind = SExpr::Kind::Symbol;
    while (pos_ < text_.size()) {
      const unsigned char d = text_[pos_];
      if (std::isspace(d) || d == '(' || d == ')' || d == '"' || d == ';') break;
      e.text += static_cast<char>(d);
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

void print(const Formula& f, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    out += op;
    out += ' ';
    print(f.lhs(), out);
    out += ' ';
    print(f.rhs(), out);
    out += ')';
  };
  switch (f.op()) {
    case Op::Bot:
      out += "bot";
      return;
    case Op::Atom:
      if (f.args().empty()) {
        out += f.pred().name;
        return;
      }
      out += '(';
      out += f.pred().name;
      for (const auto& t : f.args()) {
        out += ' ';
        out += t.name;
      }
      out += ')';
      return;
    case Op::Not:
      out += "(not ";
      print(f.lhs(), out);
      out += ')';
      return;
    case Op::And:
      return binary("and");
    case Op::Or:
      return binary("or");
    case Op::Implies:
      return binary("->");
    case Op::ForallInd:
    case Op::ExistsInd:
      out += f.op() == Op::ForallInd ? "(forall " : "(exists ";
      out += f.var();
      out += ' ';
      print(f.body(), out);
      out += ')';
      return;
    case Op::ForallPred:
    case Op::ExistsPred:
      out += f.op() == Op::ForallPred ? "(forall2 " : "(exists2 ";
      out += f.var();
      out += ' ';
      out += std::to_string(f.binder_arity());
      out += ' ';
      print(f.body(), out);
      out += ')';
      return;
  }
}

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text, const std::string& file) {
  return Reader(text, file).all();
}

std::string pretty_sexpr(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::string pretty_sexpr(const PredAbstraction& a) {
  std::string out = "(lam (";
  for (std::size_t i = 0; i < a.params().size(); ++i) {
    if (i) out += ' ';
    out += a.params()[i];
  }
  out += ") ";
  print(a.body(), out);
  out += ')';
  return out;
}

}  // namespace sol
