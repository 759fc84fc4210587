#include "sol/model.hpp"

#include <cctype>
#include <sstream>

namespace sol {

void Model::validate() const {
  if (size < 1) throw ModelFormatError("the domain must be nonempty");
  for (const auto& [name, e] : consts)
    if (e < 0 || e >= size)
      throw ModelFormatError("constant " + name + " lies outside the domain");
  for (const auto& [key, rel] : preds)
    for (const auto& t : rel) {
      if (static_cast<int>(t.size()) != key.second)
        throw ModelFormatError("tuple of the wrong length in " + key.first);
      for (int e : t)
        if (e < 0 || e >= size)
          throw ModelFormatError("tuple outside the domain in " + key.first);
    }
}

std::vector<Tuple> all_tuples(int size, int n) {
  std::vector<Tuple> out;
  Tuple t(n, 0);
  for (;;) {
    out.push_back(t);
    int i = n - 1;
    while (i >= 0 && ++t[i] == size) t[i--] = 0;
    if (i < 0) return out;
  }
}

namespace {

struct Env {
  const Model& m;
  std::vector<std::pair<std::string, int>> inds;
  std::vector<std::pair<PredVarKey, const Relation*>> preds;
  const Assignment& a;

  int value(const Term& t) const {
    if (t.is_var()) {
      for (auto it = inds.rbegin(); it != inds.rend(); ++it)
        if (it->first == t.name) return it->second;
      auto it = a.ind.find(t.name);
      if (it == a.ind.end()) throw UnboundSymbol("unassigned variable " + t.name);
      return it->second;
    }
    auto it = m.consts.find(t.name);
    if (it == m.consts.end()) throw UnboundSymbol("uninterpreted constant " + t.name);
    return it->second;
  }

  const Relation& relation(const PredRef& p) const {
    const PredVarKey key{p.name, p.arity};
    if (p.is_var()) {
      for (auto it = preds.rbegin(); it != preds.rend(); ++it)
        if (it->first == key) return *it->second;
      auto it = a.pred.find(key);
      if (it == a.pred.end())
        throw UnboundSymbol("unassigned predicate variable " + p.name + "/" +
                            std::to_string(p.arity));
      return it->second;
    }
    auto it = m.preds.find(key);
    if (it == m.preds.end())
      throw UnboundSymbol("uninterpreted predicate " + p.name + "/" +
                          std::to_string(p.arity));
    return it->second;
  }
};

bool ev(const Formula& f, Env& env) {
  switch (f.op()) {
    case Op::Bot:
      return false;
    case Op::Atom: {
      Tuple t;
      t.reserve(f.args().size());
      for (const auto& arg : f.args()) t.push_back(env.value(arg));
      return env.relation(f.pred()).contains(t);
    }
    case Op::Not:
      return !ev(f.lhs(), env);
    case Op::And:
      return ev(f.lhs(), env) && ev(f.rhs(), env);
    case Op::Or:
      return ev(f.lhs(), env) || ev(f.rhs(), env);
    case Op::Implies:
      return !ev(f.lhs(), env) || ev(f.rhs(), env);
    case Op::ForallInd:
    case Op::ExistsInd: {
      const bool universal = f.op() == Op::ForallInd;
      env.inds.emplace_back(f.var(), 0);
      bool result = universal;
      for (int d = 0; d < env.m.size; ++d) {
        env.inds.back().second = d;
        if (ev(f.body(), env) != universal) {
          result = !universal;
          break;
        }
      }
      env.inds.pop_back();
      return result;
    }
    case Op::ForallPred:
    case Op::ExistsPred: {
      const bool universal = f.op() == Op::ForallPred;
      const auto tuples = all_tuples(env.m.size, f.binder_arity());
      if (tuples.size() >= 63) throw Error("predicate quantifier too large to enumerate");
      const std::uint64_t count = std::uint64_t{1} << tuples.size();
      Relation rel;
      env.preds.emplace_back(PredVarKey{f.var(), f.binder_arity()}, &rel);
      bool result = universal;
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        rel.clear();
        for (std::size_t i = 0; i < tuples.size(); ++i)
          if (mask >> i & 1) rel.insert(tuples[i]);
        if (ev(f.body(), env) != universal) {
          result = !universal;
          break;
        }
      }
      env.preds.pop_back();
      return result;
    }
  }
  return false;
}

}  // namespace

bool eval(const Formula& f, const Model& m, const Assignment& a) {
  Env env{m, {}, {}, a};
  return ev(f, env);
}

Relation extension(const PredAbstraction& abs, const Model& m,
                   const Assignment& a) {
  Relation out;
  for (const auto& t : all_tuples(m.size, abs.arity())) {
    Assignment b = a;
    for (std::size_t i = 0; i < t.size(); ++i) b.ind[abs.params()[i]] = t[i];
    if (eval(abs.body(), m, b)) out.insert(t);
  }
  return out;
}

bool eval_gq(GQ q, const std::vector<std::set<int>>& sets, const Model& m) {
  const std::size_t want = q == GQ::AtLeast2 ? 1 : 2;
  if (sets.size() != want)
    throw TypeMismatch("quantifier expects " + std::to_string(want) +
                       " sets, got " + std::to_string(sets.size()));
  for (const auto& s : sets)
    for (int e : s)
      if (e < 0 || e >= m.size) throw TypeMismatch("element outside the domain");
  switch (q) {
    case GQ::AtLeast2:
      return sets[0].size() >= 2;
    case GQ::Most: {
      std::size_t in = 0;
      for (int e : sets[0]) in += sets[1].contains(e);
      return in > sets[0].size() - in;
    }
    case GQ::ForallC:
      for (int e : sets[0])
        if (!sets[1].contains(e)) return false;
      return true;
    case GQ::ExistsC:
      for (int e : sets[0])
        if (sets[1].contains(e)) return true;
      return false;
  }
  return false;
}

namespace {

std::vector<bool> unary(const Model& m, const PredRef& p) {
  auto it = m.preds.find({p.name, 1});
  if (it == m.preds.end()) throw UnboundSymbol("uninterpreted predicate " + p.name + "/1");
  std::vector<bool> out(m.size, false);
  for (const auto& t : it->second) out[t[0]] = true;
  return out;
}

}  // namespace

bool eval_henkin_direct(const Model& m, const HenkinSignature& sig,
                        HenkinMode mode) {
  const int n = m.size;
  const auto T = unary(m, sig.T);
  const auto B = unary(m, sig.B);
  auto kit = m.preds.find({sig.K.name, 2});
  if (kit == m.preds.end()) throw UnboundSymbol("uninterpreted predicate " + sig.K.name + "/2");
  std::vector<std::vector<bool>> K(n, std::vector<bool>(n, false));
  for (const auto& t : kit->second) K[t[0]][t[1]] = true;

  if (mode == HenkinMode::Functions) {
    // Functions as base-n counters: f(x) = digit x.
    std::vector<int> f(n, 0);
    for (;;) {
      std::vector<int> g(n, 0);
      for (;;) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
          for (int y = 0; y < n && ok; ++y)
            if (T[x] && B[y] && !K[f[x]][g[y]]) ok = false;
        if (ok) return true;
        int i = n - 1;
        while (i >= 0 && ++g[i] == n) g[i--] = 0;
        if (i < 0) break;
      }
      int i = n - 1;
      while (i >= 0 && ++f[i] == n) f[i--] = 0;
      if (i < 0) return false;
    }
  }

  if (n * n > 20) throw Error("relations mode is limited to domains of size 4");
  const std::uint32_t count = 1u << (n * n);
  auto rel = [n](std::uint32_t mask, int a, int b) {
    return (mask >> (a * n + b) & 1) != 0;
  };
  auto left_total = [&](std::uint32_t mask, const std::vector<bool>& on) {
    for (int x = 0; x < n; ++x) {
      if (!on[x]) continue;
      if ((mask >> (x * n) & ((1u << n) - 1)) == 0) return false;
    }
    return true;
  };
  for (std::uint32_t F = 0; F < count; ++F) {
    if (!left_total(F, T)) continue;
    for (std::uint32_t G = 0; G < count; ++G) {
      if (!left_total(G, B)) continue;
      bool ok = true;
      for (int x = 0; x < n && ok; ++x) {
        if (!T[x]) continue;
        for (int x2 = 0; x2 < n && ok; ++x2) {
          if (!rel(F, x, x2)) continue;
          for (int y = 0; y < n && ok; ++y) {
            if (!B[y]) continue;
            for (int y2 = 0; y2 < n && ok; ++y2)
              if (rel(G, y, y2) && !K[x2][y2]) ok = false;
          }
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

class LineParser {
 public:
  LineParser(std::string_view line, const std::string& file, int lineno)
      : s_(line), file_(file), lineno_(lineno) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ModelFormatError(file_ + ":" + std::to_string(lineno_) + ":" +
                           std::to_string(pos_ + 1) + ": " + msg);
  }
  void space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    space();
    return pos_ >= s_.size();
  }
  bool accept(char c) {
    space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    space();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '_' || s_[pos_] == '\''))
      ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }
  int number() {
    space();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }
  Relation relation(int arity) {
    Relation out;
    expect('{');
    if (accept('}')) return out;
    do {
      Tuple t;
      if (accept('(')) {
        if (!accept(')')) {
          do t.push_back(number());
          while (accept(','));
          expect(')');
        }
      } else {
        t.push_back(number());
      }
      if (static_cast<int>(t.size()) != arity) fail("tuple of the wrong length");
      out.insert(t);
    } while (accept(','));
    expect('}');
    return out;
  }

 private:
  std::string_view s_;
  const std::string& file_;
  int lineno_;
  std::size_t pos_ = 0;
};

std::string format_relation(const Relation& r) {
  std::string out = "{";
  bool first = true;
  for (const auto& t : r) {
    if (!first) out += ',';
    first = false;
    out += '(';
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(t[i]);
    }
    out += ')';
  }
  return out + "}";
}

}  // namespace

ModelFile parse_model(std::string_view text, const std::string& file) {
  ModelFile out;
  bool have_domain = false;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    LineParser p(line, file, lineno);
    if (p.done()) continue;
    const std::string kw = p.ident();
    if (kw == "domain") {
      out.model.size = p.number();
      if (out.model.size < 1) p.fail("the domain must be nonempty");
      have_domain = true;
    } else if (kw == "const" || kw == "var") {
      const std::string name = p.ident();
      p.expect('=');
      const int e = p.number();
      if (have_domain && e >= out.model.size) p.fail("element outside the domain");
      (kw == "const" ? out.model.consts : out.assignment.ind)[name] = e;
    } else if (kw == "pred" || kw == "predvar") {
      const std::string name = p.ident();
      p.expect('/');
      const int arity = p.number();
      p.expect('=');
      Relation r = p.relation(arity);
      for (const auto& t : r)
        for (int e : t)
          if (have_domain && e >= out.model.size) p.fail("element outside the domain");
      (kw == "pred" ? out.model.preds : out.assignment.pred)[{name, arity}] =
          std::move(r);
    } else {
      p.fail("unknown declaration '" + kw + "'");
    }
    if (!p.done()) p.fail("trailing input");
  }
  if (!have_domain) throw ModelFormatError(file + ": missing 'domain' line");
  try {
    out.model.validate();
    Model check{out.model.size, out.assignment.ind, out.assignment.pred};
    check.validate();
  } catch (const ModelFormatError& e) {
    throw ModelFormatError(file + ": " + e.what());
  }
  return out;
}

std::string format_model(const Model& m, const Assignment& a) {
  std::ostringstream out;
  out << "domain " << m.size << '\n';
  for (const auto& [name, e] : m.consts) out << "const " << name << " = " << e << '\n';
  for (const auto& [key, r] : m.preds)
    out << "pred " << key.first << '/' << key.second << " = " << format_relation(r)
        << '\n';
  for (const auto& [name, e] : a.ind) out << "var " << name << " = " << e << '\n';
  for (const auto& [key, r] : a.pred)
    out << "predvar " << key.first << '/' << key.second << " = "
        << format_relation(r) << '\n';
  return out.str();
}

}  // namespace sol
