#include "sol/sweep.hpp"

#include <algorithm>
#include <numeric>

#include <omp.h>

namespace sol {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

SymbolTable SymbolTable::of(const Formula& f) {
  SymbolTable t;
  for (const auto& k : pred_constants(f)) t.preds.push_back(k);
  for (const auto& c : sol::constants(f)) t.constants.push_back(c);
  for (const auto& v : free_ind_vars(f)) t.ind_vars.push_back(v);
  for (const auto& k : free_pred_vars(f)) t.pred_vars.push_back(k);
  return t;
}

namespace {

template <class T>
void append_missing(std::vector<T>& into, const std::vector<T>& from) {
  for (const auto& x : from)
    if (std::find(into.begin(), into.end(), x) == into.end()) into.push_back(x);
}

}  // namespace

void SymbolTable::merge(const SymbolTable& other) {
  append_missing(preds, other.preds);
  append_missing(constants, other.constants);
  append_missing(ind_vars, other.ind_vars);
  append_missing(pred_vars, other.pred_vars);
}

// ---------------------------------------------------------------------------
// Miniscoping

namespace {

bool is_universal(Op op) { return op == Op::ForallInd || op == Op::ForallPred; }

struct Binder {
  Op op;
  std::string var;
  int arity;

  bool occurs_in(const Formula& g) const {
    if (op == Op::ForallInd || op == Op::ExistsInd) return free_ind_vars(g).contains(var);
    return free_pred_vars(g).contains({var, arity});
  }
  Formula wrap(Formula body) const {
    switch (op) {
      case Op::ForallInd:
        return Formula::forall_ind(var, std::move(body));
      case Op::ExistsInd:
        return Formula::exists_ind(var, std::move(body));
      case Op::ForallPred:
        return Formula::forall_pred(var, arity, std::move(body));
      default:
        return Formula::exists_pred(var, arity, std::move(body));
    }
  }
};

Formula curry(const Formula& a, const Formula& b) {
  if (a.op() == Op::And) return curry(a.lhs(), curry(a.rhs(), b));
  return Formula::implies(a, b);
}

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (f.op() == Op::And) {
    flatten_and(f.lhs(), out);
    flatten_and(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

Formula conj_list(const std::vector<Formula>& fs) {
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::conj(acc, fs[i]);
  return acc;
}

Formula push(const Binder& q, const Formula& body) {
  if (!q.occurs_in(body)) return body;
  if (is_universal(q.op)) {
    if (body.op() == Op::And)
      return Formula::conj(push(q, body.lhs()), push(q, body.rhs()));
    if (body.op() == Op::Implies) {
      std::vector<Formula> outside, inside;
      Formula c = body;
      while (c.op() == Op::Implies) {
        (q.occurs_in(c.lhs()) ? inside : outside).push_back(c.lhs());
        c = c.rhs();
      }
      if (!outside.empty()) {
        Formula inner = c;
        for (auto it = inside.rbegin(); it != inside.rend(); ++it)
          inner = Formula::implies(*it, inner);
        Formula out = push(q, inner);
        for (auto it = outside.rbegin(); it != outside.rend(); ++it)
          out = Formula::implies(*it, out);
        return out;
      }
    }
    if (body.op() == Op::Or) {
      if (!q.occurs_in(body.lhs())) return Formula::disj(body.lhs(), push(q, body.rhs()));
      if (!q.occurs_in(body.rhs())) return Formula::disj(push(q, body.lhs()), body.rhs());
    }
  } else {
    if (body.op() == Op::Or)
      return Formula::disj(push(q, body.lhs()), push(q, body.rhs()));
    if (body.op() == Op::And) {
      std::vector<Formula> parts, outside, inside;
      flatten_and(body, parts);
      for (const auto& p : parts) (q.occurs_in(p) ? inside : outside).push_back(p);
      if (!outside.empty())
        return Formula::conj(conj_list(outside), push(q, conj_list(inside)));
    }
    if (body.op() == Op::Implies && !q.occurs_in(body.lhs()))
      return Formula::implies(body.lhs(), push(q, body.rhs()));
  }
  return q.wrap(body);
}

}  // namespace

Formula miniscope(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Bot:
      return f;
    case Op::Not:
      return Formula::neg(miniscope(f.lhs()));
    case Op::And:
      return Formula::conj(miniscope(f.lhs()), miniscope(f.rhs()));
    case Op::Or:
      return Formula::disj(miniscope(f.lhs()), miniscope(f.rhs()));
    case Op::Implies:
      return curry(miniscope(f.lhs()), miniscope(f.rhs()));
    default:
      return push({f.op(), f.var(), f.is_pred_binder() ? f.binder_arity() : 0},
                  miniscope(f.body()));
  }
}

// ---------------------------------------------------------------------------
// Compiled evaluator

CompiledFormula::CompiledFormula(const Formula& f, const SymbolTable& table,
                                 bool use_miniscope) {
  table_inds_ = static_cast<int>(table.constants.size() + table.ind_vars.size());
  table_preds_ = static_cast<int>(table.preds.size() + table.pred_vars.size());
  ind_slots_ = table_inds_;
  pred_slots_ = table_preds_;
  std::vector<std::pair<std::string, int>> inds;
  std::vector<std::pair<PredVarKey, int>> preds;
  root_ = compile(use_miniscope ? miniscope(f) : f, inds, preds, table);
}

namespace {

template <class T>
int index_of(const std::vector<T>& v, const T& x) {
  auto it = std::find(v.begin(), v.end(), x);
  return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

}  // namespace

int CompiledFormula::compile(const Formula& f,
                             std::vector<std::pair<std::string, int>>& inds,
                             std::vector<std::pair<PredVarKey, int>>& preds,
                             const SymbolTable& table) {
  Node n;
  n.op = f.op();
  switch (f.op()) {
    case Op::Bot:
      break;
    case Op::Atom: {
      const PredRef& p = f.pred();
      const PredVarKey key{p.name, p.arity};
      n.arity = p.arity;
      if (p.is_var()) {
        for (auto it = preds.rbegin(); it != preds.rend() && n.slot < 0; ++it)
          if (it->first == key) n.slot = it->second;
        if (n.slot < 0) {
          const int i = index_of(table.pred_vars, key);
          if (i < 0)
            throw UnboundSymbol("unassigned predicate variable " + p.name + "/" +
                                std::to_string(p.arity));
          n.slot = static_cast<int>(table.preds.size()) + i;
        }
      } else {
        n.slot = index_of(table.preds, key);
        if (n.slot < 0)
          throw UnboundSymbol("uninterpreted predicate " + p.name + "/" +
                              std::to_string(p.arity));
      }
      for (const Term& t : f.args()) {
        int slot = -1;
        if (t.is_var()) {
          for (auto it = inds.rbegin(); it != inds.rend() && slot < 0; ++it)
            if (it->first == t.name) slot = it->second;
          if (slot < 0) {
            const int i = index_of(table.ind_vars, t.name);
            if (i < 0) throw UnboundSymbol("unassigned variable " + t.name);
            slot = static_cast<int>(table.constants.size()) + i;
          }
        } else {
          slot = index_of(table.constants, t.name);
          if (slot < 0) throw UnboundSymbol("uninterpreted constant " + t.name);
        }
        n.args.push_back(slot);
      }
      break;
    }
    case Op::Not:
      n.a = compile(f.lhs(), inds, preds, table);
      break;
    case Op::And:
    case Op::Or:
    case Op::Implies:
      n.a = compile(f.lhs(), inds, preds, table);
      n.b = compile(f.rhs(), inds, preds, table);
      break;
    case Op::ForallInd:
    case Op::ExistsInd:
      n.slot = ind_slots_++;
      inds.emplace_back(f.var(), n.slot);
      n.a = compile(f.body(), inds, preds, table);
      inds.pop_back();
      break;
    case Op::ForallPred:
    case Op::ExistsPred:
      n.slot = pred_slots_++;
      n.arity = f.binder_arity();
      preds.emplace_back(PredVarKey{f.var(), f.binder_arity()}, n.slot);
      n.a = compile(f.body(), inds, preds, table);
      preds.pop_back();
      break;
  }
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

namespace {

struct Machine {
  const std::vector<CompiledFormula::Node>& nodes;
  int n;
  int* ind;
  u64* mask;
  StepCounter& counter;

  u64 cells(int arity) const {
    u64 c = 1;
    for (int i = 0; i < arity; ++i) c *= static_cast<u64>(n);
    return c;
  }

  bool run(int i) {
    const auto& nd = nodes[i];
    switch (nd.op) {
      case Op::Bot:
        return false;
      case Op::Atom: {
        u64 idx = 0;
        for (int s : nd.args) idx = idx * static_cast<u64>(n) + static_cast<u64>(ind[s]);
        return (mask[nd.slot] >> idx & 1) != 0;
      }
      case Op::Not:
        return !run(nd.a);
      case Op::And:
        return run(nd.a) && run(nd.b);
      case Op::Or:
        return run(nd.a) || run(nd.b);
      case Op::Implies:
        return !run(nd.a) || run(nd.b);
      case Op::ForallInd:
      case Op::ExistsInd: {
        const bool universal = nd.op == Op::ForallInd;
        for (int d = 0; d < n; ++d) {
          ind[nd.slot] = d;
          if (run(nd.a) != universal) return !universal;
          if (counter.exceeded()) return false;
        }
        return universal;
      }
      case Op::ForallPred:
      case Op::ExistsPred: {
        const bool universal = nd.op == Op::ForallPred;
        const u64 c = cells(nd.arity);
        if (c >= 64) {
          counter.steps = counter.limit + 1;
          return false;
        }
        const u64 count = u64{1} << c;
        for (u64 m = 0; m < count; ++m) {
          if (++counter.steps > counter.limit) return false;
          mask[nd.slot] = m;
          if (run(nd.a) != universal) return !universal;
          if (counter.exceeded()) return false;
        }
        return universal;
      }
    }
    return false;
  }
};

}  // namespace

bool CompiledFormula::eval(int size, const int* inds, const u64* masks,
                           StepCounter& counter) const {
  std::vector<int> ind(std::max(ind_slots_, 1), 0);
  std::vector<u64> mask(std::max(pred_slots_, 1), 0);
  std::copy(inds, inds + table_inds_, ind.begin());
  std::copy(masks, masks + table_preds_, mask.begin());
  Machine m{nodes_, size, ind.data(), mask.data(), counter};
  return m.run(root_);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

u64 power(int base, int exp) {
  u64 r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<u64>(base);
  return r;
}

// Digit layout of the structures of one size.
struct Layout {
  int n = 1;
  int npreds = 0;
  int nconsts = 0;
  int ninds = 0;
  int npredvars = 0;
  std::vector<int> arity;   // per digit; -1 for element digits
  std::vector<u128> radix;  // per digit
  u128 total = 1;

  Layout(const SymbolTable& t, int size) : n(size) {
    npreds = static_cast<int>(t.preds.size());
    nconsts = static_cast<int>(t.constants.size());
    ninds = static_cast<int>(t.ind_vars.size());
    npredvars = static_cast<int>(t.pred_vars.size());
    auto mask_digit = [&](const PredVarKey& k) {
      const u64 cells = power(n, k.second);
      if (cells > 64)
        throw ResourceLimit("predicate " + k.first + "/" + std::to_string(k.second) +
                                " has too many tuples on a domain of size " +
                                std::to_string(n),
                            0);
      arity.push_back(k.second);
      radix.push_back(u128{1} << cells);
    };
    for (const auto& k : t.preds) mask_digit(k);
    for (int i = 0; i < nconsts + ninds; ++i) {
      arity.push_back(-1);
      radix.push_back(static_cast<u128>(n));
    }
    for (const auto& k : t.pred_vars) mask_digit(k);
    const u128 cap = ~u128{0};
    for (u128 r : radix) total = total > cap / r ? cap : total * r;
  }

  std::size_t digits() const { return radix.size(); }

  std::vector<u64> decode(u128 index) const {
    std::vector<u64> d(digits(), 0);
    for (std::size_t i = digits(); i-- > 0;) {
      d[i] = static_cast<u64>(index % radix[i]);
      index /= radix[i];
    }
    return d;
  }

  void increment(std::vector<u64>& d) const {
    for (std::size_t i = digits(); i-- > 0;) {
      if (static_cast<u128>(d[i]) + 1 < radix[i]) {
        ++d[i];
        return;
      }
      d[i] = 0;
    }
  }

  // Split into the evaluator's individual and predicate slot values.
  void split(const std::vector<u64>& d, std::vector<int>& inds,
             std::vector<u64>& masks) const {
    inds.clear();
    masks.clear();
    for (int i = 0; i < npreds; ++i) masks.push_back(d[i]);
    for (int i = 0; i < nconsts + ninds; ++i)
      inds.push_back(static_cast<int>(d[npreds + i]));
    for (int i = 0; i < npredvars; ++i) masks.push_back(d[npreds + nconsts + ninds + i]);
  }
};

// Domain permutations with their action on tuple indices, used to keep only
// the enumeration-least structure of each isomorphism class.
class Symmetry {
 public:
  Symmetry(const Layout& layout) : layout_(layout) {
    std::vector<int> p(layout.n);
    std::iota(p.begin(), p.end(), 0);
    int max_arity = 0;
    for (int a : layout.arity) max_arity = std::max(max_arity, a);
    while (std::next_permutation(p.begin(), p.end())) {
      Perm perm;
      perm.elem = p;
      for (int k = 0; k <= max_arity; ++k) {
        const u64 cells = power(layout.n, k);
        std::vector<int> map(cells);
        for (u64 idx = 0; idx < cells; ++idx) {
          u64 rest = idx, image = 0, scale = 1;
          for (int j = 0; j < k; ++j) {
            image += static_cast<u64>(p[rest % layout.n]) * scale;
            rest /= layout.n;
            scale *= layout.n;
          }
          map[idx] = static_cast<int>(image);
        }
        perm.tuple.push_back(std::move(map));
      }
      perms_.push_back(std::move(perm));
    }
  }

  bool canonical(const std::vector<u64>& d) const {
    for (const auto& perm : perms_) {
      for (std::size_t i = 0; i < d.size(); ++i) {
        const int a = layout_.arity[i];
        u64 image;
        if (a < 0) {
          image = static_cast<u64>(perm.elem[d[i]]);
        } else {
          image = 0;
          const auto& map = perm.tuple[a];
          for (u64 bits = d[i]; bits; bits &= bits - 1)
            image |= u64{1} << map[__builtin_ctzll(bits)];
        }
        if (image < d[i]) return false;
        if (image > d[i]) break;
      }
    }
    return true;
  }

 private:
  struct Perm {
    std::vector<int> elem;
    std::vector<std::vector<int>> tuple;
  };
  const Layout& layout_;
  std::vector<Perm> perms_;
};

struct ChunkResult {
  u64 steps = 0;
  bool hit = false;
  std::vector<u64> digits;
};

// Test: bool(int n, const int* inds, const u64* masks, StepCounter&), true on
// a hit.
template <class Test>
ChunkResult run_chunk(const Layout& layout, const Symmetry* sym, u128 start,
                      u64 count, u64 limit, const Test& test) {
  ChunkResult r;
  StepCounter counter{0, limit};
  std::vector<u64> d = layout.decode(start);
  std::vector<int> inds;
  std::vector<u64> masks;
  for (u64 k = 0; k < count; ++k) {
    if (!sym || sym->canonical(d)) {
      ++counter.steps;
      if (counter.exceeded()) break;
      layout.split(d, inds, masks);
      const bool hit = test(layout.n, inds.data(), masks.data(), counter);
      if (counter.exceeded()) break;
      if (hit) {
        r.hit = true;
        r.digits = d;
        break;
      }
    }
    layout.increment(d);
  }
  r.steps = counter.steps;
  return r;
}

struct Hit {
  int size;
  std::vector<u64> digits;
};

template <class Test>
std::optional<Hit> search(const SymbolTable& table, int min_size, int max_size,
                          const SweepOptions& opt, const Test& test, u64& steps) {
  constexpr u64 kChunk = 1024;
  const int threads = opt.parallel ? omp_get_max_threads() : 1;
  const u64 wave = static_cast<u64>(std::max(threads, 1)) * 8;
  for (int n = min_size; n <= max_size; ++n) {
    const Layout layout(table, n);
    std::optional<Symmetry> sym;
    if (opt.symmetry && n > 1) sym.emplace(layout);
    const Symmetry* symp = sym ? &*sym : nullptr;
    u128 pos = 0;
    while (pos < layout.total) {
      const u128 left = layout.total - pos;
      const u128 chunks_left = (left + kChunk - 1) / kChunk;
      const u64 nchunks = static_cast<u64>(std::min<u128>(chunks_left, wave));
      const u64 limit = opt.budget - std::min(steps, opt.budget);
      std::vector<ChunkResult> results(nchunks);
#pragma omp parallel for schedule(dynamic, 1) if (opt.parallel && nchunks > 1)
      for (u64 c = 0; c < nchunks; ++c) {
        const u128 start = pos + static_cast<u128>(c) * kChunk;
        const u64 count = static_cast<u64>(std::min<u128>(kChunk, layout.total - start));
        results[c] = run_chunk(layout, symp, start, count, limit, test);
      }
      for (auto& r : results) {
        steps += r.steps;
        if (steps > opt.budget)
          throw ResourceLimit("enumeration budget of " + std::to_string(opt.budget) +
                                  " steps exceeded",
                              steps);
        if (r.hit) return Hit{n, std::move(r.digits)};
      }
      pos += static_cast<u128>(nchunks) * kChunk;
    }
  }
  return std::nullopt;
}

}  // namespace

std::pair<Model, Assignment> structure_model(const SymbolTable& table, int size,
                                             const std::vector<u64>& digits) {
  const Layout layout(table, size);
  if (digits.size() != layout.digits()) throw Error("digit vector of the wrong length");
  Model m;
  Assignment a;
  m.size = size;
  auto relation = [&](int arity, u64 mask) {
    Relation r;
    const auto tuples = all_tuples(size, arity);
    for (std::size_t i = 0; i < tuples.size(); ++i)
      if (mask >> i & 1) r.insert(tuples[i]);
    return r;
  };
  std::size_t i = 0;
  for (const auto& k : table.preds) m.preds[k] = relation(k.second, digits[i++]);
  for (const auto& c : table.constants) m.consts[c] = static_cast<int>(digits[i++]);
  for (const auto& v : table.ind_vars) a.ind[v] = static_cast<int>(digits[i++]);
  for (const auto& k : table.pred_vars) a.pred[k] = relation(k.second, digits[i++]);
  return {m, a};
}

ValidityResult check_validity(const Formula& f, const SymbolTable& table,
                              int max_size, const SweepOptions& options) {
  const CompiledFormula cf(f, table);
  ValidityResult result;
  auto test = [&cf](int n, const int* inds, const u64* masks, StepCounter& c) {
    return !cf.eval(n, inds, masks, c);
  };
  auto hit = search(table, 1, max_size, options, test, result.steps);
  if (hit) {
    result.valid = false;
    std::tie(result.model, result.assignment) =
        structure_model(table, hit->size, hit->digits);
  }
  return result;
}

ValidityResult check_validity(const Formula& f, int max_size,
                              const SweepOptions& options) {
  return check_validity(f, SymbolTable::of(f), max_size, options);
}

ValidityResult check_validity_reference(const Formula& f, const SymbolTable& table,
                                        int max_size, u64 budget) {
  ValidityResult result;
  for (int n = 1; n <= max_size; ++n) {
    const Layout layout(table, n);
    std::vector<u64> d(layout.digits(), 0);
    for (u128 k = 0; k < layout.total; ++k) {
      if (++result.steps > budget)
        throw ResourceLimit("enumeration budget of " + std::to_string(budget) +
                                " steps exceeded",
                            result.steps);
      auto [m, a] = structure_model(table, n, d);
      if (!eval(f, m, a)) {
        result.valid = false;
        result.model = std::move(m);
        result.assignment = std::move(a);
        return result;
      }
      layout.increment(d);
    }
  }
  return result;
}

void for_each_model(const SymbolTable& table, int size,
                    const std::function<void(const Model&, const Assignment&)>& fn) {
  const Layout layout(table, size);
  std::vector<u64> d(layout.digits(), 0);
  for (u128 k = 0; k < layout.total; ++k) {
    auto [m, a] = structure_model(table, size, d);
    fn(m, a);
    layout.increment(d);
  }
}

std::pair<Model, Assignment> random_model(const SymbolTable& table, int size,
                                          std::mt19937_64& rng) {
  const Layout layout(table, size);
  std::vector<u64> d(layout.digits());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const u128 r = layout.radix[i];
    if (r > (u128{1} << 63)) {
      d[i] = rng();
    } else {
      std::uniform_int_distribution<u64> dist(0, static_cast<u64>(r - 1));
      d[i] = dist(rng);
    }
  }
  return structure_model(table, size, d);
}

namespace {

u64 mask_of(const Relation& r, int size) {
  u64 m = 0;
  for (const auto& t : r) {
    u64 idx = 0;
    for (int e : t) idx = idx * static_cast<u64>(size) + static_cast<u64>(e);
    m |= u64{1} << idx;
  }
  return m;
}

}  // namespace

bool eval_budgeted(const Formula& f, const Model& m, const Assignment& a, u64 budget) {
  const SymbolTable table = SymbolTable::of(f);
  std::vector<int> inds;
  std::vector<u64> masks;
  auto relation = [&](const std::map<PredVarKey, Relation>& from, const PredVarKey& k,
                      const char* what) {
    auto it = from.find(k);
    if (it == from.end())
      throw UnboundSymbol(std::string(what) + " " + k.first + "/" + std::to_string(k.second));
    if (power(m.size, k.second) > 64)
      throw ResourceLimit("predicate " + k.first + " has too many tuples", 0);
    return mask_of(it->second, m.size);
  };
  for (const auto& k : table.preds) masks.push_back(relation(m.preds, k, "uninterpreted predicate"));
  for (const auto& c : table.constants) {
    auto it = m.consts.find(c);
    if (it == m.consts.end()) throw UnboundSymbol("uninterpreted constant " + c);
    inds.push_back(it->second);
  }
  for (const auto& v : table.ind_vars) {
    auto it = a.ind.find(v);
    if (it == a.ind.end()) throw UnboundSymbol("unassigned variable " + v);
    inds.push_back(it->second);
  }
  for (const auto& k : table.pred_vars)
    masks.push_back(relation(a.pred, k, "unassigned predicate variable"));
  const CompiledFormula cf(f, table);
  StepCounter counter{0, budget};
  const bool value = cf.eval(m.size, inds.data(), masks.data(), counter);
  if (counter.exceeded())
    throw ResourceLimit("evaluation budget of " + std::to_string(budget) +
                            " steps exceeded",
                        counter.steps);
  return value;
}

bool branching_holds(int size, u64 T, u64 B, u64 K) {
  if (T == 0 || B == 0) return true;
  // col[y'] = {x' : K(x', y')}
  std::vector<u64> col(size, 0);
  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y)
      if (K >> (x * size + y) & 1) col[y] |= u64{1} << x;
  std::vector<int> teams;
  for (int x = 0; x < size; ++x)
    if (T >> x & 1) teams.push_back(x);
  // f restricted to T as a base-size counter; g can then pick, for every
  // y in B, any y' whose column covers the image of f.
  std::vector<int> f(teams.size(), 0);
  for (;;) {
    u64 image = 0;
    for (int v : f) image |= u64{1} << v;
    for (int y = 0; y < size; ++y)
      if ((col[y] & image) == image) return true;
    std::size_t i = f.size();
    while (i > 0 && ++f[i - 1] == size) f[--i] = 0;
    if (i == 0) return false;
  }
}

Model find_branching_separator(int max_size, const SweepOptions& options,
                               const HenkinSignature& sig) {
  SymbolTable table;
  table.preds = {{sig.T.name, 1}, {sig.B.name, 1}, {sig.K.name, 2}};
  const auto [l1, l2] = linear_readings(sig);
  const CompiledFormula c1(l1, table), c2(l2, table);
  auto test = [&](int n, const int* inds, const u64* masks, StepCounter& c) {
    return c1.eval(n, inds, masks, c) && c2.eval(n, inds, masks, c) &&
           !branching_holds(n, masks[0], masks[1], masks[2]);
  };
  u64 steps = 0;
  auto hit = search(table, 1, max_size, options, test, steps);
  if (!hit)
    throw NotFound("no model of size at most " + std::to_string(max_size) +
                   " satisfies both linear readings but not the branching one");
  return structure_model(table, hit->size, hit->digits).first;
}

}  // namespace sol
