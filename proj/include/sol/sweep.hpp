// Exhaustive model enumeration: validity checking with deterministic
// countermodels, the branching-versus-linear separator search, and the
// compiled bitmask evaluator both are built on.
//
// Enumeration order. Domain sizes ascend. Within a size, a structure is the
// digit vector (predicate constants, individual constants, free individual
// variables, free predicate variables), each group in symbol-table order,
// read as a mixed-radix number with the last digit varying fastest. A
// predicate digit is its extension as a binary counter whose bit i stands for
// the i-th tuple in lexicographic order; an individual digit is an element.

#ifndef SOL_SWEEP_HPP
#define SOL_SWEEP_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sol/constructions.hpp"
#include "sol/model.hpp"
#include "sol/syntax.hpp"

namespace sol {

class ResourceLimit : public Error {
 public:
  ResourceLimit(const std::string& what, std::uint64_t steps)
      : Error(what), steps_(steps) {}
  std::uint64_t steps() const { return steps_; }

 private:
  std::uint64_t steps_;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

constexpr std::uint64_t kDefaultBudget = 100'000'000;

// The symbols a structure interprets, in enumeration order.
struct SymbolTable {
  std::vector<PredVarKey> preds;
  std::vector<std::string> constants;
  std::vector<std::string> ind_vars;
  std::vector<PredVarKey> pred_vars;

  // Symbols of f, each group sorted.
  static SymbolTable of(const Formula& f);
  // Appends symbols of other not yet present.
  void merge(const SymbolTable& other);
};

struct StepCounter {
  std::uint64_t steps = 0;
  std::uint64_t limit = kDefaultBudget;
  bool exceeded() const { return steps > limit; }
};

// Miniscoped equivalent of f: quantifiers pushed inward across connectives,
// vacuous quantifiers dropped, conjunctive antecedents curried.
Formula miniscope(const Formula& f);

// Evaluator over bitmask structures. Individual slots are the table's
// constants then free individual variables; predicate slots are its
// predicate constants then free predicate variables.
class CompiledFormula {
 public:
  // Throws UnboundSymbol if f mentions a symbol outside the table.
  CompiledFormula(const Formula& f, const SymbolTable& table,
                  bool use_miniscope = true);

  // Each predicate quantifier candidate costs one step. Once the counter is
  // exceeded the returned value is meaningless.
  bool eval(int size, const int* inds, const std::uint64_t* masks,
            StepCounter& counter) const;

  struct Node {
    Op op = Op::Bot;
    int a = -1;
    int b = -1;
    // Binders: the slot they bind. Atoms: the predicate slot.
    int slot = -1;
    int arity = 0;
    std::vector<int> args;
  };

 private:
  int compile(const Formula& f, std::vector<std::pair<std::string, int>>& inds,
              std::vector<std::pair<PredVarKey, int>>& preds,
              const SymbolTable& table);

  std::vector<Node> nodes_;
  int root_ = 0;
  int ind_slots_ = 0;
  int pred_slots_ = 0;
  int table_inds_ = 0;
  int table_preds_ = 0;
};

struct SweepOptions {
  std::uint64_t budget = kDefaultBudget;
  bool parallel = true;
  // Visit only the enumeration-least member of each isomorphism class.
  bool symmetry = true;
};

struct ValidityResult {
  bool valid = true;
  Model model;
  Assignment assignment;
  std::uint64_t steps = 0;
};

// Every model over `table` of size 1..max_size and every assignment to its
// free variables. Returns the enumeration-least countermodel, or Valid.
// Throws ResourceLimit when more than options.budget steps are needed.
ValidityResult check_validity(const Formula& f, const SymbolTable& table,
                              int max_size, const SweepOptions& options = {});
ValidityResult check_validity(const Formula& f, int max_size,
                              const SweepOptions& options = {});

// Serial reference: plain enumeration with the reference evaluator. Steps
// count models only.
ValidityResult check_validity_reference(const Formula& f,
                                        const SymbolTable& table, int max_size,
                                        std::uint64_t budget = kDefaultBudget);

// Evaluates f on one model with the compiled evaluator under a step budget.
// Throws UnboundSymbol and ResourceLimit.
bool eval_budgeted(const Formula& f, const Model& m, const Assignment& a,
                   std::uint64_t budget = kDefaultBudget);

// Decodes the structure with the given digits (see the enumeration order).
std::pair<Model, Assignment> structure_model(const SymbolTable& table,
                                             int size,
                                             const std::vector<std::uint64_t>& digits);

// Calls fn on every structure of the given size in enumeration order.
void for_each_model(const SymbolTable& table, int size,
                    const std::function<void(const Model&, const Assignment&)>& fn);

std::pair<Model, Assignment> random_model(const SymbolTable& table, int size,
                                          std::mt19937_64& rng);

// Branching semantics restricted to bitmask structures over (T, B, K) of the
// given size; T and B are unary masks, K is a binary mask.
bool branching_holds(int size, std::uint64_t T, std::uint64_t B, std::uint64_t K);

// First model (sizes 1..max_size, enumeration order over {T:1, B:1, K:2})
// where both linear readings hold and the branching reading fails. Throws
// NotFound when there is none.
Model find_branching_separator(int max_size, const SweepOptions& options = {},
                               const HenkinSignature& sig = HenkinSignature::standard());

}  // namespace sol

#endif  // SOL_SWEEP_HPP
