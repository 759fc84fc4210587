// Finite standard models and the reference (Tarskian) evaluator. Predicate
// variables range over the full powerset of D^n.

#ifndef SOL_MODEL_HPP
#define SOL_MODEL_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sol/constructions.hpp"
#include "sol/syntax.hpp"

namespace sol {

class UnboundSymbol : public Error {
 public:
  using Error::Error;
};

class TypeMismatch : public Error {
 public:
  using Error::Error;
};

class ModelFormatError : public Error {
 public:
  using Error::Error;
};

using Tuple = std::vector<int>;
using Relation = std::set<Tuple>;

// Domain is {0, ..., size-1}.
struct Model {
  int size = 1;
  std::map<std::string, int> consts;
  std::map<PredVarKey, Relation> preds;

  // Throws ModelFormatError when an invariant is broken.
  void validate() const;

  friend bool operator==(const Model&, const Model&) = default;
};

struct Assignment {
  std::map<std::string, int> ind;
  std::map<PredVarKey, Relation> pred;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Throws UnboundSymbol for free variables, constants or predicate constants
// the model and assignment do not interpret.
bool eval(const Formula& f, const Model& m, const Assignment& a = {});

// {(d1..dn) : abs(d1..dn)} in (m, a).
Relation extension(const PredAbstraction& abs, const Model& m,
                   const Assignment& a = {});

// All n-tuples over the domain in lexicographic order.
std::vector<Tuple> all_tuples(int size, int n);

enum class GQ { Most, AtLeast2, ForallC, ExistsC };

// Most(A,B): |A & B| > |A - B|. AtLeast2(A): |A| >= 2. ForallC(C,P): C
// subset of P. ExistsC(C,P): C meets P. Throws TypeMismatch on the wrong
// number of sets or elements outside the domain.
bool eval_gq(GQ q, const std::vector<std::set<int>>& sets, const Model& m);

enum class HenkinMode { Functions, Relations };

// Functions: some f, g : D -> D with T(x) & B(y) -> K(f(x), g(y)) for all
// x, y. Relations: some F, G left-total on T and B respectively satisfying
// the closure of Phi.
bool eval_henkin_direct(const Model& m, const HenkinSignature& sig,
                        HenkinMode mode);

// Text format, one declaration per line:
//   domain 3
//   const a = 0
//   pred K/2 = {(0,1),(2,2)}
//   var x = 1
//   predvar X/1 = {(0),(2)}
// '#' starts a comment.
struct ModelFile {
  Model model;
  Assignment assignment;
};
ModelFile parse_model(std::string_view text, const std::string& file = "<input>");
std::string format_model(const Model& m, const Assignment& a = {});

}  // namespace sol

#endif  // SOL_MODEL_HPP
