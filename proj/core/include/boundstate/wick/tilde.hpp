#pragma once

#include <set>
#include <string>
#include <vector>

namespace bsl::wick {

// Auxiliary-space operators. `pair` stands for Σ_α φ_α(x1 - x2) η_α(X(x1, x2)),
// the composite field at constituent positions (first, second).
struct AuxSymbol {
  enum class Field { chi1, chi2, pair };
  Field field;
  bool dagger;
  std::string first;
  std::string second;  // pair only
};

struct SymbolicFactor {
  enum class Kind { delta, pair_commutator };
  Kind kind;
  std::vector<std::string> args;  // delta: (a, b); pair_commutator: (x1, x2, x1', x2')
};

struct SymbolicTerm {
  double coefficient = 1.0;
  std::vector<SymbolicFactor> factors;
  std::vector<AuxSymbol> ops;
  std::set<std::string> summed;
};

using SymbolicSum = std::vector<SymbolicTerm>;

enum class TildeConvention { consistent, literal };

// ψ̃_i(arg) = χ_i(arg) + O_i(arg); the dummy summation variable is made unique
// through `tag`. The consistent convention carries a minus sign in O_2.
SymbolicSum tilde_map(int species, bool dagger, const std::string& arg, const std::string& tag,
                      TildeConvention convention = TildeConvention::consistent);

SymbolicSum multiply(const SymbolicSum& a, const SymbolicSum& b);
SymbolicSum add(const SymbolicSum& a, const SymbolicSum& b);

// Normal orders with the canonical relations, resolves deltas against summed
// variables, sorts each operator string into a canonical order and collects
// equal terms. Terms with vanishing coefficient are removed.
SymbolicSum simplify(const SymbolicSum& sum);

SymbolicSum anticommutator(const SymbolicSum& a, const SymbolicSum& b);

std::string to_string(const SymbolicTerm& term);
std::string to_string(const SymbolicSum& sum);

}  // namespace bsl::wick
