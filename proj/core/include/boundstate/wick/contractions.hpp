#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boundstate/fock/lattice.hpp"
#include "boundstate/units.hpp"
#include "boundstate/wick/expression.hpp"

namespace bsl::wick {

// One elementary constituent of the product. A composite annihilator expands to
// ψ2 ψ1 and a composite creator to ψ1† ψ2†, each weighted by the pair wavefunction.
struct Leg {
  int slot;
  int species;
  bool creator;
  int part;  // 0 for an elementary operator, 1 or 2 for a composite constituent
};

std::vector<Leg> legs_of(const Product& product);

struct KernelFactor {
  enum class Kind { site_delta, label_delta, wavefunction };
  Kind kind;
  std::string first;
  std::string second;
  std::string label;       // wavefunction label
  bool conjugate = false;  // wavefunction of an annihilating composite
};

struct ContractionDiagram {
  std::vector<std::pair<int, int>> pairings;   // slot pairs; a double contraction appears twice
  std::vector<std::pair<int, int>> leg_pairs;  // indices into legs_of(product), left < right
  int sign = 1;
  std::vector<KernelFactor> kernel;
  // Links operators of the same side of the product through single contractions,
  // forcing separated arguments within a bound-state radius of each other.
  bool suppressed = false;
};

// Every complete pairing of an annihilator with a creator to its right, of the
// same species and not inside one normal-ordered block.
std::vector<ContractionDiagram> enumerate_contractions(const Product& product);

std::string kernel_string(const ContractionDiagram& diagram);

struct Bindings {
  std::map<std::string, int> positions;
  std::map<std::string, int> labels;
};

struct EvaluationOptions {
  bool include_suppressed = true;
};

// Σ sign × kernel with lattice pair wavefunctions; throws UnboundVariable.
cplx evaluate_diagram(const Product& product, const ContractionDiagram& diagram, const Bindings& bindings,
                      const fock::PairSpectrum& spectrum, const fock::LatticeConfig& config);
cplx evaluate_vev(const Product& product, const Bindings& bindings, const fock::PairSpectrum& spectrum,
                  const fock::LatticeConfig& config, EvaluationOptions options = {});

// The same vacuum expectation by applying operator matrices to the exact Fock vacuum.
cplx fock_vev(const Product& product, const Bindings& bindings, const fock::PairSpectrum& spectrum,
              const fock::LatticeConfig& config);

// For a product containing a block `: psi1+(u) psi1(v) :`, which of the five
// density-operator classes the diagram belongs to (1..5), if any:
//   1  u and v contract with elementary operators;
//   2  u elementary, v with a composite creator whose ψ2† meets an elementary ψ2;
//   3  u with a composite annihilator whose ψ2 meets an elementary ψ2†, v elementary;
//   4  u and v with composites whose ψ2 legs contract with each other;
//   5  u and v with composites whose ψ2 legs each meet elementary operators.
std::optional<int> probe_class(const Product& product, const ContractionDiagram& diagram);

}  // namespace bsl::wick
