#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "boundstate/atoms/radial_grid.hpp"
#include "boundstate/vdw/coupling.hpp"

namespace bsl::vdw {

// Intermediate states per partial wave, one m = 0 representative per radial function.
struct RadialBasis {
  std::map<int, std::vector<BoundState>> channels;
};

RadialBasis spectrum_basis(const atoms::PseudoSpectrum& spectrum, std::optional<double> max_energy = std::nullopt);
RadialBasis discrete_basis(const AtomModel& model, int n_max, int l_max);

struct DispersionOptions {
  int order = 1;
  double convergence = 2e-3;      // relative shift allowed between the last two energy cutoffs
  double degenerate_gap = 1e-10;  // channels closer than this to the initial pair energy are excluded
  bool refuse_degenerate = false; // throw DegenerateDenominator instead of excluding
};

struct ChannelContribution {
  std::string lambda;
  std::string rho;
  double weight = 0.0;  // contribution to E2, summed over magnetic sublevels
};

struct CutoffStep {
  double cutoff;  // upper bound on ε_λ + ε_ρ
  double energy;  // E2 with channels below the cutoff
};

struct VdwResult {
  double E0 = 0.0;
  double E1 = 0.0;           // <αβ|V|αβ>
  double E1_exchange = 0.0;  // <βα|V|αβ>, the resonant transfer term
  double E2 = 0.0;
  double C6 = 0.0;           // -E2 R⁶
  double R = 0.0;
  double converged_cutoff = 0.0;
  std::vector<CutoffStep> sweep;
  std::vector<ChannelContribution> channels;   // largest contributions, descending in magnitude
  std::vector<ChannelContribution> excluded;   // degenerate channels left out of E2
  bool all_denominators_negative = true;
  SeparationCheck separation;
};

// Second-order dispersion sum for a fixed pair of states. Radial integrals are
// tabulated once; each separation then costs one pass over the channel pairs.
class DispersionSum {
 public:
  DispersionSum(const BoundState& alpha, const BoundState& beta, const AtomModel& model, const RadialBasis& basis,
                DispersionOptions options = {});

  VdwResult operator()(const Vec3& R, int top_channels = 10) const;

  // Radius used by the separation check.
  const BoundState& alpha() const { return alpha_; }

 private:
  struct Atom {
    // For each partial wave l: for each active rank p, the radial integrals
    // <k|r^p|initial> per basis state and the angular tensors per m.
    struct Wave {
      int l;
      std::vector<BoundState> states;
      std::vector<int> ranks;
      std::vector<std::vector<double>> radial;            // [rank slot][k]
      std::vector<std::vector<std::vector<cplx>>> angular; // [rank slot][m + l][flat]
    };
    std::vector<Wave> waves;
    std::array<double, max_moment_rank + 1> charge{};
  };
  static Atom tabulate(const BoundState& initial, const AtomModel& model, const RadialBasis& basis, int max_rank);

  BoundState alpha_, beta_;
  AtomModel model_;
  DispersionOptions options_;
  int max_rank_;
  Atom a_, b_;
};

VdwResult second_order_energy(const BoundState& alpha, const BoundState& beta, const Vec3& R, const AtomModel& model,
                              const RadialBasis& basis, const DispersionOptions& options = {});

// <αβ|V|αβ> and the exchange element <βα|V|αβ>.
std::pair<double, double> first_order_energy(const BoundState& alpha, const BoundState& beta, const Vec3& R,
                                             const AtomModel& model, int order = 1);

// (2/3) Σ |<α|d|λ>|² |<β|d|ρ>|² / (ε_λ + ε_ρ - ε_α - ε_β), summed over all m.
double isotropic_c6(const BoundState& alpha, const BoundState& beta, const AtomModel& model, const RadialBasis& basis);

struct EffectivePotential {
  std::vector<double> R;
  std::vector<double> V;
  double C6 = 0.0;             // -V R⁶ at the largest R
  double plateau_spread = 0.0; // max relative deviation of V R⁶ from C6 over the table
};

// Second-order interaction of two ground-state atoms as a radial table along z.
EffectivePotential effective_potential(const BoundState& alpha, const AtomModel& model, const RadialBasis& basis,
                                       const std::vector<double>& radii, const DispersionOptions& options = {});

// Same second-order energy assembled as g† D g from explicit couplings to
// every (λ m, ρ m') product state; quadratic in the basis size, for checking.
double matrix_route_energy(const BoundState& alpha, const BoundState& beta, const Vec3& R, const AtomModel& model,
                           const RadialBasis& basis, int order = 1, double degenerate_gap = 1e-10);

}  // namespace bsl::vdw
