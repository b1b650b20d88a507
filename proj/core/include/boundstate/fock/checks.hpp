#pragma once

#include <string>
#include <utility>
#include <vector>

#include "boundstate/fock/auxiliary.hpp"
#include "boundstate/fock/fock_space.hpp"

namespace bsl::fock {

struct Report {
  std::string name;
  double max_deviation = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::vector<std::pair<std::string, double>> diagnostics;
};

enum class PlacementKind { fermion1, fermion2, composite };

struct Placement {
  PlacementKind kind;
  int position;  // site, or integer centre for composites
  int label = 0; // composite label
};

// Creation operators applied left to right as written: p[0] p[1] ... |0>.
using Placements = std::vector<Placement>;

struct SectorContent {
  int fermions1 = 0;
  int fermions2 = 0;
  int composites = 0;
};

// Pairwise ring distance >= separation_a between every two placements.
bool is_separated(const Placements& placements, const LatticeConfig& config);

// Every separated placement list with the given content; positions ascend within
// each kind so that each state appears once. Composite labels run over [0, labels).
std::vector<Placements> separated_placements(const LatticeConfig& config, SectorContent content, int labels);

Eigen::VectorXcd exact_state(const LatticeFockSpace& space, const PairSpectrum& spectrum, const Placements& placements);
Eigen::VectorXcd auxiliary_state(const AuxiliarySpace& space, const Placements& placements);

// Overlap for independent fermions and independent composite bosons: a
// determinant of deltas per fermion species times a permanent for composites.
cplx ideal_overlap(const Placements& bra, const Placements& ket);

// {ψ_i(x), ψ_j†(x')} = δ δ and {ψ_i(x), ψ_j(x')} = 0 for every pair.
Report canonical_anticommutators(const LatticeFockSpace& space);

// φ(X)|0> = 0, <0|φ_α(X) φ_β†(X')|0> = δ δ and [φ_α(X), φ_β†(X')]|0> = δ δ |0>.
Report composite_vacuum_structure(const LatticeFockSpace& space, const PairSpectrum& spectrum);

// Gram matrix of the given states against ideal_overlap. Throws SeparationViolated
// for an unseparated state unless `force` is set. Bound is 10 r0/a.
Report verify_orthonormality(const LatticeFockSpace& space, const PairSpectrum& spectrum,
                             const std::vector<Placements>& states, bool force = false);

// Potential matrix elements between separated states: exact pair interactions
// against internal + fermion-composite + composite-composite + fermion-fermion
// terms on the auxiliary space, both spaces sized to the sector. Composite
// labels run over the lowest `composites` bound states. Deviation is relative
// to the largest element; the bound defaults to 10 r0/a. Diagnostics carry the
// Gram deviation and the full-Hamiltonian deviation, which includes the lattice
// kinetic artifact.
Report effective_vs_exact(const LatticeConfig& config, const PairSpectrum& spectrum, SectorContent content,
                          int composites = 1, double bound = -1.0);

// A zero-momentum composite has effective energy ε_α.
Report single_composite_energy(const AuxiliarySpace& space, int alpha);

// <χ1†χ2†| H_eff |η†>: no term turns a composite into a free pair.
Report decay_elements(const AuxiliarySpace& space);

// U χ_i(x) U† = e^{i m_i v x} χ_i(x), U η(X) U† = e^{i M v X} η(X), [U, η†η] = 0.
Report galilean_boost_check(const AuxiliarySpace& space, double velocity);

// {ψ̃_i(x), ψ̃_j(x')} on the states whose intermediate images stay inside the truncation.
Report tilde_anticommutators(const AuxiliarySpace& space, TildeSign sign = TildeSign::consistent);

// [Ñ_i, H_eff] = 0.
Report number_conservation(const AuxiliarySpace& space);

// Site-current momentum equals Σ sin k n_k and commutes with the free part.
Report momentum_consistency(const AuxiliarySpace& space);

// [T, H_eff] = 0 for the unit translation.
Report translation_invariance(const AuxiliarySpace& space);

struct SweepPoint {
  double depth;
  double overlap_radius;
  double gram_deviation;
  double potential_deviation;
};

struct BindingSweep {
  std::vector<SweepPoint> points;
  bool gram_monotone;
  bool potential_monotone;
};

// Rescales the v12 table to each depth and measures the separated-sector
// deviations for one fermion-1 plus one composite.
BindingSweep binding_sweep(const LatticeConfig& base, const std::vector<double>& depths);

}  // namespace bsl::fock
