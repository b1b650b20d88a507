#pragma once

#include <memory>

#include "boundstate/fock/lattice.hpp"
#include "boundstate/fock/mode_space.hpp"

namespace bsl::fock {

// Sign of the species-2 correction in the tilde fields. `consistent` makes the
// tilde fields anticommute; `literal` keeps a plus sign on both, which fails.
enum class TildeSign { consistent, literal };

// Auxiliary space: independent fermions χ1, χ2 on the sites and composite
// bosons η_α(X) on integer centres, α running over the lowest `composites`
// bound states of the pair problem.
class AuxiliarySpace {
 public:
  AuxiliarySpace(LatticeConfig config, PairSpectrum spectrum, int composites, int max_chi1, int max_chi2, int max_eta,
                 std::size_t cap = default_basis_cap);

  const LatticeConfig& config() const { return config_; }
  const CellGeometry& geometry() const { return geometry_; }
  const PairSpectrum& spectrum() const { return spectrum_; }
  const std::shared_ptr<const ModeSpace>& modes() const { return modes_; }
  std::size_t dimension() const { return modes_->dimension(); }
  int composites() const { return composites_; }

  Ladder chi(int species, int site, bool dagger) const;
  Ladder eta(int alpha, int centre, bool dagger) const;
  OperatorMatrix chi_field(int species, int site, bool dagger) const;
  OperatorMatrix eta_field(int alpha, int centre, bool dagger) const;

  // χ kinetic energy, ε_α η†η and the centre-of-mass hopping 1/(2M).
  OperatorMatrix free_part() const;
  // Σ <φ_α'|v12|φ_α> η†_α' η_α, the potential share of ε_α.
  OperatorMatrix internal_potential() const;
  OperatorMatrix fermion_composite() const;   // density of χ_i times the composite's smeared potential
  OperatorMatrix composite_composite() const; // both composites' constituents interacting pairwise
  OperatorMatrix fermion_fermion() const;     // v_ij between the χ's
  OperatorMatrix effective_potential() const {
    return internal_potential() + fermion_composite() + composite_composite() + fermion_fermion();
  }
  OperatorMatrix hamiltonian() const {
    return free_part() + fermion_composite() + composite_composite() + fermion_fermion();
  }

  // ψ̃_i(x) = χ_i(x) + correction built from η and the opposite χ†.
  OperatorMatrix tilde_field(int species, int site, bool dagger, TildeSign sign = TildeSign::consistent) const;

  // Ñ_i = Σ χ_i†χ_i + Σ η†η: every composite carries one particle of each species.
  OperatorMatrix number(int species) const;
  // Σ_x (1/2i)(a†(x)a(x+1) - a†(x+1)a(x)) over all χ and η: the Σ sin(k) n_k of each field.
  OperatorMatrix momentum() const;
  // Same operator assembled from momentum-space occupations n_k.
  OperatorMatrix momentum_from_modes() const;
  // Shifts every χ site and η centre by one.
  OperatorMatrix translation() const;
  // exp(-i v (m1 Σ x n1 + m2 Σ x n2 + M Σ X N_η)); IncompatibleBoost unless the
  // phases are periodic on the ring.
  OperatorMatrix boost(double velocity) const;

 private:
  LatticeConfig config_;
  CellGeometry geometry_;
  PairSpectrum spectrum_;
  int composites_;
  std::shared_ptr<const ModeSpace> modes_;
};

}  // namespace bsl::fock
