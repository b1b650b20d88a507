#pragma once

#include <memory>

#include "boundstate/fock/lattice.hpp"
#include "boundstate/fock/mode_space.hpp"

namespace bsl::fock {

// Exact Fock space of the two fermion species on the periodic chain. Mode order
// for the Jordan-Wigner signs: species-1 sites 0..L-1, then species-2 sites.
class LatticeFockSpace {
 public:
  LatticeFockSpace(LatticeConfig config, int max_n1, int max_n2, std::size_t cap = default_basis_cap);

  const LatticeConfig& config() const { return config_; }
  const CellGeometry& geometry() const { return geometry_; }
  const std::shared_ptr<const ModeSpace>& modes() const { return modes_; }
  std::size_t dimension() const { return modes_->dimension(); }
  int max_n1() const { return max_n1_; }
  int max_n2() const { return max_n2_; }

  int mode(int species, int site) const;
  Ladder ladder(int species, int site, bool dagger) const { return {mode(species, site), dagger}; }

  OperatorMatrix field(int species, int site, bool dagger) const;
  OperatorMatrix number(int species) const;

  // Σ φ_α(y) ψ1†(x1) ψ2†(x2) over the cell of centre X; X must be an integer site.
  std::vector<Term> composite_terms(const PairSpectrum& spectrum, int alpha, double centre, bool dagger) const;
  OperatorMatrix composite(const PairSpectrum& spectrum, int alpha, double centre, bool dagger) const;

  // Lattice kinetic energy Σ_i (1/2m_i) Σ_x (2 n - ψ†(x)ψ(x+1) - h.c.).
  OperatorMatrix kinetic() const;
  // All pair interactions v11, v22, v12 (diagonal in occupations).
  OperatorMatrix potential() const;
  OperatorMatrix hamiltonian() const { return kinetic() + potential(); }

 private:
  LatticeConfig config_;
  CellGeometry geometry_;
  int max_n1_, max_n2_;
  std::shared_ptr<const ModeSpace> modes_;
};

LatticeFockSpace enumerate_basis(const LatticeConfig& config, int max_n1, int max_n2,
                                 std::size_t cap = default_basis_cap);

// Integer centre for a refined-grid position, or OffGrid.
int centre_site(double centre, const LatticeConfig& config);

}  // namespace bsl::fock
