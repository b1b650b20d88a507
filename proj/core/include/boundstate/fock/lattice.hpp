#pragma once

#include <utility>
#include <vector>

namespace bsl::fock {

// Interaction tables indexed by minimal-image distance 0..L/2.
struct PairPotential {
  std::vector<double> v11;
  std::vector<double> v22;
  std::vector<double> v12;

  // -depth on |y| <= width between unlike species, nothing else.
  static PairPotential square_well(int sites, double depth, int width = 1);
};

struct LatticeConfig {
  int sites = 12;
  int mass1 = 1;
  int mass2 = 1;
  int separation_a = 4;
  PairPotential potential = PairPotential::square_well(12, 8.0);

  int total_mass() const { return mass1 + mass2; }
  double reduced_mass() const { return double(mass1) * mass2 / total_mass(); }
  void validate() const;
};

// Periodic geometry of the two-body cells. A composite with integer centre X and
// relative offset y in (-L/2, L/2] occupies x2 = X - floor(m1 y / M) and
// x1 = x2 + y (mod L); this is a bijection between (X, y) and (x1, x2).
class CellGeometry {
 public:
  explicit CellGeometry(const LatticeConfig& config);

  int sites() const { return sites_; }
  int wrap(int x) const { return ((x % sites_) + sites_) % sites_; }
  // Representative of x - x' in (-L/2, L/2].
  int offset(int x, int x_prime) const;
  int distance(int x, int x_prime) const;
  std::vector<int> offsets() const;  // -L/2+1 .. L/2
  int offset_index(int y) const { return y + sites_ / 2 - 1; }

  std::pair<int, int> constituents(int centre, int y) const;  // (x1, x2)
  std::pair<int, int> cell(int x1, int x2) const;             // (centre, y)

 private:
  int sites_, mass1_, total_;
};

struct PairState {
  int label;
  double energy;
  std::vector<double> wavefunction;  // over CellGeometry::offsets()
};

struct PairSpectrum {
  std::vector<PairState> states;  // ascending energy
  int bound_count = 0;
  double overlap_radius = 0.0;    // where the ground-state envelope drops below threshold
  double threshold = 1e-3;
  int sites = 0;

  double phi(int label, int y) const { return states.at(label).wavefunction.at(y + sites / 2 - 1); }
};

// Relative-motion problem -(1/2mu) Δ + v12 on the periodic offset grid.
// Throws NoBoundState when nothing lies below zero.
PairSpectrum solve_pair_problem(const LatticeConfig& config, double threshold = 1e-3);

// Throws SeparationViolated unless separation_a > overlap_radius.
void check_hierarchy(const LatticeConfig& config, const PairSpectrum& spectrum);

}  // namespace bsl::fock
