#pragma once

#include <limits>
#include <string>

namespace bsl::atoms {

// Two charged particles bound by Coulomb attraction. Particle 1 is the light
// one (the electron for hydrogen); m2 may be +inf for a static nucleus.
class AtomModel {
 public:
  AtomModel(double m1, double m2, double e1 = 1.0, double e2 = -1.0);

  static AtomModel hydrogen();            // static nucleus, mu = 1
  static AtomModel hydrogen_recoiling();  // proton mass 1836.15 m_e
  static AtomModel positronium();         // mu = 1/2

  double m1() const { return m1_; }
  double m2() const { return m2_; }
  double e1() const { return e1_; }
  double e2() const { return e2_; }
  double total_mass() const { return total_; }
  double reduced_mass() const { return mu_; }
  bool neutral() const { return e1_ + e2_ == 0.0; }
  bool static_nucleus() const { return m2_ == std::numeric_limits<double>::infinity(); }

  // Strength of the attraction, -e1*e2 (> 0 for a bound system).
  double coupling() const { return -e1_ * e2_; }
  // Inverse Bohr length of the relative motion.
  double inverse_length() const { return mu_ * coupling(); }

  // Constituent offsets from the centre of mass: x1 = X + share1*y, x2 = X - share2*y,
  // with share1 = m2/M and share2 = m1/M.
  double share1() const;
  double share2() const;

  // Charge weights entering the dipole, current and contact (seagull) couplings.
  double dipole_charge() const;   // e1 m2/M - e2 m1/M
  double current_charge() const;  // e1/m1 - e2/m2
  double contact_charge() const;  // e1^2/m1 + e2^2/m2

  std::string describe() const;

 private:
  double m1_, m2_, e1_, e2_, total_, mu_;
};

}  // namespace bsl::atoms
