#pragma once

#include <array>
#include <vector>

#include "boundstate/atoms/states.hpp"
#include "boundstate/units.hpp"

namespace bsl::vdw {

using atoms::AtomModel;
using atoms::BoundState;

inline constexpr int max_moment_rank = 3;

// ∂^n (1/R) with respect to the components of R, flattened row-major (3^n entries), n <= 3.
std::vector<double> derivative_tensor(int n, const Vec3& R);

// Charge-weighted transition moments Σ_i e_i s_i^p <final| y^{⊗p} |initial>
// with s_1 = m2/M and s_2 = -m1/M, for p = 0..max_rank.
struct TransitionMoments {
  std::array<std::vector<cplx>, max_moment_rank + 1> rank;
  int max_rank = 0;
};

TransitionMoments transition_moments(const BoundState& final_state, const BoundState& initial,
                                     const AtomModel& model, int max_rank);

// Highest combined rank p + q kept at a multipole order: 0 monopole, 1 dipole, 2 dipole-quadrupole.
int combined_rank(int order);

// <δ_A γ_B| V |α_B β_B> for atom A at R relative to atom B, V summing the four
// Coulomb terms between the constituents of the two atoms, expanded in multipoles.
cplx coupling(const TransitionMoments& a, const TransitionMoments& b, const Vec3& R, int order);
cplx coupling(const BoundState& delta, const BoundState& gamma, const BoundState& alpha, const BoundState& beta,
              const AtomModel& model, const Vec3& R, int order = 1);

// (x²(d1·d2) - 3(x·d1)(x·d2)) / x⁵, the dipole-dipole interaction between two transition dipoles.
cplx dipole_dipole(const CVec3& d1, const CVec3& d2, const Vec3& x);

struct SeparationCheck {
  double size = 0.0;       // larger shell radius n²/(mu kappa) of the two states
  double mass_size = 0.0;  // larger 99.9% radius
  bool comfortable = true; // R >= 3 * mass_size
};

// Throws SeparationTooSmall when |R| < 3 * size.
SeparationCheck check_separation(const BoundState& alpha, const BoundState& beta, const AtomModel& model,
                                 const Vec3& R);

}  // namespace bsl::vdw
