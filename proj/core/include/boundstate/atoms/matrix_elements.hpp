#pragma once

#include <vector>

#include "boundstate/atoms/states.hpp"
#include "boundstate/units.hpp"

namespace bsl::atoms {

// ∫ R_a R_b r^{2+power} dr.
double radial_integral(const BoundState& a, const BoundState& b, int power);

// ∫ R_a (d/dr + shift/r) R_b r^2 dr, the radial part of <a|∇|b>.
double radial_gradient_integral(const BoundState& a, const BoundState& b, double shift);

// <a| y |b> for the relative coordinate y = x1 - x2.
CVec3 position_matrix(const BoundState& a, const BoundState& b);

// d_ab = <a| d |b> with d = dipole_charge * y.
CVec3 dipole_matrix(const BoundState& a, const BoundState& b, const AtomModel& model);

// <a| -i∇ |b>.
CVec3 momentum_matrix(const BoundState& a, const BoundState& b);

// <a| y_i y_j ... |b> (rank factors), flattened row-major into 3^rank entries.
std::vector<cplx> moment_tensor(const BoundState& a, const BoundState& b, int rank);

// <a| y_i y_j |b> as a 3x3 matrix, the rank-2 case of moment_tensor.
Eigen::Matrix3cd quadrupole_matrix(const BoundState& a, const BoundState& b);

}  // namespace bsl::atoms
