#pragma once

#include <functional>

#include "boundstate/units.hpp"

namespace bsl::atoms {

// Y_lm with the Condon-Shortley phase.
cplx spherical_harmonic(int l, int m, double theta, double phi);
// dY_lm/dtheta.
cplx spherical_harmonic_dtheta(int l, int m, double theta, double phi);

// <l1 m1| n |l2 m2> for the unit vector n, from the closed-form cos(theta) and
// sin(theta)e^{±i phi} ladder elements.
CVec3 direction_element(int l1, int m1, int l2, int m2);

// <l1 m1| f(n) |l2 m2> by product quadrature; exact when f is a polynomial of
// degree <= 15 - l1 - l2.
cplx angular_integral(int l1, int m1, int l2, int m2, const std::function<cplx(const Vec3&)>& f);

}  // namespace bsl::atoms
