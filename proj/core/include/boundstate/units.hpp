#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace bsl {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

inline constexpr double pi = std::numbers::pi;

// Hartree atomic units throughout.
inline constexpr double inverse_fine_structure = 137.035999;
inline constexpr double fine_structure = 1.0 / inverse_fine_structure;
inline constexpr double speed_of_light = inverse_fine_structure;
inline constexpr double atomic_time_s = 2.4188843265857e-17;
inline constexpr double hartree_ev = 27.211386245988;
inline constexpr double bohr_m = 5.29177210903e-11;
inline constexpr double proton_electron_mass_ratio = 1836.15267343;

inline double per_second(double rate_au) { return rate_au / atomic_time_s; }

// Bilinear (no conjugation) dot product, as in e·d with complex vectors.
inline cplx dot(const CVec3& a, const CVec3& b) { return a.transpose() * b; }

}  // namespace bsl
