#include "boundstate/atoms/angular.hpp"

#include <cmath>

#include "boundstate/quadrature.hpp"

namespace bsl::atoms {

cplx spherical_harmonic(int l, int m, double theta, double phi) {
  if (std::abs(m) > l) return 0.0;
  const int am = std::abs(m);
  const cplx y = std::sph_legendre(l, am, theta) * std::polar(1.0, am * phi);
  if (m >= 0) return y;
  return (am % 2 ? -1.0 : 1.0) * std::conj(y);
}

cplx spherical_harmonic_dtheta(int l, int m, double theta, double phi) {
  const double s = std::sin(theta);
  cplx out = 0.0;
  if (m != 0) out += m * std::cos(theta) / s * spherical_harmonic(l, m, theta, phi);
  if (m < l) out += std::sqrt(double(l - m) * (l + m + 1)) * std::polar(1.0, -phi) * spherical_harmonic(l, m + 1, theta, phi);
  return out;
}

namespace {

// <l1 m1| n_z |l2 m2>, <l1 m1| sin(theta)e^{+i phi} |l2 m2>, <l1 m1| sin(theta)e^{-i phi} |l2 m2>.
double cos_element(int l1, int m1, int l2, int m2) {
  if (m1 != m2) return 0.0;
  const double l = l2, m = m2;
  if (l1 == l2 + 1) return std::sqrt(((l + 1) * (l + 1) - m * m) / ((2 * l + 1) * (2 * l + 3)));
  if (l1 == l2 - 1) return std::sqrt((l * l - m * m) / ((2 * l - 1) * (2 * l + 1)));
  return 0.0;
}

double raise_element(int l1, int m1, int l2, int m2) {
  if (m1 != m2 + 1) return 0.0;
  const double l = l2, m = m2;
  if (l1 == l2 + 1) return -std::sqrt((l + m + 1) * (l + m + 2) / ((2 * l + 1) * (2 * l + 3)));
  if (l1 == l2 - 1) return std::sqrt((l - m) * (l - m - 1) / ((2 * l - 1) * (2 * l + 1)));
  return 0.0;
}

double lower_element(int l1, int m1, int l2, int m2) {
  if (m1 != m2 - 1) return 0.0;
  const double l = l2, m = m2;
  if (l1 == l2 + 1) return std::sqrt((l - m + 1) * (l - m + 2) / ((2 * l + 1) * (2 * l + 3)));
  if (l1 == l2 - 1) return -std::sqrt((l + m) * (l + m - 1) / ((2 * l - 1) * (2 * l + 1)));
  return 0.0;
}

}  // namespace

CVec3 direction_element(int l1, int m1, int l2, int m2) {
  const double up = raise_element(l1, m1, l2, m2);
  const double down = lower_element(l1, m1, l2, m2);
  const cplx i(0.0, 1.0);
  return CVec3(0.5 * (up + down), (up - down) / (2.0 * i), cos_element(l1, m1, l2, m2));
}

cplx angular_integral(int l1, int m1, int l2, int m2, const std::function<cplx(const Vec3&)>& f) {
  static const SphereRule rule = sphere_rule(16, 32);
  cplx sum = 0.0;
  for (std::size_t p = 0; p < rule.directions.size(); ++p) {
    const cplx y1 = spherical_harmonic(l1, m1, rule.theta[p], rule.phi[p]);
    const cplx y2 = spherical_harmonic(l2, m2, rule.theta[p], rule.phi[p]);
    sum += rule.weights[p] * std::conj(y1) * f(rule.directions[p]) * y2;
  }
  return sum;
}

}  // namespace bsl::atoms
