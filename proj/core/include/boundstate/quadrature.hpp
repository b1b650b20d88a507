#pragma once

#include <vector>

#include <Eigen/Core>

#include "boundstate/units.hpp"

namespace bsl {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes and weights on [-1, 1].
QuadratureRule gauss_legendre(int n);

// Nodes and weights for ∫_0^∞ f(x) e^{-x} dx. `log_weights` avoids underflow
// when the caller folds e^{x} back into the weight.
QuadratureRule gauss_laguerre(int n);
std::vector<double> gauss_laguerre_log_weights(const QuadratureRule& rule);

// Product rule on the unit sphere: Gauss-Legendre in cos(theta), uniform in phi.
// Exact for spherical harmonics up to degree min(2*polar-1, azimuth-1).
struct SphereRule {
  std::vector<Vec3> directions;
  std::vector<double> weights;
  std::vector<double> theta;
  std::vector<double> phi;
};

SphereRule sphere_rule(int polar, int azimuth);
SphereRule rotated(const SphereRule& rule, const Eigen::Matrix3d& rotation);

}  // namespace bsl
