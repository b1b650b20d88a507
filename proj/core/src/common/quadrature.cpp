#include "boundstate/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace bsl {

namespace {

// Golub-Welsch: eigen-decomposition of the Jacobi matrix of the orthogonal family.
QuadratureRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double mu0) {
  const auto n = diag.size();
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    jacobi(i, i) = diag(i);
    if (i + 1 < n) {
      jacobi(i, i + 1) = off(i);
      jacobi(i + 1, i) = off(i);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) off(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  return golub_welsch(diag, off, 2.0);
}

QuadratureRule gauss_laguerre(int n) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + 1.0;
  for (int k = 1; k < n; ++k) off(k - 1) = k;
  return golub_welsch(diag, off, 1.0);
}

std::vector<double> gauss_laguerre_log_weights(const QuadratureRule& rule) {
  std::vector<double> out(rule.weights.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::log(rule.weights[i]) + rule.nodes[i];
  return out;
}

SphereRule sphere_rule(int polar, int azimuth) {
  const QuadratureRule gl = gauss_legendre(polar);
  SphereRule rule;
  const double dphi = 2.0 * pi / azimuth;
  for (int i = 0; i < polar; ++i) {
    const double c = gl.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double theta = std::acos(c);
    for (int j = 0; j < azimuth; ++j) {
      const double phi = j * dphi;
      rule.directions.emplace_back(s * std::cos(phi), s * std::sin(phi), c);
      rule.weights.push_back(gl.weights[i] * dphi);
      rule.theta.push_back(theta);
      rule.phi.push_back(phi);
    }
  }
  return rule;
}

SphereRule rotated(const SphereRule& rule, const Eigen::Matrix3d& rotation) {
  SphereRule out = rule;
  for (std::size_t i = 0; i < out.directions.size(); ++i) {
    const Vec3 d = rotation * rule.directions[i];
    out.directions[i] = d;
    out.theta[i] = std::acos(std::clamp(d.z(), -1.0, 1.0));
    out.phi[i] = std::atan2(d.y(), d.x());
  }
  return out;
}

}  // namespace bsl
