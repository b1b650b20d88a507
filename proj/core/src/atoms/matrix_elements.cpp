#include "boundstate/atoms/matrix_elements.hpp"

#include <cmath>
#include <stdexcept>

#include "boundstate/atoms/angular.hpp"
#include "boundstate/atoms/radial_grid.hpp"
#include "boundstate/quadrature.hpp"

namespace bsl::atoms {

namespace {

struct LaguerreTable {
  QuadratureRule rule = gauss_laguerre(64);
  std::vector<double> log_weights = gauss_laguerre_log_weights(rule);
};

const LaguerreTable& laguerre_table() {
  static const LaguerreTable table;
  return table;
}

// ∫_0^∞ f(r) dr for f decaying like e^{-c r}; exact for polynomial × e^{-c r}.
template <class F>
double laguerre_integral(double c, F&& f) {
  const auto& t = laguerre_table();
  double sum = 0.0;
  for (std::size_t i = 0; i < t.rule.nodes.size(); ++i) {
    const double r = t.rule.nodes[i] / c;
    sum += std::exp(t.log_weights[i]) * f(r);
  }
  return sum / c;
}

const RadialGrid* shared_grid(const BoundState& a, const BoundState& b) {
  const RadialGrid* ga = a.radial.analytic() ? nullptr : a.radial.as_grid().channel->grid.get();
  const RadialGrid* gb = b.radial.analytic() ? nullptr : b.radial.as_grid().channel->grid.get();
  if (ga && gb && ga != gb) throw std::invalid_argument("grid states from different radial grids cannot be combined");
  return ga ? ga : gb;
}

double analytic_scale(const BoundState& a) {
  const auto& r = a.radial.as_analytic();
  return r.scale / r.n;
}

// du/dr on the grid: analytic states exactly, grid states by central differences in ln r.
std::vector<double> grid_derivative(const BoundState& s, const RadialGrid& grid) {
  const int n = grid.size();
  std::vector<double> du(n);
  if (s.radial.analytic()) {
    const auto sampler = s.radial.sampler();
    for (int i = 0; i < n; ++i) du[i] = sampler->value(grid.r(i)) + grid.r(i) * sampler->derivative(grid.r(i));
    return du;
  }
  const auto u = s.radial.on_grid(grid);
  const double h = grid.step();
  for (int i = 0; i < n; ++i) {
    const double next = i + 1 < n ? u[i + 1] : 0.0;
    const double prev = i > 0 ? u[i - 1] : 0.0;
    du[i] = (next - prev) / (2.0 * h * grid.r(i));
  }
  return du;
}

double int_power(double x, int power) {
  double out = 1.0;
  for (int k = 0; k < std::abs(power); ++k) out *= x;
  return power < 0 ? 1.0 / out : out;
}

}  // namespace

double radial_integral(const BoundState& a, const BoundState& b, int power) {
  if (const RadialGrid* grid = shared_grid(a, b)) {
    const auto ua = a.radial.on_grid(*grid);
    const auto ub = b.radial.on_grid(*grid);
    double sum = 0.0;
    for (int i = 0; i < grid->size(); ++i) sum += grid->weight(i) * ua[i] * ub[i] * int_power(grid->r(i), power);
    return sum;
  }
  const auto sa = a.radial.sampler();
  const auto sb = b.radial.sampler();
  return laguerre_integral(analytic_scale(a) + analytic_scale(b), [&](double r) {
    return sa->value(r) * sb->value(r) * int_power(r, 2 + power);
  });
}

double radial_gradient_integral(const BoundState& a, const BoundState& b, double shift) {
  if (const RadialGrid* grid = shared_grid(a, b)) {
    // R_a R_b' r^2 = u_a u_b' - u_a u_b / r and R_a R_b r = u_a u_b / r.
    const auto ua = a.radial.on_grid(*grid);
    const auto ub = b.radial.on_grid(*grid);
    const auto dub = grid_derivative(b, *grid);
    double sum = 0.0;
    for (int i = 0; i < grid->size(); ++i)
      sum += grid->weight(i) * ua[i] * (dub[i] + (shift - 1.0) * ub[i] / grid->r(i));
    return sum;
  }
  const auto sa = a.radial.sampler();
  const auto sb = b.radial.sampler();
  return laguerre_integral(analytic_scale(a) + analytic_scale(b), [&](double r) {
    return sa->value(r) * (sb->derivative(r) + shift * sb->value(r) / r) * r * r;
  });
}

CVec3 position_matrix(const BoundState& a, const BoundState& b) {
  if (std::abs(a.l() - b.l()) != 1) return CVec3::Zero();
  const CVec3 angular = direction_element(a.l(), a.m(), b.l(), b.m());
  if (angular.isZero(0.0)) return CVec3::Zero();
  return radial_integral(a, b, 1) * angular;
}

CVec3 dipole_matrix(const BoundState& a, const BoundState& b, const AtomModel& model) {
  return model.dipole_charge() * position_matrix(a, b);
}

// Gradient of R_l(r) Y_lm couples only to l±1, with the same angular factors as
// the unit vector and radial operators d/dr - l/r (up) and d/dr + (l+1)/r (down).
CVec3 momentum_matrix(const BoundState& a, const BoundState& b) {
  if (std::abs(a.l() - b.l()) != 1) return CVec3::Zero();
  const CVec3 angular = direction_element(a.l(), a.m(), b.l(), b.m());
  if (angular.isZero(0.0)) return CVec3::Zero();
  const double shift = a.l() == b.l() + 1 ? -double(b.l()) : double(b.l() + 1);
  return cplx(0.0, -1.0) * radial_gradient_integral(a, b, shift) * angular;
}

std::vector<cplx> moment_tensor(const BoundState& a, const BoundState& b, int rank) {
  std::size_t size = 1;
  for (int k = 0; k < rank; ++k) size *= 3;
  std::vector<cplx> out(size, 0.0);
  if ((a.l() + b.l() + rank) % 2 != 0 || std::abs(a.l() - b.l()) > rank) return out;
  const double radial = radial_integral(a, b, rank);
  for (std::size_t flat = 0; flat < size; ++flat) {
    std::size_t rest = flat;
    std::vector<int> axes(rank);
    for (int k = rank - 1; k >= 0; --k) {
      axes[k] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    out[flat] = radial * angular_integral(a.l(), a.m(), b.l(), b.m(), [&](const Vec3& n) {
      double p = 1.0;
      for (int axis : axes) p *= n(axis);
      return cplx(p);
    });
  }
  return out;
}

Eigen::Matrix3cd quadrupole_matrix(const BoundState& a, const BoundState& b) {
  const auto flat = moment_tensor(a, b, 2);
  Eigen::Matrix3cd q;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) q(i, j) = flat[3 * i + j];
  return q;
}

}  // namespace bsl::atoms
