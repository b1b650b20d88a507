#include "boundstate/fock/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "boundstate/error.hpp"

namespace bsl::fock {

PairPotential PairPotential::square_well(int sites, double depth, int width) {
  PairPotential p;
  const int n = sites / 2 + 1;
  p.v11.assign(n, 0.0);
  p.v22.assign(n, 0.0);
  p.v12.assign(n, 0.0);
  for (int d = 0; d <= std::min(width, n - 1); ++d) p.v12[d] = -depth;
  return p;
}

void LatticeConfig::validate() const {
  if (sites < 2 || sites % 2 != 0) throw ValidationError("lattice needs an even number of sites");
  if (sites > 30) throw ValidationError("lattice limited to 30 sites");
  if (mass1 < 1 || mass2 < 1) throw ValidationError("lattice masses must be positive integers");
  if (separation_a < 1) throw ValidationError("separation_a must be at least 1");
  const std::size_t n = static_cast<std::size_t>(sites / 2 + 1);
  if (potential.v11.size() != n || potential.v22.size() != n || potential.v12.size() != n)
    throw ValidationError("pair potential tables need L/2 + 1 entries");
}

CellGeometry::CellGeometry(const LatticeConfig& config)
    : sites_(config.sites), mass1_(config.mass1), total_(config.total_mass()) {}

int CellGeometry::offset(int x, int x_prime) const {
  int y = wrap(x - x_prime);
  if (y > sites_ / 2) y -= sites_;
  return y;
}

int CellGeometry::distance(int x, int x_prime) const { return std::abs(offset(x, x_prime)); }

std::vector<int> CellGeometry::offsets() const {
  std::vector<int> out;
  for (int y = -sites_ / 2 + 1; y <= sites_ / 2; ++y) out.push_back(y);
  return out;
}

namespace {
int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
}  // namespace

std::pair<int, int> CellGeometry::constituents(int centre, int y) const {
  const int x2 = wrap(centre - floor_div(mass1_ * y, total_));
  return {wrap(x2 + y), x2};
}

std::pair<int, int> CellGeometry::cell(int x1, int x2) const {
  const int y = offset(x1, x2);
  return {wrap(x2 + floor_div(mass1_ * y, total_)), y};
}

PairSpectrum solve_pair_problem(const LatticeConfig& config, double threshold) {
  config.validate();
  const CellGeometry geo(config);
  const auto ys = geo.offsets();
  const int n = static_cast<int>(ys.size());
  const double hop = 1.0 / (2.0 * config.reduced_mass());

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = 2.0 * hop + config.potential.v12[std::abs(ys[i])];
    const int j = geo.offset_index(geo.offset(ys[i] + 1, 0));
    h(i, j) -= hop;
    h(j, i) -= hop;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);

  PairSpectrum out;
  out.sites = config.sites;
  out.threshold = threshold;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd v = solver.eigenvectors().col(k);
    Eigen::Index peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    if (v(peak) < 0.0) v = -v;
    out.states.push_back(PairState{k, solver.eigenvalues()(k), std::vector<double>(v.data(), v.data() + n)});
    if (solver.eigenvalues()(k) < 0.0) ++out.bound_count;
  }
  if (out.bound_count == 0)
    throw NoBoundState("lowest pair energy " + std::to_string(out.states.front().energy) + " is not negative");

  // Envelope of the ground state: largest |φ| at or beyond each distance.
  const auto& ground = out.states.front().wavefunction;
  const int half = config.sites / 2;
  std::vector<double> envelope(half + 1, 0.0);
  for (int i = 0; i < n; ++i) envelope[std::abs(ys[i])] = std::max(envelope[std::abs(ys[i])], std::abs(ground[i]));
  for (int d = half - 1; d >= 0; --d) envelope[d] = std::max(envelope[d], envelope[d + 1]);
  const double top = envelope[0];
  out.overlap_radius = half;
  for (int d = 1; d <= half; ++d) {
    const double hi = envelope[d - 1] / top, lo = envelope[d] / top;
    if (lo < threshold) {
      out.overlap_radius =
          lo > 0.0 ? (d - 1) + std::log(hi / threshold) / std::log(hi / lo) : static_cast<double>(d);
      break;
    }
  }
  return out;
}

void check_hierarchy(const LatticeConfig& config, const PairSpectrum& spectrum) {
  if (!(config.separation_a > spectrum.overlap_radius))
    throw SeparationViolated("separation_a = " + std::to_string(config.separation_a) +
                             " does not exceed the bound-state radius " + std::to_string(spectrum.overlap_radius));
}

}  // namespace bsl::fock
