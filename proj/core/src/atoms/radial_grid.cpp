#include "boundstate/atoms/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <lapacke.h>

#include "boundstate/error.hpp"

namespace bsl::atoms {

namespace {
constexpr lapack_int inverse_iteration_limit = 64;
}  // namespace

RadialGrid::RadialGrid(double r_min, double r_max, int points) {
  if (!(r_min > 0.0) || !(r_max > r_min) || points < 16)
    throw ValidationError("radial grid needs 0 < r_min < r_max and at least 16 points");
  h_ = std::log(r_max / r_min) / (points - 1);
  r_.resize(points);
  for (int i = 0; i < points; ++i) r_[i] = r_min * std::exp(i * h_);
}

// With r = e^x and u = sqrt(r) w the radial equation becomes the symmetric
// generalized problem  -(w'' - w/4)/(2mu) + (r^2 V_l) w = E r^2 w, which the
// substitution z = r w turns into a symmetric tridiagonal eigenproblem.
std::shared_ptr<const RadialChannel> diagonalize_channel(const AtomModel& model,
                                                         std::shared_ptr<const RadialGrid> grid, int l, int count,
                                                         std::optional<double> max_energy) {
  const int n = grid->size();
  const double h = grid->step();
  const double mu = model.reduced_mass();
  const double kappa = model.coupling();
  const double centrifugal = (l + 0.5) * (l + 0.5) / (2.0 * mu);

  std::vector<double> d(n), e(n > 1 ? n - 1 : 1);
  for (int i = 0; i < n; ++i) {
    const double r = grid->r(i);
    d[i] = (1.0 / (mu * h * h) + centrifugal - kappa * r) / (r * r);
    if (i + 1 < n) e[i] = -1.0 / (2.0 * mu * h * h) / (r * grid->r(i + 1));
  }

  const lapack_int wanted = count < 0 ? n : std::min<lapack_int>(count, n);
  auto channel = std::make_shared<RadialChannel>();
  channel->grid = grid;
  channel->l = l;
  lapack_int found = 0;
  std::vector<double> w(n);
  Eigen::MatrixXd z;

  if (!max_energy && wanted <= inverse_iteration_limit) {
    // A few low levels: bisection plus inverse iteration.
    lapack_int nsplit = 0;
    std::vector<lapack_int> iblock(n), isplit(n);
    const double abstol = 2.0 * LAPACKE_dlamch('S');
    lapack_int info = LAPACKE_dstebz('I', 'E', n, 0.0, 0.0, 1, wanted, abstol, d.data(), e.data(), &found, &nsplit,
                                     w.data(), iblock.data(), isplit.data());
    if (info != 0) throw NumericalError("tridiagonal bisection failed (info " + std::to_string(info) + ")");
    z.resize(n, found);
    std::vector<lapack_int> ifail(found);
    info = LAPACKE_dstein(LAPACK_COL_MAJOR, n, d.data(), e.data(), found, w.data(), iblock.data(), isplit.data(),
                          z.data(), n, ifail.data());
    if (info != 0) throw NumericalError("inverse iteration failed for " + std::to_string(info) + " eigenvectors");
  } else {
    // Inverse iteration reorthogonalizes whole clusters, which is cubic for a
    // long spectrum; MRRR yields orthogonal vectors directly.
    std::vector<double> dd = d, ee(n, 0.0);
    std::copy(e.begin(), e.begin() + (n - 1), ee.begin());
    const double floor = -2.0 * mu * kappa * kappa;  // below any level of the well
    const char range = max_energy ? 'V' : (wanted == n ? 'A' : 'I');
    const double upper = max_energy.value_or(0.0);
    lapack_int columns = max_energy ? n : wanted;
    z.resize(n, columns);
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
    lapack_logical tryrac = 1;
    const lapack_int info = LAPACKE_dstemr(LAPACK_COL_MAJOR, 'V', range, n, dd.data(), ee.data(), floor, upper, 1,
                                           wanted, &found, w.data(), z.data(), n, columns, support.data(), &tryrac);
    if (info != 0) throw NumericalError("MRRR eigensolver failed (info " + std::to_string(info) + ")");
    found = std::min(found, wanted);
    z.conservativeResize(n, found);
  }
  channel->energies.assign(w.begin(), w.begin() + found);

  // dstein returns unit vectors in z; Σ h z^2 = 1 fixes ∫u^2 dr = 1 and u = z/sqrt(r).
  const double scale = 1.0 / std::sqrt(h);
  for (int j = 0; j < found; ++j) {
    double peak = 0.0;
    for (int i = 0; i < n; ++i) peak = std::max(peak, std::abs(z(i, j)));
    double sign = 1.0;
    for (int i = 0; i < n; ++i) {
      if (std::abs(z(i, j)) > 1e-3 * peak) {
        sign = z(i, j) > 0 ? 1.0 : -1.0;
        break;
      }
    }
    for (int i = 0; i < n; ++i) z(i, j) *= sign * scale / std::sqrt(grid->r(i));
  }
  channel->u = std::move(z);
  return channel;
}

PseudoSpectrum::PseudoSpectrum(const AtomModel& model, int l_max, const GridOptions& options,
                               std::optional<double> max_energy)
    : model_(model), grid_(std::make_shared<const RadialGrid>(options)) {
  if (l_max < 0) throw ValidationError("l_max must be >= 0");
  for (int l = 0; l <= l_max; ++l) channels_.push_back(diagonalize_channel(model_, grid_, l, -1, max_energy));
}

BoundState PseudoSpectrum::state(int l, int k, int m) const {
  const auto& ch = channels_.at(l);
  if (k < 0 || k >= static_cast<int>(ch->energies.size())) throw ValidationError("pseudo-spectrum index out of range");
  if (std::abs(m) > l) throw ValidationError("|m| exceeds l");
  const double energy = ch->energies[k];
  const double decay = energy < 0.0 ? std::sqrt(-2.0 * model_.reduced_mass() * energy) : 0.0;
  return BoundState{{k + l + 1, l, m}, energy, RadialFunction(GridRadial{ch, k}), decay};
}

std::vector<BoundState> PseudoSpectrum::states(int l, bool all_m, std::optional<double> max_energy) const {
  std::vector<BoundState> out;
  const auto& ch = channels_.at(l);
  for (int k = 0; k < static_cast<int>(ch->energies.size()); ++k) {
    if (max_energy && ch->energies[k] > *max_energy) break;
    if (all_m) {
      for (int m = -l; m <= l; ++m) out.push_back(state(l, k, m));
    } else {
      out.push_back(state(l, k, 0));
    }
  }
  return out;
}

}  // namespace bsl::atoms
