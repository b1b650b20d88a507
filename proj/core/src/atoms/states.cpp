#include "boundstate/atoms/states.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "boundstate/atoms/radial_grid.hpp"
#include "boundstate/error.hpp"

namespace bsl::atoms {

namespace {

constexpr std::string_view letters = "spdfghik";

double analytic_norm(int n, int l, double scale) {
  const double k = 2.0 * scale / n;
  const double log_ratio = std::lgamma(n - l) - std::lgamma(n + l + 1) - std::log(2.0 * n);
  return std::pow(k, 1.5) * std::exp(0.5 * log_ratio);
}

class AnalyticSampler final : public RadialSampler {
 public:
  explicit AnalyticSampler(AnalyticRadial a) : a_(a), norm_(analytic_norm(a.n, a.l, a.scale)) {}

  double value(double r) const override {
    const double rho = 2.0 * a_.scale * r / a_.n;
    return norm_ * std::exp(-0.5 * rho) * std::pow(rho, a_.l) * laguerre(a_.n - a_.l - 1, rho);
  }

  double derivative(double r) const override {
    const double k = 2.0 * a_.scale / a_.n;
    const double rho = k * r;
    const int deg = a_.n - a_.l - 1;
    const double lag = laguerre(deg, rho);
    const double dlag = deg > 0 ? -std::assoc_laguerre(deg - 1, 2 * a_.l + 2, rho) : 0.0;
    double inner = std::pow(rho, a_.l) * (dlag - 0.5 * lag);
    if (a_.l > 0) inner += a_.l * std::pow(rho, a_.l - 1) * lag;
    return k * norm_ * std::exp(-0.5 * rho) * inner;
  }

 private:
  double laguerre(int deg, double x) const { return std::assoc_laguerre(deg, 2 * a_.l + 1, x); }
  AnalyticRadial a_;
  double norm_;
};

class GridSampler final : public RadialSampler {
 public:
  explicit GridSampler(const GridRadial& g) {
    const RadialGrid& grid = *g.channel->grid;
    std::vector<double> u(grid.size() + 2, 0.0);
    for (int i = 0; i < grid.size(); ++i) u[i + 1] = g.channel->u(i, g.column);
    x0_ = std::log(grid.r_min()) - grid.step();
    x1_ = std::log(grid.r_max()) + grid.step();
    spline_ = boost::math::interpolators::cardinal_cubic_b_spline<double>(u.begin(), u.end(), x0_, grid.step(),
                                                                          0.0, 0.0);
  }

  double value(double r) const override {
    const double x = std::log(r);
    if (x <= x0_ || x >= x1_) return 0.0;
    return spline_(x) / r;
  }

  double derivative(double r) const override {
    const double x = std::log(r);
    if (x <= x0_ || x >= x1_) return 0.0;
    // u' = u_x / r and R' = (u' - u/r)/r.
    return (spline_.prime(x) - spline_(x)) / (r * r);
  }

 private:
  double x0_, x1_;
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline_;
};

}  // namespace

std::string StateLabel::str() const {
  std::string s = std::to_string(n);
  s += l < static_cast<int>(letters.size()) ? std::string(1, letters[l]) : "[l" + std::to_string(l) + "]";
  if (l > 0) s += (m > 0 ? "+" : "") + std::to_string(m);
  return s;
}

StateLabel StateLabel::parse(const std::string& text) {
  std::size_t pos = 0;
  StateLabel label;
  try {
    label.n = std::stoi(text, &pos);
  } catch (const std::exception&) {
    throw ParseError("state label '" + text + "' must start with a principal number");
  }
  if (pos >= text.size()) throw ParseError("state label '" + text + "' lacks an orbital letter");
  const auto letter = letters.find(static_cast<char>(std::tolower(text[pos])));
  if (letter == std::string_view::npos) throw ParseError("unknown orbital letter in '" + text + "'");
  label.l = static_cast<int>(letter);
  ++pos;
  if (pos < text.size()) {
    try {
      std::size_t used = 0;
      label.m = std::stoi(text.substr(pos), &used);
      if (pos + used != text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("bad magnetic number in '" + text + "'");
    }
  }
  if (label.n < 1 || label.l >= label.n || std::abs(label.m) > label.l)
    throw ParseError("inadmissible quantum numbers in '" + text + "'");
  return label;
}

std::unique_ptr<RadialSampler> RadialFunction::sampler() const {
  if (analytic()) return std::make_unique<AnalyticSampler>(as_analytic());
  return std::make_unique<GridSampler>(as_grid());
}

std::vector<double> RadialFunction::on_grid(const RadialGrid& grid) const {
  std::vector<double> u(grid.size());
  if (!analytic() && as_grid().channel->grid.get() == &grid) {
    for (int i = 0; i < grid.size(); ++i) u[i] = as_grid().channel->u(i, as_grid().column);
    return u;
  }
  const auto s = sampler();
  for (int i = 0; i < grid.size(); ++i) u[i] = grid.r(i) * s->value(grid.r(i));
  return u;
}

double hydrogenic_energy(const AtomModel& model, int n) {
  const double kappa = model.coupling();
  return -model.reduced_mass() * kappa * kappa / (2.0 * n * n);
}

BoundState analytic_state(const AtomModel& model, StateLabel label) {
  if (label.n < 1 || label.l < 0 || label.l >= label.n || std::abs(label.m) > label.l)
    throw ValidationError("inadmissible quantum numbers " + label.str());
  const double energy = hydrogenic_energy(model, label.n);
  return BoundState{label, energy, RadialFunction(AnalyticRadial{label.n, label.l, model.inverse_length()}),
                    std::sqrt(2.0 * model.reduced_mass() * std::abs(energy))};
}

std::vector<BoundState> solve_hydrogenic(const AtomModel& model, int n_max, int l_max, RadialMode mode,
                                         const GridOptions& options) {
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  if (l_max < 0 || l_max >= n_max) throw ValidationError("l_max must satisfy 0 <= l_max < n_max");

  std::vector<std::shared_ptr<const RadialChannel>> channels;
  if (mode == RadialMode::grid) {
    auto grid = std::make_shared<const RadialGrid>(options);
    for (int l = 0; l <= l_max; ++l) channels.push_back(diagonalize_channel(model, grid, l, n_max - l));
  }

  std::vector<BoundState> out;
  for (int n = 1; n <= n_max; ++n) {
    for (int l = 0; l <= std::min(l_max, n - 1); ++l) {
      for (int m = -l; m <= l; ++m) {
        if (mode == RadialMode::analytic) {
          out.push_back(analytic_state(model, {n, l, m}));
          continue;
        }
        const auto& channel = channels[l];
        const int k = n - l - 1;
        const double exact = hydrogenic_energy(model, n);
        const double energy = channel->energies.at(k);
        if (std::abs(energy - exact) > options.tolerance * std::abs(exact))
          throw GridTooCoarse("grid level " + StateLabel{n, l, m}.str() + " = " + std::to_string(energy) +
                              " deviates from " + std::to_string(exact) + " beyond relative " +
                              std::to_string(options.tolerance));
        out.push_back(BoundState{{n, l, m}, energy, RadialFunction(GridRadial{channel, k}),
                                 std::sqrt(2.0 * model.reduced_mass() * std::abs(energy))});
      }
    }
  }
  return out;
}

namespace {

// u(r) on a dense log grid wide enough for any bound state we handle.
std::pair<std::vector<double>, std::vector<double>> dense_profile(const BoundState& state) {
  if (!state.radial.analytic()) {
    const auto& g = state.radial.as_grid();
    return {g.channel->grid->r(), state.radial.on_grid(*g.channel->grid)};
  }
  const auto& a = state.radial.as_analytic();
  const double extent = 60.0 * a.n * a.n / a.scale;
  RadialGrid grid(1e-6 / a.scale, extent, 20000);
  return {grid.r(), state.radial.on_grid(grid)};
}

}  // namespace

double mass_radius(const BoundState& state, double fraction) {
  const auto [r, u] = dense_profile(state);
  double total = 0.0;
  std::vector<double> cumulative(r.size(), 0.0);
  for (std::size_t i = 1; i < r.size(); ++i) {
    total += 0.5 * (u[i] * u[i] + u[i - 1] * u[i - 1]) * (r[i] - r[i - 1]);
    cumulative[i] = total;
  }
  const double target = fraction * total;
  const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), target);
  if (it == cumulative.end()) return r.back();
  const auto i = static_cast<std::size_t>(it - cumulative.begin());
  if (i == 0) return r.front();
  const double t = (target - cumulative[i - 1]) / (cumulative[i] - cumulative[i - 1]);
  return r[i - 1] + t * (r[i] - r[i - 1]);
}

double bohr_radius(const BoundState& state, const AtomModel& model) {
  return state.label.n * state.label.n / model.inverse_length();
}

int node_count(const BoundState& state) {
  const auto [r, u] = dense_profile(state);
  double peak = 0.0;
  for (double v : u) peak = std::max(peak, std::abs(v));
  int nodes = 0;
  int sign = 0;
  for (double v : u) {
    if (std::abs(v) < 1e-6 * peak) continue;
    const int s = v > 0 ? 1 : -1;
    if (sign != 0 && s != sign) ++nodes;
    sign = s;
  }
  return nodes;
}

}  // namespace bsl::atoms
