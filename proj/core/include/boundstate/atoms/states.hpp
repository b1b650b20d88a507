#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "boundstate/atoms/model.hpp"

namespace bsl::atoms {

struct StateLabel {
  int n = 1;
  int l = 0;
  int m = 0;

  // "1s", "2p0", "2p+1", "3d-2". Grid continuum states keep a running n.
  std::string str() const;
  static StateLabel parse(const std::string& text);
  friend bool operator==(const StateLabel&, const StateLabel&) = default;
};

class RadialGrid;
struct RadialChannel;

struct AnalyticRadial {
  int n;
  int l;
  double scale;  // inverse Bohr length mu*kappa
};

struct GridRadial {
  std::shared_ptr<const RadialChannel> channel;
  int column;
};

// Evaluates R(r) and R'(r) at arbitrary radii. Grid functions are interpolated
// with a cubic B-spline in ln r.
class RadialSampler {
 public:
  virtual ~RadialSampler() = default;
  virtual double value(double r) const = 0;
  virtual double derivative(double r) const = 0;
};

class RadialFunction {
 public:
  explicit RadialFunction(AnalyticRadial a) : rep_(a) {}
  explicit RadialFunction(GridRadial g) : rep_(std::move(g)) {}

  bool analytic() const { return std::holds_alternative<AnalyticRadial>(rep_); }
  const AnalyticRadial& as_analytic() const { return std::get<AnalyticRadial>(rep_); }
  const GridRadial& as_grid() const { return std::get<GridRadial>(rep_); }

  std::unique_ptr<RadialSampler> sampler() const;

  // u(r) = r R(r) at the points of `grid`.
  std::vector<double> on_grid(const RadialGrid& grid) const;

 private:
  std::variant<AnalyticRadial, GridRadial> rep_;
};

struct BoundState {
  StateLabel label;
  double energy;
  RadialFunction radial;
  double decay;  // sqrt(2 mu |energy|), the asymptotic exponent of R(r)

  int l() const { return label.l; }
  int m() const { return label.m; }
};

enum class RadialMode { analytic, grid };

struct GridOptions {
  double r_min = 1e-5;
  double r_max = 200.0;
  int points = 4000;
  double tolerance = 1e-4;  // relative deviation from -mu kappa^2/(2 n^2) allowed for bound levels
};

double hydrogenic_energy(const AtomModel& model, int n);
BoundState analytic_state(const AtomModel& model, StateLabel label);

// All (n, l, m) with n <= n_max and l <= l_max, ordered by n, l, m.
std::vector<BoundState> solve_hydrogenic(const AtomModel& model, int n_max, int l_max, RadialMode mode,
                                         const GridOptions& grid = {});

// Radius enclosing the given fraction of the probability (0.999 by default).
double mass_radius(const BoundState& state, double fraction = 0.999);

// Characteristic size n^2/(mu kappa) of the shell the state belongs to.
double bohr_radius(const BoundState& state, const AtomModel& model);

// Sign changes of u(r), ignoring the exponentially small tail.
int node_count(const BoundState& state);

}  // namespace bsl::atoms
