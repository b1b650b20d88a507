#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "boundstate/atoms/states.hpp"

namespace bsl::atoms {

// Logarithmic grid r_i = r_min e^{i h}, i = 0..points-1, with u = 0 imposed one
// step beyond either end.
class RadialGrid {
 public:
  RadialGrid(double r_min, double r_max, int points);
  explicit RadialGrid(const GridOptions& options) : RadialGrid(options.r_min, options.r_max, options.points) {}

  int size() const { return static_cast<int>(r_.size()); }
  double step() const { return h_; }
  double r_min() const { return r_.front(); }
  double r_max() const { return r_.back(); }
  const std::vector<double>& r() const { return r_; }
  double r(int i) const { return r_[i]; }
  // dr = r dx, so ∫ f dr ≈ Σ weight_i f_i.
  double weight(int i) const { return h_ * r_[i]; }

 private:
  double h_;
  std::vector<double> r_;
};

// Eigenpairs of one partial wave; column j of `u` holds u_j(r_i), normalised
// so that Σ weight_i u_ij^2 = 1.
struct RadialChannel {
  std::shared_ptr<const RadialGrid> grid;
  int l = 0;
  std::vector<double> energies;
  Eigen::MatrixXd u;
};

// Lowest `count` eigenpairs (all when count < 0), optionally only those below max_energy.
std::shared_ptr<const RadialChannel> diagonalize_channel(const AtomModel& model,
                                                         std::shared_ptr<const RadialGrid> grid, int l,
                                                         int count = -1,
                                                         std::optional<double> max_energy = std::nullopt);

// Finite-box spectrum per partial wave, continuum included, used for sums over states.
class PseudoSpectrum {
 public:
  PseudoSpectrum(const AtomModel& model, int l_max, const GridOptions& options = {},
                 std::optional<double> max_energy = std::nullopt);

  const AtomModel& model() const { return model_; }
  const RadialGrid& grid() const { return *grid_; }
  int l_max() const { return static_cast<int>(channels_.size()) - 1; }
  const RadialChannel& channel(int l) const { return *channels_.at(l); }
  int count(int l) const { return static_cast<int>(channels_.at(l)->energies.size()); }

  // Radial index k in channel l (k = 0 is the lowest), with magnetic number m.
  BoundState state(int l, int k, int m = 0) const;
  // Every state of channel l, optionally below an energy, with all m when `all_m`.
  std::vector<BoundState> states(int l, bool all_m = true,
                                 std::optional<double> max_energy = std::nullopt) const;

 private:
  AtomModel model_;
  std::shared_ptr<const RadialGrid> grid_;
  std::vector<std::shared_ptr<const RadialChannel>> channels_;
};

}  // namespace bsl::atoms
