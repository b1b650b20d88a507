#pragma once

#include <functional>

#include <Eigen/Core>

#include "boundstate/atoms/states.hpp"
#include "boundstate/units.hpp"

namespace bsl::processes {

using atoms::AtomModel;
using atoms::BoundState;

// Infinite: the photon carries the whole level spacing. Finite: the atom
// recoils with p = omega/c and the photon energy drops accordingly.
enum class MassMode { infinite, finite };

// Dipole: |e·d|. Form factor: the full current form factor at the photon wavevector.
enum class EmissionForm { dipole, form_factor };

struct EmissionOptions {
  MassMode mass = MassMode::infinite;
  EmissionForm form = EmissionForm::dipole;
  Eigen::Matrix3d frame = Eigen::Matrix3d::Identity();  // orientation of the direction quadrature
  int polar_nodes = 16;
  int azimuth_nodes = 32;
};

struct TransitionResult {
  atoms::StateLabel initial;
  atoms::StateLabel final_state;
  double omega = 0.0;      // photon energy (Hartree)
  double rate_au = 0.0;    // total rate summed over polarizations and directions
  double rate_per_s = 0.0;
  double quadrature_rate_au = 0.0;  // direction integral of `differential`
  // Rate per unit solid angle into direction n, summed over both polarizations.
  std::function<double(const Vec3&)> differential;
};

// Two real unit vectors orthogonal to each other and to `direction`.
std::pair<Vec3, Vec3> transverse_polarizations(const Vec3& direction);

// Photon energy for a level spacing `gap` emitted by an atom of total mass M.
double photon_energy(double gap, const AtomModel& model, MassMode mass);

TransitionResult emission_rate(const BoundState& initial, const BoundState& final_state, const AtomModel& model,
                               const EmissionOptions& options = {});

// Sum of emission_rate over the final magnetic sublevels of shell (n, l).
double shell_emission_rate(const BoundState& initial, int final_n, int final_l, const AtomModel& model,
                           const EmissionOptions& options = {});

}  // namespace bsl::processes
