#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "boundstate/atoms/radial_grid.hpp"
#include "boundstate/atoms/states.hpp"
#include "boundstate/units.hpp"

namespace bsl::processes {

using atoms::AtomModel;
using atoms::BoundState;

struct ScatteringOptions {
  double resonance_guard = 1e-4;   // refuse |denominator| below this (Hartree)
  std::optional<double> width;     // opt-in: add i*width to every denominator instead of refusing
};

struct ScatteringKernel {
  double omega = 0.0;
  double omega_out = 0.0;
  cplx contact;          // seagull amplitude, contact_charge (e·e'*) δ
  cplx second_order;     // intermediate-state amplitude, -contact + omega omega' Σ
  cplx amplitude;        // contact + second_order
  cplx commutator_sum;   // the velocity-to-length remainder summed over the basis; equals -contact when complete
  double cross_section = 0.0;  // dσ/dΩ for the given polarizations
};

// Second-order photon scattering alpha -> alpha_prime through a fixed set of
// intermediate states. Dipole products are precomputed once; each frequency
// then costs one pass over the intermediate energies.
class PhotonScattering {
 public:
  PhotonScattering(const BoundState& alpha, const BoundState& alpha_prime, const AtomModel& model,
                   const std::vector<BoundState>& intermediates, ScatteringOptions options = {});

  // Incoming photon (omega, e) scattered into polarization e_out.
  ScatteringKernel operator()(double omega, const CVec3& e, const CVec3& e_out) const;

  // Σ_β (b·d_α'β)(a·d_βα) / (freq + ε_α - ε_β): absorption first.
  cplx absorption_first(double freq, const CVec3& a, const CVec3& b) const;
  // Σ_β (a·d_α'β)(b·d_βα) / (-freq + ε_α - ε_β): emission first.
  cplx emission_first(double freq, const CVec3& a, const CVec3& b) const;

  // Total cross section over outgoing directions and polarizations for a fixed incoming polarization.
  double total_cross_section(double omega, const CVec3& e, int polar_nodes = 16, int azimuth_nodes = 32) const;

  double outgoing_frequency(double omega) const { return omega + alpha_energy_ - alpha_prime_energy_; }

 private:
  cplx denominator(double value) const;

  struct Channel {
    double energy;
    Eigen::Matrix3cd product;  // (d_α'β)_i (d_βα)_j
  };
  std::vector<Channel> channels_;
  double alpha_energy_, alpha_prime_energy_;
  double contact_charge_;
  bool elastic_;
  ScatteringOptions options_;
};

// Every l ± 1 state of the basis reachable from alpha and alpha_prime by a dipole step, all m.
std::vector<BoundState> dipole_intermediates(const atoms::PseudoSpectrum& basis, const BoundState& alpha,
                                             const BoundState& alpha_prime);

}  // namespace bsl::processes
