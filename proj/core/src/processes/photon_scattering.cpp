#include "boundstate/processes/photon_scattering.hpp"

#include <cmath>
#include <set>

#include "boundstate/atoms/matrix_elements.hpp"
#include "boundstate/error.hpp"
#include "boundstate/processes/emission.hpp"
#include "boundstate/quadrature.hpp"

namespace bsl::processes {

PhotonScattering::PhotonScattering(const BoundState& alpha, const BoundState& alpha_prime, const AtomModel& model,
                                   const std::vector<BoundState>& intermediates, ScatteringOptions options)
    : alpha_energy_(alpha.energy),
      alpha_prime_energy_(alpha_prime.energy),
      contact_charge_(model.contact_charge()),
      elastic_(alpha.label == alpha_prime.label),
      options_(options) {
  channels_.reserve(intermediates.size());
  for (const BoundState& beta : intermediates) {
    const CVec3 out = atoms::dipole_matrix(alpha_prime, beta, model);
    const CVec3 in = atoms::dipole_matrix(beta, alpha, model);
    if (out.isZero(0.0) || in.isZero(0.0)) continue;
    channels_.push_back(Channel{beta.energy, out * in.transpose()});
  }
}

cplx PhotonScattering::denominator(double value) const {
  if (options_.width) return cplx(value, *options_.width);
  if (std::abs(value) < options_.resonance_guard)
    throw ResonanceHit("photon energy within " + std::to_string(options_.resonance_guard) +
                       " Hartree of an intermediate level; set a width to regularize");
  return value;
}

cplx PhotonScattering::absorption_first(double freq, const CVec3& a, const CVec3& b) const {
  cplx sum = 0.0;
  for (const Channel& ch : channels_)
    sum += cplx(b.transpose() * ch.product * a) / denominator(freq + alpha_energy_ - ch.energy);
  return sum;
}

cplx PhotonScattering::emission_first(double freq, const CVec3& a, const CVec3& b) const {
  cplx sum = 0.0;
  for (const Channel& ch : channels_)
    sum += cplx(a.transpose() * ch.product * b) / denominator(-freq + alpha_energy_ - ch.energy);
  return sum;
}

ScatteringKernel PhotonScattering::operator()(double omega, const CVec3& e, const CVec3& e_out) const {
  ScatteringKernel k;
  k.omega = omega;
  k.omega_out = outgoing_frequency(omega);
  if (!(omega > 0.0) || !(k.omega_out > 0.0))
    throw ValidationError("scattering needs positive incoming and outgoing photon energies");
  const CVec3 e_out_conj = e_out.conjugate();
  const cplx overlap = dot(e, e_out_conj);
  k.contact = elastic_ ? contact_charge_ * overlap : cplx(0.0);

  // The velocity-form sum equals the length-form sum times omega omega' plus a
  // commutator that cancels the contact term; use the exact cancellation and
  // keep the basis value as a diagnostic.
  const cplx length_sum = absorption_first(omega, e, e_out_conj) + emission_first(k.omega_out, e, e_out_conj);
  cplx commutator = 0.0;
  for (const Channel& ch : channels_) {
    commutator += (alpha_energy_ - ch.energy - k.omega_out) * cplx(e_out_conj.transpose() * ch.product * e) +
                  (k.omega_out + alpha_prime_energy_ - ch.energy) * cplx(e.transpose() * ch.product * e_out_conj);
  }
  k.commutator_sum = commutator;
  k.second_order = -k.contact + omega * k.omega_out * length_sum;
  k.amplitude = k.contact + k.second_order;
  k.cross_section = k.omega_out / omega * std::norm(k.amplitude) / std::pow(speed_of_light, 4);
  return k;
}

double PhotonScattering::total_cross_section(double omega, const CVec3& e, int polar_nodes, int azimuth_nodes) const {
  const SphereRule rule = sphere_rule(polar_nodes, azimuth_nodes);
  double total = 0.0;
  for (std::size_t p = 0; p < rule.directions.size(); ++p) {
    const auto [e1, e2] = transverse_polarizations(rule.directions[p]);
    total += rule.weights[p] * ((*this)(omega, e, e1.cast<cplx>()).cross_section +
                                (*this)(omega, e, e2.cast<cplx>()).cross_section);
  }
  return total;
}

std::vector<BoundState> dipole_intermediates(const atoms::PseudoSpectrum& basis, const BoundState& alpha,
                                             const BoundState& alpha_prime) {
  std::set<int> ls;
  for (int l : {alpha.l(), alpha_prime.l()})
    for (int step : {-1, 1})
      if (l + step >= 0) ls.insert(l + step);
  std::vector<BoundState> out;
  for (int l : ls) {
    if (l > basis.l_max())
      throw ValidationError("pseudo-spectrum lacks the l = " + std::to_string(l) + " channel");
    auto states = basis.states(l, true);
    out.insert(out.end(), std::make_move_iterator(states.begin()), std::make_move_iterator(states.end()));
  }
  return out;
}

}  // namespace bsl::processes
