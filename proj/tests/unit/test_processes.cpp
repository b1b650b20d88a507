#include <doctest.h>

#include <cmath>

#include "boundstate/atoms/radial_grid.hpp"
#include "boundstate/error.hpp"
#include "boundstate/processes/electron_scattering.hpp"
#include "boundstate/processes/emission.hpp"
#include "boundstate/processes/photon_scattering.hpp"
#include "boundstate/processes/polarizability.hpp"

using namespace bsl;
using namespace bsl::atoms;
using namespace bsl::processes;

namespace {

const AtomModel hydrogen = AtomModel::hydrogen();

// Einstein A for a z-polarised transition with dipole element d and gap omega.
double einstein_a_per_s(double omega, double d) {
  return 4.0 / 3.0 * std::pow(omega, 3) * d * d / std::pow(speed_of_light, 3) / atomic_time_s;
}

// ∫ R21 R10 j1(qr) r² dr by Simpson's rule; the 1s -> 2p0 charge form factor is i√3 times this.
double radial_bessel_2p_1s(double q) {
  const int n = 20000;
  const double top = 60.0, h = top / n;
  double sum = 0.0;
  for (int i = 1; i < n; ++i) {
    const double r = i * h;
    const double x = q * r;
    const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    const double value = 2.0 * std::exp(-r) * r * std::exp(-r / 2) / std::sqrt(24.0) * j1 * r * r;
    sum += value * (i % 2 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("2p -> 1s and 3p -> 1s rates match the closed-form dipole elements") {
  const auto s1 = analytic_state(hydrogen, {1, 0, 0});
  const auto p2 = analytic_state(hydrogen, {2, 1, 0});
  const auto p3 = analytic_state(hydrogen, {3, 1, 0});
  const auto r2 = emission_rate(p2, s1, hydrogen);
  CHECK(r2.omega == doctest::Approx(0.375));
  CHECK(r2.rate_per_s == doctest::Approx(einstein_a_per_s(0.375, 128.0 * std::sqrt(2.0) / 243.0)).epsilon(1e-10));
  CHECK(r2.rate_per_s == doctest::Approx(6.2683e8).epsilon(5e-3));
  CHECK(r2.quadrature_rate_au == doctest::Approx(r2.rate_au).epsilon(1e-10));
  const auto r3 = emission_rate(p3, s1, hydrogen);
  CHECK(r3.rate_per_s == doctest::Approx(einstein_a_per_s(4.0 / 9.0, 27.0 * std::sqrt(2.0) / 128.0)).epsilon(1e-10));
}

TEST_CASE("dipole-forbidden transitions have exactly zero rate") {
  const auto s1 = analytic_state(hydrogen, {1, 0, 0});
  CHECK(emission_rate(analytic_state(hydrogen, {2, 0, 0}), s1, hydrogen).rate_au == 0.0);
  CHECK(emission_rate(analytic_state(hydrogen, {3, 2, 1}), analytic_state(hydrogen, {2, 0, 0}), hydrogen).rate_au ==
        0.0);
}

TEST_CASE("the rate does not depend on the initial magnetic sublevel") {
  const auto s1 = analytic_state(hydrogen, {1, 0, 0});
  const double r0 = emission_rate(analytic_state(hydrogen, {2, 1, 0}), s1, hydrogen).rate_au;
  const double r1 = emission_rate(analytic_state(hydrogen, {2, 1, 1}), s1, hydrogen).rate_au;
  CHECK(r1 == doctest::Approx(r0).epsilon(1e-12));
  CHECK(shell_emission_rate(analytic_state(hydrogen, {2, 1, -1}), 1, 0, hydrogen) ==
        doctest::Approx(r0).epsilon(1e-12));
}

TEST_CASE("emission is upward-forbidden") {
  CHECK_THROWS_AS(emission_rate(analytic_state(hydrogen, {1, 0, 0}), analytic_state(hydrogen, {2, 1, 0}), hydrogen),
                  NotDownhill);
}

TEST_CASE("recoil lowers the photon energy by the kinetic energy of the atom") {
  const auto model = AtomModel::hydrogen_recoiling();
  const double gap = 0.375;
  const double omega = photon_energy(gap, model, MassMode::finite);
  const double mc2 = model.total_mass() * speed_of_light * speed_of_light;
  CHECK(omega < gap);
  CHECK(omega + omega * omega / (2.0 * mc2) == doctest::Approx(gap).epsilon(1e-15));
  CHECK(photon_energy(gap, model, MassMode::infinite) == gap);
}

TEST_CASE("the full form factor reduces to the dipole rate for a long wavelength") {
  const auto s1 = analytic_state(hydrogen, {1, 0, 0});
  const auto p2 = analytic_state(hydrogen, {2, 1, 0});
  EmissionOptions options;
  options.form = EmissionForm::form_factor;
  const double full = emission_rate(p2, s1, hydrogen, options).rate_au;
  const double dipole = emission_rate(p2, s1, hydrogen).rate_au;
  CHECK(full == doctest::Approx(dipole).epsilon(1e-4));
}

TEST_CASE("static polarizability: pseudo-spectrum sum and the 2p share") {
  const PseudoSpectrum spectrum(hydrogen, 1);
  CHECK(static_polarizability(spectrum.state(0, 0), spectrum) == doctest::Approx(4.5).epsilon(5e-3));
  const auto s1 = analytic_state(hydrogen, {1, 0, 0});
  const double d = 128.0 * std::sqrt(2.0) / 243.0;
  CHECK(static_polarizability(s1, {analytic_state(hydrogen, {2, 1, 0})}, hydrogen) ==
        doctest::Approx(2.0 * d * d / 0.375).epsilon(1e-12));
  std::vector<BoundState> discrete;
  double previous = 0.0;
  for (int n = 2; n <= 8; ++n) {
    discrete.push_back(analytic_state(hydrogen, {n, 1, 0}));
    const double value = static_polarizability(s1, discrete, hydrogen);
    CHECK(value > previous);
    CHECK(value < 4.5);
    previous = value;
  }
}

TEST_CASE("photon scattering: Rayleigh law, completeness and crossing") {
  const PseudoSpectrum spectrum(hydrogen, 1);
  const auto g = spectrum.state(0, 0);
  const PhotonScattering scattering(g, g, hydrogen, dipole_intermediates(spectrum, g, g));
  const CVec3 x(1, 0, 0), z(0, 0, 1);
  const double omega = 0.004;
  const double rayleigh = 8.0 * pi / 3.0 * 4.5 * 4.5 * std::pow(omega / speed_of_light, 4);
  CHECK(scattering.total_cross_section(omega, x) == doctest::Approx(rayleigh).epsilon(0.01));

  const auto k = scattering(omega, x, x);
  CHECK(std::abs(k.contact - cplx(1.0)) < 1e-14);
  CHECK(std::abs(k.commutator_sum + k.contact) < 1e-4);
  CHECK(std::abs(k.amplitude - (k.contact + k.second_order)) < 1e-14);
  // Orthogonal polarizations do not scatter into each other in the forward direction.
  CHECK(std::abs(scattering(omega, x, z).amplitude) < 1e-12);
  CHECK(std::abs(scattering.emission_first(-0.1, z, x) - scattering.absorption_first(0.1, x, z)) < 1e-14);
}

TEST_CASE("scattering refuses an on-shell intermediate state unless a width is given") {
  const auto s1 = analytic_state(hydrogen, {1, 0, 0});
  std::vector<BoundState> mids;
  for (int m = -1; m <= 1; ++m) mids.push_back(analytic_state(hydrogen, {2, 1, m}));
  const PhotonScattering strict(s1, s1, hydrogen, mids);
  CHECK_THROWS_AS(strict(0.375, CVec3(1, 0, 0), CVec3(1, 0, 0)), ResonanceHit);
  ScatteringOptions options;
  options.width = 1e-3;
  const PhotonScattering damped(s1, s1, hydrogen, mids, options);
  CHECK(std::isfinite(damped(0.375, CVec3(1, 0, 0), CVec3(1, 0, 0)).cross_section));
}

TEST_CASE("electron-atom amplitude: parity selection and Born limit") {
  const auto s1 = analytic_state(hydrogen, {1, 0, 0});
  const auto p0 = analytic_state(hydrogen, {2, 1, 0});
  const Vec3 q(0.2, -0.1, 0.3);
  CHECK(electron_atom_amplitude(s1, s1, q, hydrogen) == cplx(0.0));
  CHECK(std::abs(electron_atom_amplitude(s1, p0, q, hydrogen) + electron_atom_amplitude(s1, p0, -q, hydrogen)) ==
        0.0);
  CHECK_THROWS_AS(electron_atom_amplitude(s1, p0, Vec3::Zero(), hydrogen), ZeroMomentumTransfer);

  // Long-wave form: 4π i (q·d)/q² with d_z = 128√2/243.
  const Vec3 qz(0, 0, 0.1);
  const cplx expected(0.0, 4 * pi * 0.1 * 128.0 * std::sqrt(2.0) / 243.0 / 0.01);
  CHECK(std::abs(electron_atom_amplitude(s1, p0, qz, hydrogen) - expected) < 1e-10);

  for (double qm : {0.1, 0.8}) {
    const cplx born = electron_atom_born(s1, p0, Vec3(0, 0, qm), hydrogen);
    const cplx reference(0.0, 4 * pi * std::sqrt(3.0) * radial_bessel_2p_1s(qm) / (qm * qm));
    CHECK(std::abs(born - reference) < 1e-6 * std::abs(reference));
  }
}
