#include <doctest.h>

#include <cmath>

#include "boundstate/atoms/angular.hpp"
#include "boundstate/atoms/form_factors.hpp"
#include "boundstate/atoms/matrix_elements.hpp"
#include "boundstate/atoms/radial_grid.hpp"
#include "boundstate/atoms/states.hpp"
#include "boundstate/error.hpp"
#include "boundstate/quadrature.hpp"

using namespace bsl;
using namespace bsl::atoms;

namespace {

// Closed-form hydrogen expectation values for a static nucleus.
double mean_r(int n, int l) { return (3.0 * n * n - l * (l + 1)) / 2.0; }
double mean_r2(int n, int l) { return n * n * (5.0 * n * n + 1.0 - 3.0 * l * (l + 1)) / 2.0; }

}  // namespace

TEST_CASE("closed-form levels scale with the reduced mass") {
  CHECK(hydrogenic_energy(AtomModel::hydrogen(), 1) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(hydrogenic_energy(AtomModel::positronium(), 2) == doctest::Approx(-0.0625).epsilon(1e-15));
  const double mu = 1836.15267343 / 1837.15267343;
  CHECK(hydrogenic_energy(AtomModel::hydrogen_recoiling(), 3) == doctest::Approx(-mu / 18.0).epsilon(1e-12));
}

TEST_CASE("charge weights of the constituents") {
  const auto ps = AtomModel::positronium();
  CHECK(ps.reduced_mass() == doctest::Approx(0.5));
  CHECK(ps.dipole_charge() == doctest::Approx(1.0));
  CHECK(ps.contact_charge() == doctest::Approx(2.0));
  CHECK(ps.share1() == doctest::Approx(0.5));
  const auto h = AtomModel::hydrogen();
  CHECK(h.static_nucleus());
  CHECK(h.share2() == 0.0);
  CHECK(h.dipole_charge() == doctest::Approx(1.0));
}

TEST_CASE("state labels round-trip and reject inadmissible quantum numbers") {
  CHECK(StateLabel::parse("3d-2") == StateLabel{3, 2, -2});
  CHECK(StateLabel::parse("2p") == StateLabel{2, 1, 0});
  CHECK(StateLabel::parse(StateLabel{4, 3, 1}.str()) == StateLabel{4, 3, 1});
  CHECK_THROWS_AS(StateLabel::parse("1p"), ParseError);
  CHECK_THROWS_AS(StateLabel::parse("2p+2"), ParseError);
  CHECK_THROWS_AS(StateLabel::parse("s1"), ParseError);
  CHECK_THROWS_AS(StateLabel::parse("2x"), ParseError);
}

TEST_CASE("analytic radial functions reproduce closed-form moments") {
  const auto model = AtomModel::hydrogen();
  for (int n = 1; n <= 4; ++n) {
    for (int l = 0; l < n; ++l) {
      const auto s = analytic_state(model, {n, l, 0});
      CHECK(radial_integral(s, s, 0) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(radial_integral(s, s, 1) == doctest::Approx(mean_r(n, l)).epsilon(1e-10));
      CHECK(radial_integral(s, s, 2) == doctest::Approx(mean_r2(n, l)).epsilon(1e-10));
      CHECK(radial_integral(s, s, -1) == doctest::Approx(1.0 / (n * n)).epsilon(1e-10));
    }
  }
  const auto s1 = analytic_state(model, {1, 0, 0});
  const auto s2 = analytic_state(model, {2, 0, 0});
  CHECK(std::abs(radial_integral(s1, s2, 0)) < 1e-12);
}

TEST_CASE("grid levels agree with the Bohr formula") {
  const auto model = AtomModel::hydrogen();
  const auto states = solve_hydrogenic(model, 5, 2, RadialMode::grid);
  CHECK(states.size() == 1 + 4 + 9 + 9 + 9);
  for (const auto& s : states) {
    CHECK(std::abs(s.energy / (-0.5 / (s.label.n * s.label.n)) - 1.0) < 1e-4);
    CHECK(node_count(s) == s.label.n - s.label.l - 1);
  }
}

TEST_CASE("a coarse grid is reported rather than used") {
  GridOptions coarse;
  coarse.points = 300;
  CHECK_THROWS_AS(solve_hydrogenic(AtomModel::hydrogen(), 3, 1, RadialMode::grid, coarse), GridTooCoarse);
  CHECK_THROWS_AS(solve_hydrogenic(AtomModel::hydrogen(), 2, 2, RadialMode::analytic), ValidationError);
}

TEST_CASE("the 1s-2p dipole element on the grid matches 128√2/243") {
  const double exact = 128.0 * std::sqrt(2.0) / 243.0;
  const auto model = AtomModel::hydrogen();
  const auto s1 = analytic_state(model, {1, 0, 0});
  const auto p0 = analytic_state(model, {2, 1, 0});
  CHECK(position_matrix(s1, p0)[2].real() == doctest::Approx(exact).epsilon(1e-12));
  CHECK(std::abs(position_matrix(s1, p0)[0]) < 1e-14);

  const auto grid = solve_hydrogenic(model, 2, 1, RadialMode::grid);
  const auto& g1 = grid[0];
  const auto& g2 = grid[3];  // 1s, 2s, 2p-1, 2p0
  REQUIRE(g2.label == StateLabel{2, 1, 0});
  CHECK(std::abs(std::abs(position_matrix(g1, g2)[2]) - exact) < 1e-4);
}

TEST_CASE("transverse dipole components follow the m selection rule") {
  const auto model = AtomModel::hydrogen();
  const auto s1 = analytic_state(model, {1, 0, 0});
  const auto pp = analytic_state(model, {2, 1, 1});
  const CVec3 d = position_matrix(s1, pp);
  const double exact = 128.0 * std::sqrt(2.0) / 243.0 / std::sqrt(2.0);
  CHECK(std::abs(d[0]) == doctest::Approx(exact).epsilon(1e-12));
  CHECK(std::abs(d[1]) == doctest::Approx(exact).epsilon(1e-12));
  CHECK(std::abs(d[2]) < 1e-14);
}

TEST_CASE("momentum elements follow from the commutator with the Hamiltonian") {
  const auto model = AtomModel::hydrogen();
  const auto a = analytic_state(model, {3, 2, 1});
  const auto b = analytic_state(model, {2, 1, 0});
  const CVec3 p = momentum_matrix(a, b);
  const CVec3 r = position_matrix(a, b);
  const CVec3 rhs = cplx(0.0, a.energy - b.energy) * r;
  CHECK((p - rhs).norm() < 1e-10);
  CHECK(r.norm() > 0.1);
}

TEST_CASE("the 99.9% radius of 1s solves the closed-form enclosed probability") {
  // P(r) = 1 - e^{-2r}(1 + 2r + 2r²)
  double lo = 1.0, hi = 20.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double p = 1.0 - std::exp(-2 * mid) * (1 + 2 * mid + 2 * mid * mid);
    (p < 0.999 ? lo : hi) = mid;
  }
  const auto s1 = analytic_state(AtomModel::hydrogen(), {1, 0, 0});
  CHECK(mass_radius(s1) == doctest::Approx(lo).epsilon(1e-5));
  CHECK(bohr_radius(analytic_state(AtomModel::hydrogen(), {2, 1, 0}), AtomModel::hydrogen()) ==
        doctest::Approx(4.0));
}

TEST_CASE("spherical harmonics carry the Condon-Shortley phase") {
  const double theta = 0.7, phi = 1.3;
  CHECK(std::abs(spherical_harmonic(1, 0, theta, phi) - std::sqrt(3.0 / (4 * pi)) * std::cos(theta)) < 1e-14);
  const cplx y11 = -std::sqrt(3.0 / (8 * pi)) * std::sin(theta) * std::polar(1.0, phi);
  CHECK(std::abs(spherical_harmonic(1, 1, theta, phi) - y11) < 1e-14);
  CHECK(std::abs(direction_element(1, 0, 0, 0)[2] - 1.0 / std::sqrt(3.0)) < 1e-14);
  CHECK(std::abs(angular_integral(2, 1, 2, 1, [](const Vec3&) { return cplx(1.0); }) - 1.0) < 1e-12);
  CHECK(std::abs(angular_integral(2, 1, 3, 1, [](const Vec3&) { return cplx(1.0); })) < 1e-12);
}

TEST_CASE("quadrature rules integrate polynomials exactly") {
  const auto gl = gauss_legendre(8);
  double s = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * std::pow(gl.nodes[i], 14);
  CHECK(s == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
  const auto lag = gauss_laguerre(6);
  double f = 0.0;
  for (std::size_t i = 0; i < lag.nodes.size(); ++i) f += lag.weights[i] * std::pow(lag.nodes[i], 5);
  CHECK(f == doctest::Approx(120.0).epsilon(1e-12));
  const auto sphere = sphere_rule(8, 16);
  double area = 0.0;
  for (double w : sphere.weights) area += w;
  CHECK(area == doctest::Approx(4 * pi).epsilon(1e-13));
}

TEST_CASE("elastic 1s form factor equals 16/(4+k²)² minus the static charge") {
  const auto model = AtomModel::hydrogen();
  const auto s1 = analytic_state(model, {1, 0, 0});
  for (double k : {0.3, 1.0, 2.5}) {
    const auto f = form_factors(s1, s1, model, Vec3(0.0, 0.0, k));
    const double electron = 16.0 / std::pow(4.0 + k * k, 2);
    CHECK(std::abs(f.g - cplx(electron - 1.0)) < 1e-7);
    CHECK(std::abs(f.q - cplx(electron)) < 1e-7);
    CHECK(f.gvec.norm() < 1e-7);
  }
}

TEST_CASE("pseudo-spectrum states are orthonormal and include the continuum") {
  const PseudoSpectrum spectrum(AtomModel::hydrogen(), 1);
  CHECK(spectrum.count(0) > 100);
  CHECK(spectrum.state(0, 0).energy == doctest::Approx(-0.5).epsilon(1e-4));
  CHECK(spectrum.state(1, 0).energy == doctest::Approx(-0.125).epsilon(1e-4));
  CHECK(spectrum.channel(0).energies.back() > 1.0);
  const auto a = spectrum.state(1, 0), b = spectrum.state(1, 5);
  CHECK(radial_integral(a, a, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(radial_integral(a, b, 0)) < 1e-6);
}
