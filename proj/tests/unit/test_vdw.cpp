#include <doctest.h>

#include <cmath>

#include "boundstate/atoms/radial_grid.hpp"
#include "boundstate/error.hpp"
#include "boundstate/vdw/coupling.hpp"
#include "boundstate/vdw/dispersion.hpp"

using namespace bsl;
using namespace bsl::atoms;
using namespace bsl::vdw;

namespace {

const AtomModel hydrogen = AtomModel::hydrogen();

const PseudoSpectrum& spectrum() {
  static const PseudoSpectrum instance(hydrogen, 2);
  return instance;
}

double inverse_distance(const Vec3& r) { return 1.0 / r.norm(); }

}  // namespace

TEST_CASE("derivative tensors of 1/R against closed forms and finite differences") {
  const Vec3 R(1.3, -0.4, 2.1);
  const double r = R.norm();
  const auto d1 = derivative_tensor(1, R);
  for (int i = 0; i < 3; ++i) CHECK(d1[i] == doctest::Approx(-R[i] / std::pow(r, 3)).epsilon(1e-13));
  const auto d2 = derivative_tensor(2, R);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(d2[3 * i + j] ==
            doctest::Approx((3 * R[i] * R[j] - (i == j) * r * r) / std::pow(r, 5)).epsilon(1e-12));
  const auto d3 = derivative_tensor(3, R);
  const double h = 1e-4;
  for (int k = 0; k < 3; ++k) {
    Vec3 step = Vec3::Zero();
    step[k] = h;
    const auto up = derivative_tensor(2, R + step), down = derivative_tensor(2, R - step);
    for (int ij = 0; ij < 9; ++ij) CHECK(d3[ij * 3 + k] == doctest::Approx((up[ij] - down[ij]) / (2 * h)).epsilon(1e-6));
  }
  CHECK(derivative_tensor(0, R)[0] == doctest::Approx(inverse_distance(R)));
}

TEST_CASE("dipole-dipole interaction matches its explicit form") {
  const CVec3 d1(cplx(0.3, 0.1), 0.5, -0.2), d2(0.1, cplx(0, -0.7), 0.4);
  const Vec3 x(0.5, 1.0, -3.0);
  const double r = x.norm();
  const cplx expected = (r * r * dot(d1, d2) - 3.0 * dot(x.cast<cplx>(), d1) * dot(x.cast<cplx>(), d2)) / std::pow(r, 5);
  CHECK(std::abs(dipole_dipole(d1, d2, x) - expected) < 1e-15);
}

TEST_CASE("two ground-state atoms have no first-order interaction") {
  const auto s1 = analytic_state(hydrogen, {1, 0, 0});
  for (int order : {1, 2}) CHECK(std::abs(coupling(s1, s1, s1, s1, hydrogen, Vec3(0.2, 0.3, 12.0), order)) < 1e-14);
  const auto [direct, exchange] = first_order_energy(s1, s1, Vec3(0, 0, 10), hydrogen);
  CHECK(std::abs(direct) < 1e-14);
  CHECK(std::abs(exchange) < 1e-14);
}

TEST_CASE("1s-2p0 resonant exchange is the dipole-dipole energy of the transition dipole") {
  const auto s1 = analytic_state(hydrogen, {1, 0, 0});
  const auto p0 = analytic_state(hydrogen, {2, 1, 0});
  const double d = 128.0 * std::sqrt(2.0) / 243.0;
  const auto [direct_z, exchange_z] = first_order_energy(s1, p0, Vec3(0, 0, 10), hydrogen);
  CHECK(std::abs(direct_z) < 1e-14);
  CHECK(exchange_z == doctest::Approx(-2.0 * d * d / 1000.0).epsilon(1e-10));
  const auto [direct_x, exchange_x] = first_order_energy(s1, p0, Vec3(10, 0, 0), hydrogen);
  CHECK(exchange_x == doctest::Approx(d * d / 1000.0).epsilon(1e-10));
}

TEST_CASE("C6 of two hydrogen atoms from the pseudo-spectrum") {
  const auto g = spectrum().state(0, 0);
  const auto basis = spectrum_basis(spectrum());
  const DispersionSum sum(g, g, hydrogen, basis);
  const auto r = sum(Vec3(0, 0, 30));
  CHECK(r.C6 == doctest::Approx(6.499).epsilon(0.01));
  CHECK(r.all_denominators_negative);
  CHECK(r.excluded.empty());
  CHECK(r.E2 < 0.0);
  // Pure dipole-dipole: E2 R⁶ is the same at every separation and in every direction.
  const double far = sum(Vec3(0, 0, 90), 0).E2 * std::pow(90.0, 6);
  CHECK(-far == doctest::Approx(r.C6).epsilon(1e-12));
  const Vec3 oblique = Vec3(1, 2, -2).normalized() * 30.0;
  CHECK(sum(oblique, 0).E2 == doctest::Approx(r.E2).epsilon(1e-10));
  CHECK(isotropic_c6(g, g, hydrogen, basis) == doctest::Approx(r.C6).epsilon(1e-10));
}

TEST_CASE("factorised sum equals the explicit coupling-matrix route") {
  const auto g = spectrum().state(0, 0);
  const auto small = spectrum_basis(spectrum(), 2.0);
  const Vec3 R(1.0, -1.0, 11.0);
  const double route = matrix_route_energy(g, g, R, hydrogen, small);
  CHECK(second_order_energy(g, g, R, hydrogen, small).E2 == doctest::Approx(route).epsilon(1e-10));
}

TEST_CASE("dipole-quadrupole terms add C8/R⁸ with the hydrogen value") {
  const auto g = spectrum().state(0, 0);
  const auto basis = spectrum_basis(spectrum());
  DispersionOptions quad;
  quad.order = 2;
  const DispersionSum dipole(g, g, hydrogen, basis), full(g, g, hydrogen, basis, quad);
  for (double R : {30.0, 60.0}) {
    const double c8 = -(full(Vec3(0, 0, R), 0).E2 - dipole(Vec3(0, 0, R), 0).E2) * std::pow(R, 8);
    CHECK(c8 == doctest::Approx(124.399).epsilon(0.01));
  }
}

TEST_CASE("bound-only intermediate states recover part of C6, growing with n_max") {
  const auto s1 = analytic_state(hydrogen, {1, 0, 0});
  double previous = 0.0;
  for (int n = 2; n <= 10; n += 2) {
    const double c6 = second_order_energy(s1, s1, Vec3(0, 0, 20), hydrogen, discrete_basis(hydrogen, n, 1)).C6;
    CHECK(c6 > previous);
    CHECK(c6 < 6.499);
    previous = c6;
  }
}

TEST_CASE("separation and degeneracy guards") {
  const auto s1 = analytic_state(hydrogen, {1, 0, 0});
  const auto p0 = analytic_state(hydrogen, {2, 1, 0});
  const auto basis = discrete_basis(hydrogen, 4, 2);
  CHECK_THROWS_AS(second_order_energy(s1, s1, Vec3(0, 0, 2), hydrogen, basis), SeparationTooSmall);
  const auto r = second_order_energy(s1, p0, Vec3(0, 0, 40), hydrogen, basis);
  CHECK_FALSE(r.excluded.empty());
  DispersionOptions strict;
  strict.refuse_degenerate = true;
  CHECK_THROWS_AS(second_order_energy(s1, p0, Vec3(0, 0, 40), hydrogen, basis, strict), DegenerateDenominator);
}

TEST_CASE("effective potential table is attractive with a flat R⁶ plateau") {
  const auto g = spectrum().state(0, 0);
  const auto table = effective_potential(g, hydrogen, spectrum_basis(spectrum()), {10, 20, 40, 80});
  for (double v : table.V) CHECK(v < 0.0);
  CHECK(table.plateau_spread < 1e-3);
}
