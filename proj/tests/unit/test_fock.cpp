#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "boundstate/error.hpp"
#include "boundstate/fock/auxiliary.hpp"
#include "boundstate/fock/checks.hpp"
#include "boundstate/fock/fock_space.hpp"

using namespace bsl;
using namespace bsl::fock;

namespace {

LatticeConfig ring(int sites, int separation, double depth, int width) {
  LatticeConfig c;
  c.sites = sites;
  c.separation_a = separation;
  c.potential = PairPotential::square_well(sites, depth, width);
  return c;
}

double binomial_sum(int n, int k_max) {
  double total = 0.0, c = 1.0;
  for (int k = 0; k <= k_max; ++k) {
    total += c;
    c = c * (n - k) / (k + 1);
  }
  return total;
}

Eigen::VectorXcd vacuum(const LatticeFockSpace& space) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dimension()));
  v(0) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("occupation bases have the combinatorial dimension") {
  CHECK(LatticeFockSpace(ring(2, 1, 8, 1), 1, 0).dimension() == 3);
  CHECK(LatticeFockSpace(ring(4, 1, 8, 1), 1, 1).dimension() == 25);
  CHECK(LatticeFockSpace(ring(6, 1, 8, 1), 2, 2).dimension() == 484);
  const double d = binomial_sum(10, 3);
  CHECK(LatticeFockSpace(ring(10, 2, 8, 1), 3, 3).dimension() == static_cast<std::size_t>(d * d));
  CHECK_THROWS_AS(LatticeFockSpace(ring(16, 2, 8, 1), 8, 8, 1000), CapExceeded);
  CHECK_THROWS_AS(ring(7, 2, 8, 1).validate(), ValidationError);
}

TEST_CASE("cell coordinates are a bijection of constituent positions") {
  for (auto [m1, m2] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{3, 1}}) {
    LatticeConfig c = ring(12, 4, 8, 1);
    c.mass1 = m1;
    c.mass2 = m2;
    const CellGeometry geo(c);
    int hits = 0;
    for (int x1 = 0; x1 < 12; ++x1)
      for (int x2 = 0; x2 < 12; ++x2) {
        const auto [centre, y] = geo.cell(x1, x2);
        CHECK(geo.constituents(centre, y) == std::pair{x1, x2});
        CHECK(y > -6);
        CHECK(y <= 6);
        ++hits;
      }
    CHECK(hits == 144);
  }
}

TEST_CASE("pair spectrum equals the zero-momentum sector of the exact two-particle problem") {
  const auto config = ring(8, 3, 6.0, 1);
  const auto spectrum = solve_pair_problem(config);
  const LatticeFockSpace space(config, 1, 1);
  const auto h = space.hamiltonian();
  const int L = config.sites;
  Eigen::MatrixXcd basis(space.dimension(), L);
  for (int y = 0; y < L; ++y) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dimension());
    for (int x = 0; x < L; ++x) v += space.field(1, (x + y) % L, true) * (space.field(2, x, true) * vacuum(space));
    basis.col(y) = v / v.norm();
  }
  Eigen::MatrixXcd projected = basis.adjoint() * (h.matrix() * basis);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(projected);
  for (int k = 0; k < L; ++k) CHECK(solver.eigenvalues()(k) == doctest::Approx(spectrum.states[k].energy).epsilon(1e-10));
  CHECK(spectrum.bound_count >= 1);
}

TEST_CASE("hierarchy and placement guards") {
  const auto config = ring(12, 4, 8.0, 1);
  const auto spectrum = solve_pair_problem(config);
  CHECK(spectrum.overlap_radius < 4.0);
  CHECK_THROWS_AS(check_hierarchy(ring(12, 1, 8.0, 1), spectrum), SeparationViolated);
  CHECK_THROWS_AS(solve_pair_problem(ring(12, 4, 0.0, 1)), NoBoundState);

  const Placements close{{PlacementKind::fermion1, 0}, {PlacementKind::composite, 2, 0}};
  const Placements apart{{PlacementKind::fermion1, 0}, {PlacementKind::composite, 6, 0}};
  CHECK_FALSE(is_separated(close, config));
  CHECK(is_separated(apart, config));
  const LatticeFockSpace space(config, 2, 2);
  CHECK_THROWS_AS(verify_orthonormality(space, spectrum, {close}), SeparationViolated);
  CHECK_THROWS_AS(space.composite(spectrum, 0, 2.5, true), OffGrid);
}

TEST_CASE("ideal overlaps are antisymmetric for fermions and symmetric for composites") {
  const Placements ab{{PlacementKind::fermion1, 0}, {PlacementKind::fermion1, 5}};
  const Placements ba{{PlacementKind::fermion1, 5}, {PlacementKind::fermion1, 0}};
  CHECK(ideal_overlap(ab, ab) == cplx(1.0));
  CHECK(ideal_overlap(ab, ba) == cplx(-1.0));
  const Placements cc{{PlacementKind::composite, 0, 0}, {PlacementKind::composite, 5, 1}};
  const Placements cc_swapped{{PlacementKind::composite, 5, 1}, {PlacementKind::composite, 0, 0}};
  CHECK(ideal_overlap(cc, cc_swapped) == cplx(1.0));
  const Placements twice{{PlacementKind::composite, 3, 0}, {PlacementKind::composite, 3, 0}};
  CHECK(ideal_overlap(twice, twice) == cplx(2.0));
}

TEST_CASE("canonical relations and composite vacuum structure on the exact space") {
  const auto config = ring(8, 3, 8.0, 1);
  const LatticeFockSpace space(config, 2, 2);
  const auto spectrum = solve_pair_problem(config);
  const auto canonical = canonical_anticommutators(space);
  CHECK(canonical.pass);
  CHECK(canonical.max_deviation < 1e-12);
  const auto vac = composite_vacuum_structure(space, spectrum);
  CHECK(vac.pass);
  CHECK(vac.max_deviation < 1e-12);
}

TEST_CASE("separated composite states are nearly orthonormal, coincident ones are not") {
  const auto config = ring(12, 4, 8.0, 1);
  const auto spectrum = solve_pair_problem(config);
  const LatticeFockSpace space(config, 2, 2);
  const auto r = verify_orthonormality(space, spectrum, separated_placements(config, {1, 0, 1}, spectrum.bound_count));
  CHECK(r.pass);
  CHECK(r.max_deviation < 1e-2);
  const Placements twice{{PlacementKind::composite, 3, 0}, {PlacementKind::composite, 3, 0}};
  CHECK(verify_orthonormality(space, spectrum, {twice}, true).max_deviation > 0.1);
}

TEST_CASE("effective interaction reproduces exact matrix elements for an on-site well") {
  const auto config = ring(12, 4, 8.0, 0);
  const auto spectrum = solve_pair_problem(config);
  for (SectorContent sector : {SectorContent{1, 0, 1}, SectorContent{0, 1, 1}, SectorContent{1, 1, 0}}) {
    const auto r = effective_vs_exact(config, spectrum, sector, spectrum.bound_count, 1e-10);
    CHECK(r.pass);
    CHECK(r.max_deviation <= 1e-10);
  }
  CHECK(effective_vs_exact(config, spectrum, {0, 0, 2}, spectrum.bound_count).pass);
}

TEST_CASE("binding sweep: deeper wells give smaller deviations") {
  const auto sweep = binding_sweep(ring(12, 4, 8.0, 1), {8, 16, 32, 64});
  REQUIRE(sweep.points.size() == 4);
  CHECK(sweep.gram_monotone);
  CHECK(sweep.potential_monotone);
  for (std::size_t i = 1; i < sweep.points.size(); ++i)
    CHECK(sweep.points[i].overlap_radius < sweep.points[i - 1].overlap_radius);
}

TEST_CASE("auxiliary-space Hamiltonian symmetries") {
  const auto config = ring(12, 4, 8.0, 1);
  const auto spectrum = solve_pair_problem(config);
  const AuxiliarySpace aux(config, spectrum, 1, 1, 1, 1);
  for (const auto& r : {single_composite_energy(aux, 0), decay_elements(aux), number_conservation(aux),
                        momentum_consistency(aux), translation_invariance(aux)}) {
    INFO(r.name);
    CHECK(r.pass);
  }
  CHECK(decay_elements(aux).max_deviation == 0.0);
}

TEST_CASE("boosts: phase laws for admissible velocities, refusal otherwise") {
  const auto config = ring(12, 4, 8.0, 1);
  const AuxiliarySpace aux(config, solve_pair_problem(config), 1, 1, 1, 1);
  for (int k : {0, 1, 2}) {
    const auto r = galilean_boost_check(aux, 2 * pi * k / 12);
    CHECK(r.pass);
    CHECK(r.max_deviation < 1e-10);
  }
  CHECK_THROWS_AS(galilean_boost_check(aux, pi / 12), IncompatibleBoost);
}

TEST_CASE("tilde fields anticommute only with the consistent sign") {
  const auto config = ring(6, 2, 8.0, 1);
  const AuxiliarySpace aux(config, solve_pair_problem(config), 1, 2, 2, 2);
  const auto good = tilde_anticommutators(aux, TildeSign::consistent);
  CHECK(good.pass);
  CHECK(good.max_deviation < 1e-12);
  CHECK_FALSE(tilde_anticommutators(aux, TildeSign::literal).pass);
}
