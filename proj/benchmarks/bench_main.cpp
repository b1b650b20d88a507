#include <benchmark/benchmark.h>

#include "boundstate/atoms/radial_grid.hpp"
#include "boundstate/fock/auxiliary.hpp"
#include "boundstate/fock/fock_space.hpp"
#include "boundstate/processes/emission.hpp"
#include "boundstate/processes/photon_scattering.hpp"
#include "boundstate/vdw/dispersion.hpp"
#include "boundstate/wick/contractions.hpp"

using namespace bsl;

namespace {

const atoms::AtomModel hydrogen = atoms::AtomModel::hydrogen();

const atoms::PseudoSpectrum& spectrum() {
  static const atoms::PseudoSpectrum instance(hydrogen, 1);
  return instance;
}

void radial_channel(benchmark::State& state) {
  auto grid = std::make_shared<const atoms::RadialGrid>(1e-5, 200.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(atoms::diagonalize_channel(hydrogen, grid, 1, 6));
}
BENCHMARK(radial_channel)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void emission_dipole(benchmark::State& state) {
  const auto p = atoms::analytic_state(hydrogen, {3, 1, 0});
  const auto s = atoms::analytic_state(hydrogen, {1, 0, 0});
  for (auto _ : state) benchmark::DoNotOptimize(processes::emission_rate(p, s, hydrogen).rate_au);
}
BENCHMARK(emission_dipole);

void rayleigh_cross_section(benchmark::State& state) {
  const auto g = spectrum().state(0, 0);
  const processes::PhotonScattering scattering(g, g, hydrogen, processes::dipole_intermediates(spectrum(), g, g));
  for (auto _ : state) benchmark::DoNotOptimize(scattering.total_cross_section(0.01, CVec3(1, 0, 0)));
}
BENCHMARK(rayleigh_cross_section)->Unit(benchmark::kMillisecond);

void dispersion_point(benchmark::State& state) {
  const auto g = spectrum().state(0, 0);
  const vdw::DispersionSum sum(g, g, hydrogen, vdw::spectrum_basis(spectrum()));
  for (auto _ : state) benchmark::DoNotOptimize(sum(Vec3(0, 0, 20), 0).E2);
}
BENCHMARK(dispersion_point)->Unit(benchmark::kMillisecond);

void effective_hamiltonian(benchmark::State& state) {
  fock::LatticeConfig config;
  config.sites = static_cast<int>(state.range(0));
  config.potential = fock::PairPotential::square_well(config.sites, 8.0);
  const auto pair = fock::solve_pair_problem(config);
  const fock::AuxiliarySpace aux(config, pair, 1, 1, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(aux.hamiltonian().max_abs());
  state.counters["dimension"] = static_cast<double>(aux.dimension());
}
BENCHMARK(effective_hamiltonian)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void exact_hamiltonian(benchmark::State& state) {
  fock::LatticeConfig config;
  const fock::LatticeFockSpace space(config, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(space.hamiltonian().max_abs());
  state.counters["dimension"] = static_cast<double>(space.dimension());
}
BENCHMARK(exact_hamiltonian)->Unit(benchmark::kMillisecond);

void contraction_enumeration(benchmark::State& state) {
  std::string text;
  const int n = static_cast<int>(state.range(0));
  for (int i = 0; i < n; ++i) text += "psi1(a" + std::to_string(i) + ") ";
  for (int i = 0; i < n; ++i) text += "psi1+(b" + std::to_string(i) + ") ";
  const auto product = wick::parse_product(text);
  for (auto _ : state) benchmark::DoNotOptimize(wick::enumerate_contractions(product).size());
}
BENCHMARK(contraction_enumeration)->DenseRange(2, 6, 2);

void vacuum_value(benchmark::State& state) {
  const fock::LatticeConfig config{4, 1, 1, 1, fock::PairPotential::square_well(4, 4.0)};
  const auto pair = fock::solve_pair_problem(config);
  const auto product = wick::parse_product("phi[0](0) psi1(2) psi2(3) psi2+(3) psi1+(2) phi+[0](0)");
  for (auto _ : state) benchmark::DoNotOptimize(wick::evaluate_vev(product, {}, pair, config));
}
BENCHMARK(vacuum_value);

}  // namespace

BENCHMARK_MAIN();
