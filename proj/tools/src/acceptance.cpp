#include "boundstate/cli/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "boundstate/atoms/matrix_elements.hpp"
#include "boundstate/atoms/radial_grid.hpp"
#include "boundstate/error.hpp"
#include "boundstate/fock/auxiliary.hpp"
#include "boundstate/parallel.hpp"
#include "boundstate/processes/electron_scattering.hpp"
#include "boundstate/processes/emission.hpp"
#include "boundstate/processes/photon_scattering.hpp"
#include "boundstate/processes/polarizability.hpp"
#include "boundstate/units.hpp"
#include "boundstate/vdw/coupling.hpp"
#include "boundstate/vdw/dispersion.hpp"
#include "boundstate/wick/contractions.hpp"

namespace bsl::cli {

using atoms::AtomModel;
using atoms::BoundState;

namespace {

// Closed-form hydrogen references, independent of the library's solvers.
constexpr double static_polarizability_1s = 4.5;  // Dalgarno–Lewis, exact for a static nucleus
constexpr double c6_hydrogen = 6.499;             // converged pseudo-spectrum literature value

double rate_2p_1s_per_s() {
  const double omega = 0.375;                                   // 1/2 - 1/8 Hartree
  const double dz = 128.0 * std::sqrt(2.0) / 243.0;             // <1s|z|2p0>
  const double c = speed_of_light;
  return 4.0 / 3.0 * std::pow(omega, 3) * dz * dz / (c * c * c) / atomic_time_s;
}

struct Heading {
  const char* name;
  const char* formula;
};

constexpr Heading headings[criterion_count] = {
    {"hydrogenic levels on the radial grid", "ε_nl = -μ/(2n²)"},
    {"spontaneous emission 2p -> 1s", "A = (4/3) ω³ |d|² / c³"},
    {"static polarizability of 1s", "α = 2 Σ |<1s|z|β>|² / (ε_β - ε_1s)"},
    {"Rayleigh limit of photon scattering", "σ → (8π/3) α² ω⁴ / c⁴"},
    {"van der Waals interaction of two 1s atoms", "E2 = -Σ |<λρ|V|αβ>|² / (ε_λ + ε_ρ - ε_α - ε_β)"},
    {"electron-atom amplitude parity", "f = 4π i e1 (q·d) / q²"},
    {"lattice Fock-space structure", "composite fields, Gram matrix, tilde fields, effective Hamiltonian"},
    {"Wick contraction engine", "<0|product|0> as a signed sum over complete contractions"},
    {"Galilean boost on the lattice", "U χ_i(x) U† = e^{i m_i v x} χ_i(x)"},
    {"momentum and position matrix elements", "<a|p|b> = i μ (ε_a - ε_b) <a|r|b>"},
};

Criterion criterion(int id) {
  Criterion c;
  c.id = id;
  c.name = headings[id - 1].name;
  c.formula = headings[id - 1].formula;
  return c;
}

Json pairs(const std::vector<std::pair<std::string, double>>& items) {
  Json out = Json::object();
  for (const auto& [k, v] : items) out[k] = v;
  return out;
}

Criterion levels(const AcceptanceOptions& opt) {
  auto c = criterion(1);
  c.bound = 1e-4;
  c.runtime_limit_s = 5.0;
  auto grid = opt.grid;
  grid.tolerance = c.bound;
  const auto model = AtomModel::hydrogen();
  const auto states = atoms::solve_hydrogenic(model, 5, 2, atoms::RadialMode::grid, grid);
  for (const auto& s : states) {
    const double exact = -model.reduced_mass() / (2.0 * s.label.n * s.label.n);
    c.value = std::max(c.value, std::abs(s.energy / exact - 1.0));
  }
  c.pass = c.value <= c.bound;
  c.diagnostics = pairs({{"states", double(states.size())}, {"grid_points", double(grid.points)}});
  return c;
}

Criterion emission(const AcceptanceOptions&) {
  auto c = criterion(2);
  c.bound = 5e-3;
  c.runtime_limit_s = 1.0;
  const auto model = AtomModel::hydrogen();
  const auto s1 = atoms::analytic_state(model, {1, 0, 0});
  const auto p0 = atoms::analytic_state(model, {2, 1, 0});
  const auto s2 = atoms::analytic_state(model, {2, 0, 0});
  const double rate = processes::emission_rate(p0, s1, model).rate_per_s;
  const double reference = rate_2p_1s_per_s();
  const double forbidden = processes::emission_rate(s2, s1, model).rate_au;
  c.value = std::abs(rate / reference - 1.0);
  c.pass = c.value <= c.bound && forbidden == 0.0;
  c.diagnostics = pairs({{"rate_per_s", rate}, {"reference_per_s", reference}, {"rate_2s_1s", forbidden}});
  return c;
}

Criterion polarizability(const AcceptanceOptions& opt) {
  auto c = criterion(3);
  c.bound = 5e-3;
  c.runtime_limit_s = 30.0;
  const auto model = AtomModel::hydrogen();
  const atoms::PseudoSpectrum basis(model, 1, opt.grid);
  const double full = processes::static_polarizability(basis.state(0, 0), basis);
  c.value = std::abs(full / static_polarizability_1s - 1.0);

  const auto ground = atoms::analytic_state(model, {1, 0, 0});
  std::vector<BoundState> discrete;
  Json partial = Json::array();
  bool monotone = true, below = true;
  double previous = 0.0;
  for (int n = 2; n <= 10; ++n) {
    for (int m = -1; m <= 1; ++m) discrete.push_back(atoms::analytic_state(model, {n, 1, m}));
    const double value = processes::static_polarizability(ground, discrete, model);
    monotone = monotone && value > previous;
    below = below && value < full;
    previous = value;
    partial.push_back(value);
  }
  c.pass = c.value <= c.bound && monotone && below;
  c.diagnostics = Json{{"pseudo_spectrum", full}, {"discrete_by_nmax_from_2", partial},
                       {"discrete_monotone", monotone}, {"discrete_below_full", below}};
  return c;
}

Criterion rayleigh(const AcceptanceOptions& opt) {
  auto c = criterion(4);
  c.bound = 0.02;
  c.runtime_limit_s = 30.0;
  const auto model = AtomModel::hydrogen();
  const atoms::PseudoSpectrum basis(model, 1, opt.grid);
  const auto g = basis.state(0, 0);
  const processes::PhotonScattering scattering(g, g, model, processes::dipole_intermediates(basis, g, g));
  const CVec3 e(1.0, 0.0, 0.0);

  std::vector<double> x, y;
  for (int i = 0; i <= 6; ++i) {
    const double omega = 1e-3 * std::pow(10.0, i / 6.0);
    x.push_back(std::log(omega));
    y.push_back(std::log(scattering.total_cross_section(omega, e)));
  }
  const double n = double(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxy / sxx;
  // Prefactor with the exponent held at 4: geometric mean of σ/ω⁴.
  const double prefactor = std::exp(my - 4.0 * mx);
  const double c4 = std::pow(speed_of_light, 4);
  const double reference = 8.0 * pi / 3.0 * static_polarizability_1s * static_polarizability_1s / c4;
  const double prefactor_error = std::abs(prefactor / reference - 1.0);
  c.value = prefactor_error;
  c.pass = std::abs(slope - 4.0) <= 0.02 && prefactor_error <= c.bound;
  c.diagnostics = pairs({{"exponent", slope}, {"exponent_tolerance", 0.02}, {"prefactor", prefactor},
                         {"reference_prefactor", reference}});
  return c;
}

Criterion van_der_waals(const AcceptanceOptions& opt) {
  auto c = criterion(5);
  c.bound = 0.01;
  c.runtime_limit_s = 60.0;
  const auto model = AtomModel::hydrogen();
  const auto s1 = atoms::analytic_state(model, {1, 0, 0});
  double direct = 0.0;
  for (double r : {10.0, 20.0, 50.0})
    for (int order : {1, 2})
      direct = std::max(direct, std::abs(vdw::coupling(s1, s1, s1, s1, model, Vec3(0.3, -0.4, r), order)));

  const atoms::PseudoSpectrum spectrum(model, 1, opt.grid);
  const auto basis = vdw::spectrum_basis(spectrum);
  std::vector<double> radii;
  for (double r = 10.0; r <= 100.0 + 1e-9; r += 5.0) radii.push_back(r);
  const auto table = vdw::effective_potential(spectrum.state(0, 0), model, basis, radii);
  const bool attractive = std::all_of(table.V.begin(), table.V.end(), [](double v) { return v < 0.0; });
  double plateau = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (radii[i] >= 20.0) plateau = std::max(plateau, std::abs(-table.V[i] * std::pow(radii[i], 6) / table.C6 - 1.0));

  c.value = std::abs(table.C6 / c6_hydrogen - 1.0);
  c.pass = direct <= 1e-12 && attractive && c.value <= c.bound && plateau <= 1e-3;
  c.diagnostics = Json{{"C6", table.C6}, {"reference_C6", c6_hydrogen}, {"direct_coupling", direct},
                       {"attractive_10_to_100", attractive}, {"plateau_spread_beyond_20", plateau}};
  return c;
}

Criterion electron_atom(const AcceptanceOptions&) {
  auto c = criterion(6);
  c.bound = 1e-12;
  c.runtime_limit_s = 10.0;
  const auto model = AtomModel::hydrogen();
  const auto s1 = atoms::analytic_state(model, {1, 0, 0});
  double elastic = 0.0, odd = 0.0, scale = 0.0;
  for (const Vec3& q : {Vec3(0, 0, 0.1), Vec3(0.3, -0.2, 0.5), Vec3(1.5, 0.7, -0.4), Vec3(-2.0, 0.1, 0.9)}) {
    elastic = std::max(elastic, std::abs(processes::electron_atom_amplitude(s1, s1, q, model)));
    for (int m = -1; m <= 1; ++m) {
      const auto p = atoms::analytic_state(model, {2, 1, m});
      const cplx forward = processes::electron_atom_amplitude(s1, p, q, model);
      const cplx backward = processes::electron_atom_amplitude(s1, p, -q, model);
      odd = std::max(odd, std::abs(forward + backward));
      scale = std::max(scale, std::abs(forward));
    }
  }
  c.value = std::max(elastic, odd);
  c.pass = c.value <= c.bound && scale > 0.0;
  c.diagnostics = pairs({{"elastic_max", elastic}, {"odd_residual_max", odd}, {"inelastic_magnitude_max", scale}});
  return c;
}

Criterion fock_structure(const AcceptanceOptions& opt) {
  auto c = criterion(7);
  c.runtime_limit_s = 60.0;
  FockSuiteOptions suite;
  suite.config = opt.lattice;
  const auto entries = fock_structure_suite(suite);
  c.pass = true;
  Json list = Json::array();
  for (const auto& e : entries) {
    if (e.required) {
      c.pass = c.pass && e.report.pass;
      c.value = std::max(c.value, e.report.bound > 0 ? e.report.max_deviation / e.report.bound : e.report.max_deviation);
    }
    list.push_back(report_json(e));
  }
  c.bound = 1.0;  // value is the worst deviation as a fraction of its bound (or absolute when the bound is 0)
  c.diagnostics = Json{{"checks", list}};
  return c;
}

Criterion wick_engine(const AcceptanceOptions& opt) {
  auto c = criterion(8);
  c.bound = 1e-12;
  c.runtime_limit_s = 60.0;
  fock::LatticeConfig lattice{4, 1, 1, 1, fock::PairPotential::square_well(4, 4.0)};
  const auto spectrum = fock::solve_pair_problem(lattice);
  const int labels = static_cast<int>(spectrum.states.size());
  const auto products = random_products(opt.random_products, 8, lattice.sites, labels, opt.seed);
  std::vector<double> deviation(products.size());
  std::vector<char> nonzero(products.size());
  parallel_for(products.size(), [&](std::size_t i) {
    const auto product = wick::parse_product(products[i]);
    const cplx a = wick::evaluate_vev(product, {}, spectrum, lattice);
    const cplx b = wick::fock_vev(product, {}, spectrum, lattice);
    deviation[i] = std::abs(a - b);
    nonzero[i] = std::abs(b) > 1e-9;
  });
  c.value = *std::max_element(deviation.begin(), deviation.end());

  bool factorial = true;
  Json counts = Json::array();
  for (int n = 1, expected = 1; n <= 4; ++n, expected *= n) {
    std::string text;
    for (int i = 0; i < n; ++i) text += "psi1(a" + std::to_string(i) + ") ";
    for (int i = 0; i < n; ++i) text += "psi1+(b" + std::to_string(i) + ") ";
    const int count = static_cast<int>(wick::enumerate_contractions(wick::parse_product(text)).size());
    factorial = factorial && count == expected;
    counts.push_back(count);
  }
  c.pass = c.value <= c.bound && factorial;
  c.diagnostics = Json{{"products", products.size()},
                       {"nonzero", std::count(nonzero.begin(), nonzero.end(), 1)},
                       {"diagram_counts_n1_to_n4", counts}};
  return c;
}

Criterion boosts(const AcceptanceOptions& opt) {
  auto c = criterion(9);
  c.bound = 1e-10;
  c.runtime_limit_s = 30.0;
  const auto entries = boost_suite(opt.lattice, {1, 2});
  c.pass = true;
  Json list = Json::array();
  for (const auto& e : entries) {
    c.pass = c.pass && e.report.pass;
    c.value = std::max(c.value, e.report.max_deviation);
    list.push_back(report_json(e));
  }
  c.diagnostics = Json{{"boosts", list}};
  return c;
}

Criterion velocity_length(const AcceptanceOptions&) {
  auto c = criterion(10);
  c.bound = 1e-6;
  c.runtime_limit_s = 10.0;
  const auto model = AtomModel::hydrogen();
  const auto states = atoms::solve_hydrogenic(model, 3, 2, atoms::RadialMode::analytic);
  for (const auto& a : states)
    for (const auto& b : states) {
      const CVec3 p = atoms::momentum_matrix(a, b);
      const CVec3 r = atoms::position_matrix(a, b);
      const CVec3 rhs = cplx(0.0, model.reduced_mass() * (a.energy - b.energy)) * r;
      c.value = std::max(c.value, (p - rhs).cwiseAbs().maxCoeff());
    }
  c.pass = c.value <= c.bound;
  c.diagnostics = pairs({{"pairs", double(states.size() * states.size())}});
  return c;
}

using Runner = Criterion (*)(const AcceptanceOptions&);
constexpr Runner runners[criterion_count] = {levels,         emission,       polarizability, rayleigh,
                                             van_der_waals,  electron_atom,  fock_structure, wick_engine,
                                             boosts,         velocity_length};

}  // namespace

std::vector<Criterion> run_acceptance(const AcceptanceOptions& options, const std::vector<int>& only) {
  std::vector<int> ids = only;
  if (ids.empty()) {
    ids.resize(criterion_count);
    std::iota(ids.begin(), ids.end(), 1);
  }
  for (int id : ids)
    if (id < 1 || id > criterion_count) throw ValidationError("criterion " + std::to_string(id) + " does not exist");

  std::vector<Criterion> out(ids.size());
  auto run_one = [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    Criterion c = criterion(ids[i]);
    try {
      c = runners[ids[i] - 1](options);
    } catch (const ValidationError& e) {
      c.error = std::string("validation: ") + e.what();
    } catch (const NumericalError& e) {
      c.error = std::string("numerical: ") + e.what();
    }
    if (!c.error.empty()) c.pass = false;
    c.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.runtime_limit_s > 0 && c.runtime_s > c.runtime_limit_s) c.pass = false;
    out[i] = std::move(c);
  };
  if (options.parallel) {
    parallel_for(ids.size(), run_one);
  } else {
    for (std::size_t i = 0; i < ids.size(); ++i) run_one(i);
  }
  return out;
}

Json criterion_json(const Criterion& c) {
  Json out{{"id", c.id},         {"name", c.name},   {"formula", c.formula},
           {"pass", c.pass},     {"value", c.value}, {"bound", c.bound},
           {"runtime_limit_s", c.runtime_limit_s}};
  if (!c.error.empty()) out["error"] = c.error;
  out["diagnostics"] = c.diagnostics;
  return out;
}

Json report_json(const SuiteEntry& entry) {
  const auto& r = entry.report;
  Json out{{"name", r.name}, {"pass", r.pass}, {"required", entry.required},
           {"max_deviation", r.max_deviation}, {"bound", r.bound}};
  Json diag = Json::object();
  for (const auto& [k, v] : r.diagnostics) diag[k] = v;
  out["diagnostics"] = diag;
  return out;
}

std::vector<SuiteEntry> fock_structure_suite(const FockSuiteOptions& options) {
  using namespace fock;
  const auto& config = options.config;
  config.validate();
  const auto spectrum = solve_pair_problem(config);
  check_hierarchy(config, spectrum);
  std::vector<SuiteEntry> out;
  auto add = [&](Report r, bool required = true, const std::string& suffix = "") {
    if (!suffix.empty()) r.name += " (" + suffix + ")";
    out.push_back({std::move(r), required});
  };

  const LatticeFockSpace exact(config, 2, 2);
  add(canonical_anticommutators(exact));
  add(composite_vacuum_structure(exact, spectrum));
  add(verify_orthonormality(exact, spectrum, separated_placements(config, {1, 0, 1}, spectrum.bound_count)), true,
      "fermion + composite");
  add(verify_orthonormality(exact, spectrum, separated_placements(config, {0, 0, 2}, spectrum.bound_count)), true,
      "two composites");

  // With an on-site well the exchange configurations cannot enter a separated
  // sector, so fermion-composite elements agree to rounding.
  LatticeConfig contact = config;
  contact.potential = PairPotential::square_well(config.sites, -*std::min_element(config.potential.v12.begin(),
                                                                                   config.potential.v12.end()), 0);
  const auto contact_spectrum = solve_pair_problem(contact);
  const int labels = contact_spectrum.bound_count;
  add(effective_vs_exact(contact, contact_spectrum, {1, 0, 1}, labels, options.exact_bound), true, "on-site well");
  add(effective_vs_exact(contact, contact_spectrum, {0, 1, 1}, labels, options.exact_bound), true, "on-site well");
  add(effective_vs_exact(contact, contact_spectrum, {1, 1, 0}, labels, options.exact_bound), true, "on-site well");
  add(effective_vs_exact(contact, contact_spectrum, {0, 0, 2}, labels), true, "on-site well, wavefunction tails");
  add(effective_vs_exact(config, spectrum, {1, 0, 1}, spectrum.bound_count), true, "configured well");

  const AuxiliarySpace aux(config, spectrum, 1, 1, 1, 1);
  add(single_composite_energy(aux, 0));
  add(decay_elements(aux));
  add(number_conservation(aux));
  add(momentum_consistency(aux));
  add(translation_invariance(aux));

  LatticeConfig small = config;
  small.sites = options.tilde_sites;
  small.separation_a = std::min(config.separation_a, options.tilde_sites / 2 - 1);
  const int width = static_cast<int>(std::count_if(config.potential.v12.begin() + 1, config.potential.v12.end(),
                                                   [](double v) { return v != 0.0; }));
  small.potential = PairPotential::square_well(small.sites, -config.potential.v12.front(), width);
  const AuxiliarySpace tilde_space(small, solve_pair_problem(small), 1, 2, 2, 2);
  add(tilde_anticommutators(tilde_space, TildeSign::consistent));
  add(tilde_anticommutators(tilde_space, TildeSign::literal), false, "literal sign, informational");

  const auto sweep = binding_sweep(config, options.sweep_depths);
  Report r;
  r.name = "well-depth sweep of Gram and potential deviations";
  r.bound = 0.0;
  bool inside = true;
  for (const auto& p : sweep.points) {
    const double bound = 10.0 * p.overlap_radius / config.separation_a;
    inside = inside && p.gram_deviation < bound;
    r.max_deviation = std::max(r.max_deviation, p.gram_deviation / bound);
    const std::string tag = "depth_" + std::to_string(static_cast<int>(p.depth));
    r.diagnostics.emplace_back(tag + "_r0", p.overlap_radius);
    r.diagnostics.emplace_back(tag + "_gram", p.gram_deviation);
    r.diagnostics.emplace_back(tag + "_potential", p.potential_deviation);
  }
  r.bound = 1.0;
  r.diagnostics.emplace_back("gram_monotone", sweep.gram_monotone);
  r.diagnostics.emplace_back("potential_monotone", sweep.potential_monotone);
  r.pass = inside && sweep.gram_monotone && sweep.potential_monotone;
  add(std::move(r));
  return out;
}

std::vector<SuiteEntry> boost_suite(const fock::LatticeConfig& config, const std::vector<int>& steps) {
  const auto spectrum = fock::solve_pair_problem(config);
  const fock::AuxiliarySpace aux(config, spectrum, 1, 1, 1, 1);
  std::vector<SuiteEntry> out;
  for (int k : steps) {
    auto r = fock::galilean_boost_check(aux, 2.0 * pi * k / config.sites);
    r.name += " (v = 2π·" + std::to_string(k) + "/" + std::to_string(config.sites) + ")";
    out.push_back({std::move(r), true});
  }
  return out;
}

std::vector<std::string> random_products(int count, int max_operators, int sites, int labels, unsigned seed) {
  std::mt19937 rng(seed);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  struct Op {
    int kind;  // 0 psi1, 1 psi2, 2 phi; creators add 3
    int site, label;
  };
  auto render = [](const std::vector<Op>& ops) {
    static const char* names[] = {"psi1", "psi2", "phi", "psi1+", "psi2+", "phi+"};
    std::string s;
    for (const auto& op : ops) {
      if (!s.empty()) s += ' ';
      s += names[op.kind];
      if (op.kind % 3 == 2) s += "[" + std::to_string(op.label) + "]";
      s += "(" + std::to_string(op.site) + ")";
    }
    return s;
  };

  std::vector<std::string> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<Op> ops;
    if (out.size() % 2 == 0) {
      const int n = 2 + pick(max_operators - 1);
      int balance1 = 0, balance2 = 0;
      for (int i = 0; i < n; ++i) {
        const Op op{pick(6), pick(sites), pick(labels)};
        const int sign = op.kind >= 3 ? 1 : -1;
        if (op.kind % 3 != 1) balance1 += sign;
        if (op.kind % 3 != 0) balance2 += sign;
        ops.push_back(op);
      }
      if (balance1 != 0 || balance2 != 0) continue;
    } else {
      const int pairs = 1 + pick(max_operators / 2);
      std::vector<Op> creators;
      for (int i = 0; i < pairs; ++i) {
        const Op op{pick(3), pick(sites), pick(labels)};
        ops.push_back(op);
        creators.push_back({op.kind + 3, op.site, op.label});
      }
      std::shuffle(creators.begin(), creators.end(), rng);
      // Occasionally swap a composite creator for its two constituents.
      for (std::size_t i = 0; i < creators.size(); ++i) {
        if (creators[i].kind == 5 && static_cast<int>(ops.size() + creators.size()) < max_operators && pick(2) == 0) {
          const int x = creators[i].site;
          creators[i] = {3, x, 0};
          creators.insert(creators.begin() + static_cast<long>(i) + 1, Op{4, (x + pick(2)) % sites, 0});
        }
      }
      ops.insert(ops.end(), creators.begin(), creators.end());
    }
    out.push_back(render(ops));
  }
  return out;
}

}  // namespace bsl::cli
