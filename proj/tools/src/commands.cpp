#include "boundstate/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>

#include "boundstate/atoms/matrix_elements.hpp"
#include "boundstate/atoms/radial_grid.hpp"
#include "boundstate/atoms/states.hpp"
#include "boundstate/cli/acceptance.hpp"
#include "boundstate/error.hpp"
#include "boundstate/processes/electron_scattering.hpp"
#include "boundstate/processes/emission.hpp"
#include "boundstate/processes/photon_scattering.hpp"
#include "boundstate/processes/polarizability.hpp"
#include "boundstate/units.hpp"
#include "boundstate/vdw/dispersion.hpp"
#include "boundstate/wick/contractions.hpp"

namespace bsl::cli {

using atoms::AtomModel;
using atoms::BoundState;
using atoms::StateLabel;

namespace {

constexpr double hartree_joule = 4.3597447222071e-18;

using Kind = KeySpec::Kind;

KeySpec integer_key(std::string name, std::string fallback, double min, double max, std::string help) {
  return {std::move(name), Kind::integer, std::move(fallback), std::move(help), min, max, {}};
}
KeySpec real_key(std::string name, std::string fallback, double min, double max, std::string help) {
  return {std::move(name), Kind::real, std::move(fallback), std::move(help), min, max, {}};
}
KeySpec text_key(std::string name, std::string fallback, std::string help) {
  KeySpec k;
  k.name = std::move(name);
  k.fallback = std::move(fallback);
  k.help = std::move(help);
  return k;
}
KeySpec choice_key(std::string name, std::string fallback, std::vector<std::string> choices, std::string help) {
  return {std::move(name), Kind::choice, std::move(fallback), std::move(help), 0, 0, std::move(choices)};
}
KeySpec flag_key(std::string name, std::string fallback, std::string help) {
  auto k = text_key(std::move(name), std::move(fallback), std::move(help));
  k.kind = Kind::flag;
  return k;
}

std::vector<KeySpec> grid_keys() {
  return {real_key("grid_r_min", "1e-5", 1e-8, 1.0, "innermost radius of the log grid (bohr)"),
          real_key("grid_r_max", "200", 10.0, 1e4, "outermost radius of the log grid (bohr)"),
          integer_key("grid_points", "4000", 50, 50000, "radial grid points"),
          real_key("grid_tolerance", "1e-4", 1e-12, 1.0, "allowed relative deviation of grid bound levels")};
}

std::vector<KeySpec> atom_keys(bool with_mode, const std::string& mode = "analytic") {
  std::vector<KeySpec> keys{
      choice_key("model", "hydrogen", {"hydrogen", "hydrogen-recoiling", "positronium"}, "two-body Coulomb system")};
  if (with_mode) keys.push_back(choice_key("mode", mode, {"analytic", "grid"}, "radial functions"));
  for (auto& k : grid_keys()) keys.push_back(std::move(k));
  return keys;
}

std::vector<KeySpec> operator+(std::vector<KeySpec> a, std::vector<KeySpec> b) {
  for (auto& k : b) a.push_back(std::move(k));
  return a;
}

std::vector<KeySpec> lattice_keys(int sites, int separation, double depth, int width) {
  return {integer_key("sites", std::to_string(sites), 2, 16, "ring length L"),
          integer_key("separation", std::to_string(separation), 1, 8, "separation scale a in sites"),
          real_key("depth", number_text(depth), 0.01, 1e4, "square-well depth between unlike species"),
          integer_key("width", std::to_string(width), 0, 8, "square-well half width in sites"),
          integer_key("mass1", "1", 1, 8, "integer mass of species 1"),
          integer_key("mass2", "1", 1, 8, "integer mass of species 2")};
}

fock::LatticeConfig lattice_of(const RunConfig& c) {
  fock::LatticeConfig config;
  config.sites = c.integer("sites");
  config.mass1 = c.integer("mass1");
  config.mass2 = c.integer("mass2");
  config.separation_a = c.integer("separation");
  config.potential = fock::PairPotential::square_well(config.sites, c.real("depth"), c.integer("width"));
  config.validate();
  return config;
}

AtomModel model_of(const RunConfig& c) {
  const auto& name = c.text("model");
  if (name == "hydrogen-recoiling") return AtomModel::hydrogen_recoiling();
  if (name == "positronium") return AtomModel::positronium();
  return AtomModel::hydrogen();
}

atoms::GridOptions grid_of(const RunConfig& c) {
  atoms::GridOptions g;
  g.r_min = c.real("grid_r_min");
  g.r_max = c.real("grid_r_max");
  g.points = c.integer("grid_points");
  g.tolerance = c.real("grid_tolerance");
  if (g.r_min >= g.r_max) throw ValidationError("grid_r_min must lie below grid_r_max");
  return g;
}

atoms::RadialMode mode_of(const RunConfig& c) {
  return c.text("mode") == "grid" ? atoms::RadialMode::grid : atoms::RadialMode::analytic;
}

BoundState state_of(const AtomModel& model, const StateLabel& label, const RunConfig& c) {
  if (mode_of(c) == atoms::RadialMode::analytic) return atoms::analytic_state(model, label);
  for (auto& s : atoms::solve_hydrogenic(model, label.n, label.l, atoms::RadialMode::grid, grid_of(c)))
    if (s.label == label) return s;
  throw NoBoundState("grid solver returned no state " + label.str());
}

std::string shell_name(int n, int l) { return std::to_string(n) + "spdfghik"[l]; }

Json complex_json(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json vector_json(const CVec3& v) { return Json::array({complex_json(v[0]), complex_json(v[1]), complex_json(v[2])}); }

Vec3 vector_of(const std::string& key, const std::string& text) {
  const auto parts = split_list(text);
  if (parts.size() != 3) throw ValidationError("'" + key + "' expects three comma-separated numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    try {
      v[i] = std::stod(parts[i]);
    } catch (const std::exception&) {
      throw ValidationError("'" + key + "' component '" + parts[i] + "' is not a number");
    }
  }
  return v;
}

CVec3 axis_of(const std::string& name) {
  return CVec3(name == "x" ? 1.0 : 0.0, name == "y" ? 1.0 : 0.0, name == "z" ? 1.0 : 0.0);
}

Vec3 direction(double theta_deg, double phi_deg) {
  const double t = theta_deg * pi / 180.0, p = phi_deg * pi / 180.0;
  return Vec3(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t));
}

std::vector<double> angle_samples(int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(180.0 * i / (count - 1));
  return out;
}

// ---------------------------------------------------------------- levels

Outcome run_levels(const RunConfig& c) {
  const auto model = model_of(c);
  const int n_max = c.integer("nmax");
  const int l_max = std::min(c.integer("lmax"), n_max - 1);
  const auto states = atoms::solve_hydrogenic(model, n_max, l_max, mode_of(c), grid_of(c));

  Outcome out;
  Sidecar csv{"levels", {"n", "l", "m", "energy_Ha"}, {}};
  Json shells = Json::array();
  double worst = 0.0;
  for (const auto& s : states) {
    const auto& [n, l, m] = s.label;
    csv.rows.push_back({std::to_string(n), std::to_string(l), std::to_string(m), number_text(s.energy)});
    if (m != -l) continue;
    const double exact = atoms::hydrogenic_energy(model, n);
    const double deviation = std::abs(s.energy / exact - 1.0);
    worst = std::max(worst, deviation);
    shells.push_back(Json{{"state", shell_name(n, l)},
                          {"n", n},
                          {"l", l},
                          {"degeneracy", 2 * l + 1},
                          {"energy_Ha", s.energy},
                          {"energy_eV", s.energy * hartree_ev},
                          {"reference_Ha", exact},
                          {"relative_deviation", deviation}});
  }
  out.results["levels"] = Json{{"formula", "ε_n = -μκ²/(2n²)"},
                               {"model", model.describe()},
                               {"states", shells},
                               {"max_relative_deviation", worst}};
  out.sidecars.push_back(std::move(csv));
  return out;
}

// ---------------------------------------------------------------- dipole

Outcome run_dipole(const RunConfig& c) {
  const auto model = model_of(c);
  const int n_max = c.integer("nmax");
  const auto states = atoms::solve_hydrogenic(model, n_max, n_max - 1, mode_of(c), grid_of(c));

  Outcome out;
  Sidecar csv{"dipole", {"a", "b", "dx_re", "dx_im", "dy_re", "dy_im", "dz_re", "dz_im"}, {}};
  Json elements = Json::array();
  double velocity_length = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      const auto& a = states[i];
      const auto& b = states[j];
      const CVec3 d = atoms::dipole_matrix(a, b, model);
      std::vector<std::string> row{a.label.str(), b.label.str()};
      for (int k = 0; k < 3; ++k) {
        row.push_back(number_text(d[k].real()));
        row.push_back(number_text(d[k].imag()));
      }
      csv.rows.push_back(std::move(row));
      if (i < j && d.norm() > 1e-12)
        elements.push_back(Json{{"a", a.label.str()}, {"b", b.label.str()}, {"d", vector_json(d)}, {"norm", d.norm()}});
      const CVec3 p = atoms::momentum_matrix(a, b);
      const CVec3 r = atoms::position_matrix(a, b);
      velocity_length = std::max(velocity_length,
                                 (p - cplx(0.0, model.reduced_mass() * (a.energy - b.energy)) * r).cwiseAbs().maxCoeff());
    }
  }
  out.results["dipole"] = Json{{"formula", "d_ab = <a| (e1 m2/M - e2 m1/M) y |b>"},
                               {"dipole_charge", model.dipole_charge()},
                               {"states", states.size()},
                               {"nonzero_pairs", elements}};
  out.results["velocity_length"] =
      Json{{"formula", "<a|p|b> = i μ (ε_a - ε_b) <a|y|b>"}, {"max_deviation", velocity_length}};
  out.sidecars.push_back(std::move(csv));
  return out;
}

// ---------------------------------------------------------------- emit

Outcome run_emit(const RunConfig& c) {
  const auto model = model_of(c);
  const auto initial = state_of(model, StateLabel::parse(c.text("from")), c);
  const auto final_state = state_of(model, StateLabel::parse(c.text("to")), c);
  processes::EmissionOptions options;
  options.mass = c.text("mass") == "finite" ? processes::MassMode::finite : processes::MassMode::infinite;
  options.form = c.text("form") == "form-factor" ? processes::EmissionForm::form_factor
                                                  : processes::EmissionForm::dipole;
  const auto r = processes::emission_rate(initial, final_state, model, options);
  const double shell =
      processes::shell_emission_rate(initial, final_state.label.n, final_state.label.l, model, options);

  Outcome out;
  Json e{{"formula", "dA/dΩ = ω³ |e·d|² / (2π c³), summed over polarizations and directions"},
         {"initial", r.initial.str()},
         {"final", r.final_state.str()},
         {"omega_Ha", r.omega},
         {"omega_eV", r.omega * hartree_ev},
         {"wavelength_nm", 2.0 * pi * speed_of_light / r.omega * bohr_m * 1e9},
         {"rate_au", r.rate_au},
         {"rate_per_s", r.rate_per_s}};
  e["lifetime_s"] = r.rate_per_s > 0 ? Json(1.0 / r.rate_per_s) : Json(nullptr);
  e["shell_rate_per_s"] = per_second(shell);
  e["quadrature_deviation"] =
      r.rate_au > 0 ? std::abs(r.quadrature_rate_au / r.rate_au - 1.0) : std::abs(r.quadrature_rate_au);
  out.results["emission"] = e;

  Sidecar csv{"angular", {"theta_deg", "phi_deg", "rate_density_au", "rate_density_per_s"}, {}};
  const double phi = c.real("azimuth_deg");
  for (double theta : angle_samples(c.integer("angles"))) {
    const double w = r.differential(direction(theta, phi));
    csv.rows.push_back({number_text(theta), number_text(phi), number_text(w), number_text(per_second(w))});
  }
  out.sidecars.push_back(std::move(csv));
  return out;
}

// ---------------------------------------------------------------- photon-scatter

Outcome run_photon_scatter(const RunConfig& c) {
  const auto model = model_of(c);
  const auto from = StateLabel::parse(c.text("from"));
  const auto to = c.text("to").empty() ? from : StateLabel::parse(c.text("to"));
  const atoms::PseudoSpectrum basis(model, std::max(from.l, to.l) + 1, grid_of(c));
  const auto pick = [&](const StateLabel& l) { return basis.state(l.l, l.n - l.l - 1, l.m); };
  const auto alpha = pick(from);
  const auto alpha_prime = pick(to);

  processes::ScatteringOptions options;
  if (c.real("width") > 0) options.width = c.real("width");
  const processes::PhotonScattering scattering(alpha, alpha_prime, model,
                                               processes::dipole_intermediates(basis, alpha, alpha_prime), options);
  const double omega = c.real("omega");
  const CVec3 e = axis_of(c.text("polarization"));
  const auto k = scattering(omega, e, e);
  const double total = scattering.total_cross_section(omega, e);

  Outcome out;
  Json s{{"formula", "R = q (e·e'*) + ω ω' Σ_β [absorption-first + emission-first dipole products]"},
         {"initial", from.str()},
         {"final", to.str()},
         {"omega_Ha", omega},
         {"omega_out_Ha", k.omega_out},
         {"contact", complex_json(k.contact)},
         {"second_order", complex_json(k.second_order)},
         {"amplitude", complex_json(k.amplitude)},
         {"completeness_residual", std::abs(k.commutator_sum + k.contact)},
         {"cross_section_same_polarization_au", k.cross_section},
         {"total_cross_section_au", total},
         {"total_cross_section_m2", total * bohr_m * bohr_m}};
  if (from == to) {
    const double polarizability = processes::static_polarizability(alpha, basis);
    const double rayleigh =
        8.0 * pi / 3.0 * polarizability * polarizability * std::pow(omega, 4) / std::pow(speed_of_light, 4);
    s["static_polarizability_au"] = polarizability;
    s["rayleigh_cross_section_au"] = rayleigh;
    s["ratio_to_rayleigh"] = total / rayleigh;
  }
  out.results["scattering"] = s;

  Sidecar csv{"angular", {"theta_deg", "phi_deg", "dsigma_domega_au", "dsigma_domega_m2"}, {}};
  const double phi = c.real("azimuth_deg");
  for (double theta : angle_samples(c.integer("angles"))) {
    const auto [p1, p2] = processes::transverse_polarizations(direction(theta, phi));
    const double value = scattering(omega, e, p1.cast<cplx>()).cross_section +
                         scattering(omega, e, p2.cast<cplx>()).cross_section;
    csv.rows.push_back({number_text(theta), number_text(phi), number_text(value),
                        number_text(value * bohr_m * bohr_m)});
  }
  out.sidecars.push_back(std::move(csv));
  return out;
}

// ---------------------------------------------------------------- escatter

Outcome run_escatter(const RunConfig& c) {
  const auto model = model_of(c);
  const auto alpha = state_of(model, StateLabel::parse(c.text("from")), c);
  const auto alpha_prime = state_of(model, StateLabel::parse(c.text("to")), c);
  const Vec3 q = vector_of("q", c.text("q"));
  const bool born = c.flag("born");

  const cplx forward = processes::electron_atom_amplitude(alpha, alpha_prime, q, model);
  const cplx reversed = processes::electron_atom_amplitude(alpha, alpha_prime, -q, model);
  Outcome out;
  Json a{{"formula", "f = 4π i e1 (q·d_α'α) / q²"},
         {"initial", alpha.label.str()},
         {"final", alpha_prime.label.str()},
         {"q_au", Json::array({q[0], q[1], q[2]})},
         {"q_magnitude_au", q.norm()},
         {"amplitude", complex_json(forward)},
         {"amplitude_reversed_q", complex_json(reversed)},
         {"even_residual", std::abs(forward - reversed)},
         {"odd_residual", std::abs(forward + reversed)}};
  if (born) {
    a["born_formula"] = "f = 4π e1 g_α'α(q) / q²";
    a["born_amplitude"] = complex_json(processes::electron_atom_born(alpha, alpha_prime, q, model));
  }
  out.results["electron_scattering"] = a;

  Sidecar csv{"angular", {"theta_deg", "amplitude_re", "amplitude_im", "born_re", "born_im"}, {}};
  for (double theta : angle_samples(c.integer("angles"))) {
    const Vec3 qt = q.norm() * direction(theta, 0.0);
    const cplx f = processes::electron_atom_amplitude(alpha, alpha_prime, qt, model);
    const cplx g = born ? processes::electron_atom_born(alpha, alpha_prime, qt, model) : cplx(NAN, NAN);
    csv.rows.push_back({number_text(theta), number_text(f.real()), number_text(f.imag()), number_text(g.real()),
                        number_text(g.imag())});
  }
  out.sidecars.push_back(std::move(csv));
  return out;
}

// ---------------------------------------------------------------- vdw

Json channels_json(const std::vector<vdw::ChannelContribution>& list) {
  Json out = Json::array();
  for (const auto& ch : list) out.push_back(Json{{"lambda", ch.lambda}, {"rho", ch.rho}, {"weight", ch.weight}});
  return out;
}

Outcome run_vdw(const RunConfig& c) {
  const auto model = model_of(c);
  const auto labels = split_list(c.text("pair"));
  if (labels.size() != 2) throw ValidationError("'pair' expects two states such as 1s,1s");
  const auto la = StateLabel::parse(labels[0]);
  const auto lb = StateLabel::parse(labels[1]);
  const int order = c.integer("order");
  const int l_max = std::max({c.integer("lmax"), la.l + order, lb.l + order});
  const int n_max = c.integer("nmax");
  if (n_max <= std::max(la.n, lb.n)) throw ValidationError("'nmax' must exceed the principal numbers of the pair");

  vdw::DispersionOptions options;
  options.order = order;
  const bool use_spectrum = c.text("basis") == "spectrum";
  std::optional<atoms::PseudoSpectrum> spectrum;
  vdw::RadialBasis basis;
  BoundState alpha = atoms::analytic_state(model, la), beta = atoms::analytic_state(model, lb);
  if (use_spectrum) {
    spectrum.emplace(model, l_max, grid_of(c));
    basis = vdw::spectrum_basis(*spectrum);
    alpha = spectrum->state(la.l, la.n - la.l - 1, la.m);
    beta = spectrum->state(lb.l, lb.n - lb.l - 1, lb.m);
  } else {
    basis = vdw::discrete_basis(model, n_max, l_max);
  }
  const vdw::DispersionSum sum(alpha, beta, model, basis, options);

  const double r_min = c.real("r_min"), r_max = c.real("r_max");
  const int points = c.integer("r_points");
  if (r_min >= r_max) throw ValidationError("r_min must lie below r_max");
  std::vector<double> radii;
  for (int i = 0; i < points; ++i) radii.push_back(r_min + (r_max - r_min) * i / (points - 1));

  Outcome out;
  Sidecar csv{"potential", {"R_bohr", "R_m", "E2_Ha", "E2_J", "E2_R6"}, {}};
  std::vector<double> energies;
  vdw::VdwResult last;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const bool final_point = i + 1 == radii.size();
    auto r = sum(Vec3(0, 0, radii[i]), final_point ? c.integer("top") : 0);
    energies.push_back(r.E2);
    const double R = radii[i];
    csv.rows.push_back({number_text(R), number_text(R * bohr_m), number_text(r.E2), number_text(r.E2 * hartree_joule),
                        number_text(r.E2 * std::pow(R, 6))});
    if (final_point) last = std::move(r);
  }
  double plateau = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (radii[i] >= 20.0) plateau = std::max(plateau, std::abs(-energies[i] * std::pow(radii[i], 6) / last.C6 - 1.0));

  const auto discrete = vdw::DispersionSum(atoms::analytic_state(model, la), atoms::analytic_state(model, lb), model,
                                           vdw::discrete_basis(model, n_max, l_max), options)(Vec3(0, 0, r_max), 0);
  const auto [direct, exchange] = vdw::first_order_energy(alpha, beta, Vec3(0, 0, r_min), model, order);

  out.results["R_grid"] = radii;
  out.results["E2"] = energies;
  out.results["C6"] = last.C6;
  out.results["channels"] = channels_json(last.channels);
  out.results["dispersion"] = Json{
      {"formula", "E2 = -Σ_{λρ} |<λρ|V|αβ>|² / (ε_λ + ε_ρ - ε_α - ε_β), C6 = -E2 R⁶"},
      {"pair", labels[0] + "," + labels[1]},
      {"basis", c.text("basis")},
      {"multipole_order", order},
      {"C6_au", last.C6},
      {"C6_J_m6", last.C6 * hartree_joule * std::pow(bohr_m, 6)},
      {"C6_discrete_au", discrete.C6},
      {"discrete_nmax", n_max},
      {"plateau_spread_beyond_20", plateau},
      {"converged_cutoff_Ha", last.converged_cutoff},
      {"all_denominators_negative", last.all_denominators_negative},
      {"excluded_degenerate", channels_json(last.excluded)},
      {"separation_comfortable", last.separation.comfortable}};
  out.results["first_order"] = Json{{"formula", "E1 = <αβ|V|αβ>, exchange <βα|V|αβ>"},
                                    {"R_bohr", r_min},
                                    {"direct_Ha", direct},
                                    {"exchange_Ha", exchange}};
  out.sidecars.push_back(std::move(csv));
  return out;
}

// ---------------------------------------------------------------- fock-verify

std::vector<int> integers_of(const std::string& key, const std::string& text) {
  std::vector<int> out;
  if (trim(text).empty()) return out;
  for (const auto& p : split_list(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(p, &used));
      if (used != p.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      throw ValidationError("'" + key + "' expects integers, got '" + p + "'");
    }
  }
  return out;
}

Outcome run_fock_verify(const RunConfig& c) {
  FockSuiteOptions options;
  options.config = lattice_of(c);
  options.tilde_sites = c.integer("tilde_sites");
  options.sweep_depths.clear();
  for (const auto& d : split_list(c.text("sweep"))) {
    try {
      options.sweep_depths.push_back(std::stod(d));
    } catch (const std::exception&) {
      throw ValidationError("'sweep' expects depths, got '" + d + "'");
    }
  }
  auto entries = fock_structure_suite(options);
  for (auto& e : boost_suite(options.config, integers_of("boosts", c.text("boosts")))) entries.push_back(std::move(e));

  const auto spectrum = fock::solve_pair_problem(options.config);
  Outcome out;
  int passed = 0, required = 0;
  for (const auto& e : entries) {
    out.checks.push_back(report_json(e));
    if (!e.required) continue;
    ++required;
    passed += e.report.pass;
  }
  Json energies = Json::array();
  for (int i = 0; i < spectrum.bound_count; ++i) energies.push_back(spectrum.states[i].energy);
  out.results["pair_spectrum"] = Json{{"formula", "-(1/2μ) Δ φ + v12 φ = ε φ on the periodic offset grid"},
                                      {"bound_energies", energies},
                                      {"overlap_radius", spectrum.overlap_radius},
                                      {"r0_over_a", spectrum.overlap_radius / options.config.separation_a}};
  out.results["summary"] = Json{{"formula", "structure checks of the composite-field construction"},
                                {"required_passed", passed},
                                {"required_total", required}};
  out.exit_code = passed == required ? 0 : 3;
  return out;
}

// ---------------------------------------------------------------- wick-check

wick::Bindings bindings_of(const std::string& text) {
  wick::Bindings b;
  if (trim(text).empty()) return b;
  for (const auto& item : split_list(text)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("'bind' expects name=value pairs, got '" + item + "'");
    const std::string name = trim(item.substr(0, eq));
    const auto value = integers_of("bind", item.substr(eq + 1));
    if (value.size() != 1) throw ValidationError("'bind' expects one integer per name");
    b.positions[name] = value[0];
    b.labels[name] = value[0];
  }
  return b;
}

Outcome run_wick_check(const RunConfig& c) {
  if (trim(c.text("product")).empty()) throw ValidationError("wick-check needs an operator product");
  const auto product = wick::parse_product(c.text("product"));
  const auto diagrams = wick::enumerate_contractions(product);

  Json list = Json::array();
  int suppressed = 0;
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    const auto& d = diagrams[i];
    suppressed += d.suppressed;
    Json pairings = Json::array();
    for (const auto& [l, r] : d.pairings) pairings.push_back(Json::array({l, r}));
    const auto cls = wick::probe_class(product, d);
    list.push_back(Json{{"index", i},
                        {"sign", d.sign},
                        {"kernel", wick::kernel_string(d)},
                        {"pairings", pairings},
                        {"suppressed", d.suppressed},
                        {"density_class", cls ? Json(*cls) : Json(nullptr)}});
  }

  Outcome out;
  Json w{{"formula", "<0|O_1 … O_n|0> = Σ over complete contractions of sign × Π kernels"},
         {"product", wick::to_string(product)},
         {"diagrams", diagrams.size()},
         {"suppressed", suppressed}};
  if (diagrams.size() == 1) w["kernel"] = wick::kernel_string(diagrams.front());
  w["contractions"] = list;

  const auto config = lattice_of(c);
  const auto spectrum = fock::solve_pair_problem(config);
  const auto bindings = bindings_of(c.text("bind"));
  wick::EvaluationOptions options;
  options.include_suppressed = c.flag("include_suppressed");
  try {
    const cplx value = wick::evaluate_vev(product, bindings, spectrum, config, options);
    const cplx oracle = wick::fock_vev(product, bindings, spectrum, config);
    w["value"] = complex_json(value);
    w["fock_space_value"] = complex_json(oracle);
    w["deviation"] = std::abs(value - oracle);
  } catch (const UnboundVariable& e) {
    w["value"] = nullptr;
    w["unbound"] = e.what();
  }
  out.results["wick"] = w;
  return out;
}

// ---------------------------------------------------------------- verify-all

Outcome run_verify_all(const RunConfig& c) {
  AcceptanceOptions options;
  options.grid = grid_of(c);
  options.lattice = lattice_of(c);
  options.random_products = c.integer("products");
  options.seed = static_cast<unsigned>(c.integer("seed"));
  options.parallel = c.flag("parallel");
  const auto criteria = run_acceptance(options, integers_of("only", c.text("only")));

  Outcome out;
  int passed = 0;
  bool invalid = false;
  for (const auto& cr : criteria) {
    out.checks.push_back(criterion_json(cr));
    passed += cr.pass;
    invalid = invalid || cr.error.rfind("validation", 0) == 0;
  }
  out.results["summary"] = Json{{"formula", "acceptance criteria 1-10"},
                                {"passed", passed},
                                {"total", criteria.size()}};
  out.exit_code = passed == static_cast<int>(criteria.size()) ? 0 : invalid ? 2 : 3;
  return out;
}

std::vector<Command> build_commands() {
  const auto state_keys = [](std::string from, std::string to) {
    return std::vector<KeySpec>{text_key("from", std::move(from), "initial state, e.g. 2p or 2p-1"),
                                text_key("to", std::move(to), "final state")};
  };
  return {
      {"levels", "bound-state energies on the radial grid or in closed form",
       atom_keys(true, "grid") + std::vector<KeySpec>{integer_key("nmax", "5", 1, 30, "highest principal number"),
                                                      integer_key("lmax", "2", 0, 29, "highest orbital number")},
       "", run_levels},
      {"dipole", "dipole matrix elements between all states with n <= nmax",
       atom_keys(true) + std::vector<KeySpec>{integer_key("nmax", "3", 1, 8, "highest principal number")}, "",
       run_dipole},
      {"emit", "spontaneous emission rate and angular distribution",
       atom_keys(true) + state_keys("2p", "1s") +
           std::vector<KeySpec>{choice_key("mass", "infinite", {"infinite", "finite"}, "atom recoil"),
                                choice_key("form", "dipole", {"dipole", "form-factor"}, "matrix element"),
                                integer_key("angles", "37", 2, 1801, "polar samples in the CSV"),
                                real_key("azimuth_deg", "0", -360, 360, "azimuth of the CSV cut")},
       "", run_emit},
      {"photon-scatter", "second-order photon scattering amplitude and cross sections",
       atom_keys(false) + state_keys("1s", "") +
           std::vector<KeySpec>{real_key("omega", "0.01", 1e-8, 100, "photon energy (Hartree)"),
                                choice_key("polarization", "x", {"x", "y", "z"}, "incoming polarization"),
                                real_key("width", "0", 0, 10, "opt-in level width; 0 refuses resonances"),
                                integer_key("angles", "37", 2, 1801, "polar samples in the CSV"),
                                real_key("azimuth_deg", "90", -360, 360, "azimuth of the CSV cut")},
       "", run_photon_scatter},
      {"escatter", "fast electron-atom excitation amplitude",
       atom_keys(true) + state_keys("1s", "2p") +
           std::vector<KeySpec>{text_key("q", "0,0,0.1", "momentum transfer qx,qy,qz (1/bohr)"),
                                flag_key("born", "true", "also evaluate the full form-factor amplitude"),
                                integer_key("angles", "19", 2, 361, "directions of q in the CSV")},
       "", run_escatter},
      {"vdw", "second-order dispersion energy and C6 of two atoms",
       atom_keys(false) +
           std::vector<KeySpec>{text_key("pair", "1s,1s", "the two atomic states"),
                                integer_key("nmax", "10", 2, 40, "bound states kept in the discrete-only sum"),
                                choice_key("basis", "spectrum", {"spectrum", "discrete"}, "intermediate states"),
                                integer_key("lmax", "1", 1, 6, "partial waves of the intermediate states"),
                                integer_key("order", "1", 1, 2, "1 dipole-dipole, 2 adds dipole-quadrupole"),
                                real_key("r_min", "10", 1, 1e4, "smallest separation (bohr)"),
                                real_key("r_max", "100", 1, 1e4, "largest separation (bohr)"),
                                integer_key("r_points", "19", 2, 1000, "separations in the table"),
                                integer_key("top", "10", 0, 1000, "largest channels listed")},
       "", run_vdw},
      {"fock-verify", "lattice checks of the composite-field construction",
       lattice_keys(12, 4, 8.0, 1) +
           std::vector<KeySpec>{text_key("sweep", "8,16,32,64", "well depths for the binding sweep"),
                                integer_key("tilde_sites", "8", 4, 10, "ring length for the tilde-field check"),
                                text_key("boosts", "1,2", "boost velocities in units of 2π/L")},
       "", run_fock_verify},
      {"wick-check", "contractions of an operator product and their vacuum value",
       std::vector<KeySpec>{text_key("product", "", "operators such as \"psi1(x) psi1+(y)\""),
                            text_key("bind", "", "variable values, e.g. x=0,y=1")} +
           lattice_keys(4, 1, 4.0, 1) +
           std::vector<KeySpec>{flag_key("include_suppressed", "true", "keep same-side chained diagrams")},
       "product", run_wick_check},
      {"verify-all", "acceptance criteria 1-10",
       grid_keys() + lattice_keys(12, 4, 8.0, 1) +
           std::vector<KeySpec>{integer_key("products", "200", 1, 100000, "random Wick products"),
                                integer_key("seed", "20240917", 0, 4294967295.0, "seed for the random products"),
                                text_key("only", "", "comma list of criteria to run"),
                                flag_key("parallel", "true", "run criteria concurrently")},
       "", run_verify_all},
  };
}

}  // namespace

std::string number_text(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, result.ptr);
}

std::string to_csv(const Sidecar& sidecar) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += '\n';
  };
  line(sidecar.header);
  for (const auto& row : sidecar.rows) line(row);
  return out;
}

const std::vector<Command>& commands() {
  static const std::vector<Command> list = build_commands();
  return list;
}

const Command& find_command(const std::string& name) {
  for (const auto& c : commands())
    if (c.name == name) return c;
  throw ValidationError("unknown subcommand '" + name + "'");
}

Json make_report(const Command& command, const RunConfig& config, const Outcome& outcome) {
  Json report{{"command", command.name}, {"inputs", config.echo()}, {"results", outcome.results}};
  if (!outcome.checks.empty()) report["checks"] = outcome.checks;
  report["exit_code"] = outcome.exit_code;
  return report;
}

}  // namespace bsl::cli
