#include "boundstate/fock/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "boundstate/error.hpp"

namespace bsl::fock {

namespace {

constexpr double identity_tolerance = 1e-12;
constexpr double boost_tolerance = 1e-10;

// Columns whose every truncated group sits strictly below its cap, so that one
// more ladder operator cannot leave the space.
std::vector<bool> interior_columns(const ModeSpace& space) {
  std::vector<bool> ok(space.dimension(), true);
  const auto& groups = space.groups();
  for (std::size_t i = 0; i < space.dimension(); ++i)
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const bool truncated = groups[g].statistics == Statistics::boson || groups[g].max_total < groups[g].modes;
      if (!truncated) continue;
      int total = 0;
      for (int k = 0; k < groups[g].modes; ++k) total += space.occupation(i, space.group_offset(g) + k);
      if (total >= groups[g].max_total) ok[i] = false;
    }
  return ok;
}

double max_abs_on(const OperatorMatrix::Sparse& m, const std::vector<bool>& columns) {
  double out = 0.0;
  for (Eigen::Index r = 0; r < m.outerSize(); ++r)
    for (OperatorMatrix::Sparse::InnerIterator it(m, r); it; ++it)
      if (columns[it.col()]) out = std::max(out, std::abs(it.value()));
  return out;
}

Report finish(std::string name, double deviation, double bound) {
  Report r;
  r.name = std::move(name);
  r.max_deviation = deviation;
  r.bound = bound;
  r.pass = deviation <= bound;
  return r;
}

double radius_ratio(const PairSpectrum& spectrum, const LatticeConfig& config) {
  return spectrum.overlap_radius / config.separation_a;
}

void require_capacity(const LatticeFockSpace& space, const Placements& p) {
  int n1 = 0, n2 = 0;
  for (const auto& q : p) {
    n1 += q.kind != PlacementKind::fermion2;
    n2 += q.kind != PlacementKind::fermion1;
  }
  if (n1 > space.max_n1() || n2 > space.max_n2())
    throw ValidationError("placement needs " + std::to_string(n1) + "+" + std::to_string(n2) +
                          " particles, more than the Fock space holds");
}

template <class Same>
cplx permutation_sum(std::size_t n, const Same& same, bool alternating) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  cplx total = 0.0;
  do {
    bool all = true;
    for (std::size_t i = 0; i < n && all; ++i) all = same(i, perm[i]);
    if (!all) continue;
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    total += alternating && inversions % 2 ? -1.0 : 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Sign from moving every species-1 fermion ahead of every species-2 fermion.
double grouping_sign(const Placements& p) {
  int swaps = 0, seen2 = 0;
  for (const auto& q : p) {
    if (q.kind == PlacementKind::fermion2) ++seen2;
    if (q.kind == PlacementKind::fermion1) swaps += seen2;
  }
  return swaps % 2 ? -1.0 : 1.0;
}

std::vector<Placement> of_kind(const Placements& p, PlacementKind kind) {
  std::vector<Placement> out;
  for (const auto& q : p)
    if (q.kind == kind) out.push_back(q);
  return out;
}

}  // namespace

bool is_separated(const Placements& placements, const LatticeConfig& config) {
  const CellGeometry geo(config);
  for (std::size_t i = 0; i < placements.size(); ++i)
    for (std::size_t j = i + 1; j < placements.size(); ++j)
      if (geo.distance(placements[i].position, placements[j].position) < config.separation_a) return false;
  return true;
}

std::vector<Placements> separated_placements(const LatticeConfig& config, SectorContent content, int labels) {
  std::vector<Placements> out;
  Placements current;
  const int L = config.sites;
  std::vector<PlacementKind> kinds;
  kinds.insert(kinds.end(), content.fermions1, PlacementKind::fermion1);
  kinds.insert(kinds.end(), content.fermions2, PlacementKind::fermion2);
  kinds.insert(kinds.end(), content.composites, PlacementKind::composite);
  const int composite_labels = content.composites > 0 ? labels : 1;

  std::function<void(std::size_t)> place = [&](std::size_t k) {
    if (k == kinds.size()) {
      if (is_separated(current, config)) out.push_back(current);
      return;
    }
    int start = 0;
    if (k > 0 && kinds[k - 1] == kinds[k]) {
      const auto& prev = current.back();
      start = kinds[k] == PlacementKind::composite ? prev.position * composite_labels + prev.label + 1
                                                   : prev.position + 1;
    }
    const int slots = kinds[k] == PlacementKind::composite ? L * composite_labels : L;
    for (int s = start; s < slots; ++s) {
      const int pos = kinds[k] == PlacementKind::composite ? s / composite_labels : s;
      const int label = kinds[k] == PlacementKind::composite ? s % composite_labels : 0;
      current.push_back({kinds[k], pos, label});
      place(k + 1);
      current.pop_back();
    }
  };
  place(0);
  return out;
}

Eigen::VectorXcd exact_state(const LatticeFockSpace& space, const PairSpectrum& spectrum, const Placements& placements) {
  require_capacity(space, placements);
  Eigen::VectorXcd v = vacuum_vector(*space.modes());
  for (auto it = placements.rbegin(); it != placements.rend(); ++it) {
    switch (it->kind) {
      case PlacementKind::fermion1: v = apply_terms(*space.modes(), {{1.0, {space.ladder(1, it->position, true)}}}, v); break;
      case PlacementKind::fermion2: v = apply_terms(*space.modes(), {{1.0, {space.ladder(2, it->position, true)}}}, v); break;
      case PlacementKind::composite:
        v = apply_terms(*space.modes(), space.composite_terms(spectrum, it->label, it->position, true), v);
        break;
    }
  }
  return v;
}

Eigen::VectorXcd auxiliary_state(const AuxiliarySpace& space, const Placements& placements) {
  Eigen::VectorXcd v = vacuum_vector(*space.modes());
  for (auto it = placements.rbegin(); it != placements.rend(); ++it) {
    const Ladder op = it->kind == PlacementKind::composite
                          ? space.eta(it->label, it->position, true)
                          : space.chi(it->kind == PlacementKind::fermion1 ? 1 : 2, it->position, true);
    v = apply_terms(*space.modes(), {{1.0, {op}}}, v);
  }
  return v;
}

cplx ideal_overlap(const Placements& bra, const Placements& ket) {
  cplx total = grouping_sign(bra) * grouping_sign(ket);
  for (auto kind : {PlacementKind::fermion1, PlacementKind::fermion2, PlacementKind::composite}) {
    const auto a = of_kind(bra, kind), b = of_kind(ket, kind);
    if (a.size() != b.size()) return 0.0;
    const bool fermion = kind != PlacementKind::composite;
    total *= permutation_sum(
        a.size(), [&](std::size_t i, std::size_t j) { return a[i].position == b[j].position && a[i].label == b[j].label; },
        fermion);
    if (total == 0.0) return 0.0;
  }
  return total;
}

Report canonical_anticommutators(const LatticeFockSpace& space) {
  const int L = space.config().sites;
  const auto columns = interior_columns(*space.modes());
  const auto id = OperatorMatrix::identity(space.modes());
  std::vector<OperatorMatrix> down, up;
  for (int s : {1, 2})
    for (int x = 0; x < L; ++x) {
      down.push_back(space.field(s, x, false));
      up.push_back(space.field(s, x, true));
    }
  double worst = 0.0, adjoint = 0.0;
  for (std::size_t i = 0; i < down.size(); ++i) {
    adjoint = std::max(adjoint, (down[i].adjoint() - up[i]).max_abs());
    for (std::size_t j = 0; j < down.size(); ++j) {
      auto mixed = anticommutator(down[i], up[j]);
      if (i == j) mixed = mixed - id;
      worst = std::max({worst, max_abs_on(mixed.matrix(), columns),
                        max_abs_on(anticommutator(down[i], down[j]).matrix(), columns)});
    }
  }
  auto r = finish("canonical_anticommutators", std::max(worst, adjoint), identity_tolerance);
  r.diagnostics = {{"adjoint_mismatch", adjoint},
                   {"checked_columns", double(std::count(columns.begin(), columns.end(), true))}};
  return r;
}

Report composite_vacuum_structure(const LatticeFockSpace& space, const PairSpectrum& spectrum) {
  if (space.max_n1() < 1 || space.max_n2() < 1) throw ValidationError("composite checks need one particle of each species");
  const int L = space.config().sites;
  const auto vac = vacuum_vector(*space.modes());
  std::vector<OperatorMatrix> down;
  std::vector<Eigen::VectorXcd> kets;
  double annihilates = 0.0;
  for (int a = 0; a < spectrum.bound_count; ++a)
    for (int X = 0; X < L; ++X) {
      down.push_back(space.composite(spectrum, a, X, false));
      annihilates = std::max(annihilates, (down.back() * vac).norm());
      kets.push_back(space.composite(spectrum, a, X, true) * vac);
    }
  double overlap = 0.0, commutator_residual = 0.0;
  for (std::size_t i = 0; i < kets.size(); ++i)
    for (std::size_t j = 0; j < kets.size(); ++j) {
      const double delta = i == j ? 1.0 : 0.0;
      overlap = std::max(overlap, std::abs(kets[i].dot(kets[j]) - delta));
      // φ_i φ_j†|0> - φ_j† φ_i|0>, the second vanishing by the first check.
      const Eigen::VectorXcd residual = down[i] * kets[j] - delta * vac;
      commutator_residual = std::max(commutator_residual, residual.norm());
    }
  auto r = finish("composite_vacuum_structure", std::max({annihilates, overlap, commutator_residual}),
                  identity_tolerance);
  r.diagnostics = {{"annihilation_on_vacuum", annihilates},
                   {"vacuum_overlap", overlap},
                   {"commutator_on_vacuum", commutator_residual},
                   {"bound_states", double(spectrum.bound_count)}};
  return r;
}

Report verify_orthonormality(const LatticeFockSpace& space, const PairSpectrum& spectrum,
                             const std::vector<Placements>& states, bool force) {
  int unseparated = 0;
  for (const auto& s : states)
    if (!is_separated(s, space.config())) {
      if (!force) throw SeparationViolated("placements closer than separation_a");
      ++unseparated;
    }
  std::vector<Eigen::VectorXcd> kets;
  for (const auto& s : states) kets.push_back(exact_state(space, spectrum, s));
  double worst = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i; j < states.size(); ++j) {
      const double dev = std::abs(kets[i].dot(kets[j]) - ideal_overlap(states[i], states[j]));
      worst = std::max(worst, dev);
      if (i == j) norm = std::max(norm, dev);
    }
  auto r = finish("orthonormality", worst, 10.0 * radius_ratio(spectrum, space.config()));
  r.diagnostics = {{"states", double(states.size())},
                   {"norm_deviation", norm},
                   {"unseparated_states", double(unseparated)},
                   {"r0_over_a", radius_ratio(spectrum, space.config())}};
  return r;
}

Report effective_vs_exact(const LatticeConfig& config, const PairSpectrum& spectrum, SectorContent content,
                          int composites, double bound) {
  const LatticeFockSpace exact(config, content.fermions1 + content.composites,
                               content.fermions2 + content.composites);
  const AuxiliarySpace effective(config, spectrum, composites, content.fermions1, content.fermions2,
                                 content.composites);
  const auto states = separated_placements(config, content, effective.composites());
  if (states.empty()) throw ValidationError("no separated states with this content fit on the lattice");

  const auto v_exact = exact.potential(), h_exact = exact.hamiltonian();
  const auto v_eff = effective.effective_potential(), h_eff = effective.hamiltonian();
  std::vector<Eigen::VectorXcd> ex, ef, v_ex, v_ef, h_ex, h_ef;
  for (const auto& s : states) {
    ex.push_back(exact_state(exact, spectrum, s));
    ef.push_back(auxiliary_state(effective, s));
    v_ex.push_back(v_exact * ex.back());
    v_ef.push_back(v_eff * ef.back());
    h_ex.push_back(h_exact * ex.back());
    h_ef.push_back(h_eff * ef.back());
  }
  double dv = 0.0, scale = 0.0, dh = 0.0, dg = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = 0; j < states.size(); ++j) {
      const cplx reference = ef[i].dot(v_ef[j]);
      scale = std::max(scale, std::abs(reference));
      dv = std::max(dv, std::abs(ex[i].dot(v_ex[j]) - reference));
      dh = std::max(dh, std::abs(ex[i].dot(h_ex[j]) - ef[i].dot(h_ef[j])));
      dg = std::max(dg, std::abs(ex[i].dot(ex[j]) - ef[i].dot(ef[j])));
    }
  const double relative = scale > 0.0 ? dv / scale : dv;
  auto r = finish("effective_vs_exact", relative, bound >= 0.0 ? bound : 10.0 * radius_ratio(spectrum, config));
  r.diagnostics = {{"absolute_deviation", dv},          {"largest_element", scale},
                   {"gram_deviation", dg},              {"hamiltonian_deviation", dh},
                   {"states", double(states.size())},   {"r0_over_a", radius_ratio(spectrum, config)}};
  return r;
}

Report single_composite_energy(const AuxiliarySpace& space, int alpha) {
  const int L = space.config().sites;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dimension()));
  const auto vac = vacuum_vector(*space.modes());
  for (int X = 0; X < L; ++X) psi += space.eta_field(alpha, X, true) * vac;
  psi /= std::sqrt(double(L));
  const double energy = space.hamiltonian().element(psi, psi).real();
  const double target = space.spectrum().states.at(alpha).energy;
  auto r = finish("single_composite_energy", std::abs(energy - target), identity_tolerance);
  r.diagnostics = {{"energy", energy}, {"pair_energy", target}};
  return r;
}

Report decay_elements(const AuxiliarySpace& space) {
  const int L = space.config().sites;
  const auto h = space.hamiltonian();
  const auto vac = vacuum_vector(*space.modes());
  std::vector<Eigen::VectorXcd> pairs;
  for (int x1 = 0; x1 < L; ++x1)
    for (int x2 = 0; x2 < L; ++x2)
      pairs.push_back(space.chi_field(1, x1, true) * (space.chi_field(2, x2, true) * vac));
  double worst = 0.0;
  for (int a = 0; a < space.composites(); ++a)
    for (int X = 0; X < L; ++X) {
      const Eigen::VectorXcd image = h * (space.eta_field(a, X, true) * vac);
      for (const auto& p : pairs) worst = std::max(worst, std::abs(p.dot(image)));
    }
  return finish("decay_elements", worst, 0.0);
}

Report galilean_boost_check(const AuxiliarySpace& space, double velocity) {
  const auto& c = space.config();
  const auto u = space.boost(velocity);
  const auto u_dag = u.adjoint();
  const auto unitary = (u * u_dag - OperatorMatrix::identity(space.modes())).max_abs();
  double fields = 0.0, density = 0.0;
  for (int x = 0; x < c.sites; ++x) {
    for (int s : {1, 2}) {
      const auto f = space.chi_field(s, x, false);
      const double mass = s == 1 ? c.mass1 : c.mass2;
      fields = std::max(fields, (u * f * u_dag - std::polar(1.0, mass * velocity * x) * f).max_abs());
    }
    for (int a = 0; a < space.composites(); ++a) {
      const auto f = space.eta_field(a, x, false);
      fields = std::max(fields, (u * f * u_dag - std::polar(1.0, c.total_mass() * velocity * x) * f).max_abs());
      density = std::max(density, commutator(u, space.eta_field(a, x, true) * f).max_abs());
    }
  }
  auto r = finish("galilean_boost", std::max({fields, density, unitary}), boost_tolerance);
  r.diagnostics = {{"velocity", velocity}, {"field_phase_law", fields}, {"density_commutator", density},
                   {"unitarity", unitary}};
  return r;
}

Report tilde_anticommutators(const AuxiliarySpace& space, TildeSign sign) {
  const int L = space.config().sites;
  const auto columns = interior_columns(*space.modes());
  std::vector<OperatorMatrix> fields;
  for (int s : {1, 2})
    for (int x = 0; x < L; ++x) fields.push_back(space.tilde_field(s, x, false, sign));
  double worst = 0.0;
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = i; j < fields.size(); ++j)
      worst = std::max(worst, max_abs_on(anticommutator(fields[i], fields[j]).matrix(), columns));
  auto r = finish(sign == TildeSign::consistent ? "tilde_anticommutators" : "tilde_anticommutators_literal_sign",
                  worst, identity_tolerance);
  r.diagnostics = {{"checked_columns", double(std::count(columns.begin(), columns.end(), true))}};
  return r;
}

Report number_conservation(const AuxiliarySpace& space) {
  const auto h = space.hamiltonian();
  const double worst = std::max(commutator(space.number(1), h).max_abs(), commutator(space.number(2), h).max_abs());
  return finish("number_conservation", worst, identity_tolerance);
}

Report momentum_consistency(const AuxiliarySpace& space) {
  const auto p = space.momentum();
  const double modes = (p - space.momentum_from_modes()).max_abs();
  const double free = commutator(p, space.free_part()).max_abs();
  auto r = finish("momentum_consistency", std::max(modes, free), identity_tolerance);
  r.diagnostics = {{"mode_sum_mismatch", modes},
                   {"free_commutator", free},
                   {"interacting_commutator", commutator(p, space.hamiltonian()).max_abs()}};
  return r;
}

Report translation_invariance(const AuxiliarySpace& space) {
  const auto t = space.translation();
  const auto id = OperatorMatrix::identity(space.modes());
  const double unitary = (t * t.adjoint() - id).max_abs();
  auto power = id;
  for (int k = 0; k < space.config().sites; ++k) power = t * power;
  const double cycle = (power - id).max_abs();
  const double hamiltonian = commutator(t, space.hamiltonian()).max_abs();
  auto r = finish("translation_invariance", std::max({hamiltonian, unitary, cycle}), identity_tolerance);
  r.diagnostics = {{"hamiltonian_commutator", hamiltonian}, {"unitarity", unitary}, {"full_cycle", cycle}};
  return r;
}

BindingSweep binding_sweep(const LatticeConfig& base, const std::vector<double>& depths) {
  double deepest = 0.0;
  for (double v : base.potential.v12) deepest = std::max(deepest, -v);
  if (deepest <= 0.0) throw ValidationError("binding sweep needs an attractive v12");
  BindingSweep sweep{{}, true, true};
  const SectorContent content{1, 0, 1};
  for (double depth : depths) {
    LatticeConfig c = base;
    for (double& v : c.potential.v12) v *= depth / deepest;
    const auto spectrum = solve_pair_problem(c);
    const LatticeFockSpace exact(c, 2, 1);
    const auto gram = verify_orthonormality(exact, spectrum, separated_placements(c, content, 1), true);
    const auto potential = effective_vs_exact(c, spectrum, content);
    sweep.points.push_back({depth, spectrum.overlap_radius, gram.max_deviation, potential.max_deviation});
  }
  auto decreasing = [](double prev, double next) { return next < prev || (next == 0.0 && prev == 0.0); };
  for (std::size_t i = 1; i < sweep.points.size(); ++i) {
    sweep.gram_monotone &= decreasing(sweep.points[i - 1].gram_deviation, sweep.points[i].gram_deviation);
    sweep.potential_monotone &=
        decreasing(sweep.points[i - 1].potential_deviation, sweep.points[i].potential_deviation);
  }
  return sweep;
}

}  // namespace bsl::fock
