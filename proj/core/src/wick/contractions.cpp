#include "boundstate/wick/contractions.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>

#include "boundstate/error.hpp"
#include "boundstate/fock/fock_space.hpp"

namespace bsl::wick {

std::vector<Leg> legs_of(const Product& product) {
  std::vector<Leg> legs;
  for (const auto& op : product) {
    const bool creator = is_creator(op.kind);
    if (!is_composite(op.kind)) {
      legs.push_back({op.slot, species(op.kind), creator, 0});
    } else if (creator) {
      legs.push_back({op.slot, 1, true, 1});
      legs.push_back({op.slot, 2, true, 2});
    } else {
      legs.push_back({op.slot, 2, false, 2});
      legs.push_back({op.slot, 1, false, 1});
    }
  }
  return legs;
}

namespace {

int pairing_sign(std::vector<std::pair<int, int>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  std::vector<int> sequence;
  for (const auto& [l, r] : pairs) {
    sequence.push_back(l);
    sequence.push_back(r);
  }
  int inversions = 0;
  for (std::size_t i = 0; i < sequence.size(); ++i)
    for (std::size_t j = i + 1; j < sequence.size(); ++j) inversions += sequence[i] > sequence[j];
  return inversions % 2 ? -1 : 1;
}

// Partner slot of each composite whose two legs both contract with one other composite.
std::map<int, int> double_contractions(const Product& product, const std::vector<Leg>& legs,
                                       const std::vector<std::pair<int, int>>& pairs) {
  std::map<int, std::vector<int>> partners;
  for (const auto& [l, r] : pairs) {
    const int a = legs[l].slot, b = legs[r].slot;
    if (is_composite(product[a].kind)) partners[a].push_back(b);
    if (is_composite(product[b].kind)) partners[b].push_back(a);
  }
  std::map<int, int> out;
  for (const auto& [slot, with] : partners)
    if (with.size() == 2 && with[0] == with[1] && is_composite(product[with[0]].kind)) out[slot] = with[0];
  return out;
}

std::string leg_variable(const Product& product, const Leg& leg) {
  const auto& op = product[leg.slot];
  return leg.part == 0 ? op.arg : op.arg + "." + std::to_string(leg.part);
}

bool is_suppressed(const Product& product, const std::vector<Leg>& legs, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> parent(product.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int i) { return parent[i] == i ? i : parent[i] = root(parent[i]); };
  for (const auto& [l, r] : pairs) {
    const int a = legs[l].slot, b = legs[r].slot;
    if (product[a].block >= 0 || product[b].block >= 0) continue;
    parent[root(a)] = root(b);
  }
  std::map<int, std::pair<int, int>> sides;  // root -> (annihilating side, creating side)
  for (const auto& op : product) {
    if (op.block >= 0) continue;
    auto& s = sides[root(op.slot)];
    (is_creator(op.kind) ? s.second : s.first) += 1;
  }
  return std::any_of(sides.begin(), sides.end(), [](const auto& kv) { return kv.second.first > 1 || kv.second.second > 1; });
}

ContractionDiagram build_diagram(const Product& product, const std::vector<Leg>& legs,
                                 const std::vector<std::pair<int, int>>& pairs) {
  ContractionDiagram d;
  d.leg_pairs = pairs;
  std::sort(d.leg_pairs.begin(), d.leg_pairs.end());
  d.sign = pairing_sign(pairs);
  for (const auto& [l, r] : d.leg_pairs) d.pairings.emplace_back(legs[l].slot, legs[r].slot);
  d.suppressed = is_suppressed(product, legs, pairs);

  const auto doubles = double_contractions(product, legs, pairs);
  for (const auto& op : product) {
    if (!is_composite(op.kind)) continue;
    const auto it = doubles.find(op.slot);
    if (it != doubles.end()) {
      if (it->second > op.slot) {
        const auto& other = product[it->second];
        d.kernel.push_back({KernelFactor::Kind::label_delta, op.label, other.label, "", false});
        d.kernel.push_back({KernelFactor::Kind::site_delta, op.arg, other.arg, "", false});
      }
      continue;
    }
    d.kernel.push_back({KernelFactor::Kind::wavefunction, op.arg + ".1", op.arg + ".2", op.label,
                        !is_creator(op.kind)});
  }
  for (const auto& [l, r] : d.leg_pairs) {
    if (doubles.count(legs[l].slot) && doubles.at(legs[l].slot) == legs[r].slot) continue;
    d.kernel.push_back(
        {KernelFactor::Kind::site_delta, leg_variable(product, legs[l]), leg_variable(product, legs[r]), "", false});
  }
  return d;
}

bool literal(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

int resolve(const std::string& name, const std::map<std::string, int>& table, const char* what) {
  if (literal(name)) return std::stoi(name);
  const auto it = table.find(name);
  if (it == table.end()) throw UnboundVariable(std::string(what) + " '" + name + "' has no value");
  return it->second;
}

struct Resolved {
  std::vector<int> site;   // per slot
  std::vector<int> label;  // per slot, composites only
};

Resolved resolve_all(const Product& product, const Bindings& b, const fock::PairSpectrum& spectrum,
                     const fock::LatticeConfig& config) {
  Resolved r{std::vector<int>(product.size()), std::vector<int>(product.size(), -1)};
  for (const auto& op : product) {
    r.site[op.slot] = resolve(op.arg, b.positions, "position");
    if (r.site[op.slot] < 0 || r.site[op.slot] >= config.sites)
      throw ValidationError("position of " + to_string(op) + " lies outside the lattice");
    if (is_composite(op.kind)) {
      r.label[op.slot] = resolve(op.label, b.labels, "label");
      if (r.label[op.slot] < 0 || r.label[op.slot] >= static_cast<int>(spectrum.states.size()))
        throw ValidationError("label of " + to_string(op) + " is not a pair state");
    }
  }
  return r;
}

cplx evaluate_resolved(const Product& product, const ContractionDiagram& diagram, const Resolved& r,
                       const fock::PairSpectrum& spectrum, const fock::LatticeConfig& config) {
  const auto legs = legs_of(product);
  const fock::CellGeometry geo(config);
  const auto doubles = double_contractions(product, legs, diagram.leg_pairs);

  for (const auto& [slot, other] : doubles)
    if (r.label[slot] != r.label[other] || r.site[slot] != r.site[other]) return 0.0;

  // Composites summed over their relative offset, and the order in which they are fixed.
  std::vector<int> summed;
  std::vector<int> depth_of(product.size(), -1);
  for (const auto& op : product)
    if (is_composite(op.kind) && !doubles.count(op.slot)) {
      depth_of[op.slot] = static_cast<int>(summed.size());
      summed.push_back(op.slot);
    }
  std::vector<std::vector<std::pair<int, int>>> checks(summed.size() + 1);
  for (const auto& [l, rr] : diagram.leg_pairs) {
    if (doubles.count(legs[l].slot) && doubles.at(legs[l].slot) == legs[rr].slot) continue;
    const int ready = std::max(depth_of[legs[l].slot], depth_of[legs[rr].slot]);
    checks[ready + 1].emplace_back(l, rr);
  }

  std::vector<int> leg_site(legs.size());
  for (std::size_t i = 0; i < legs.size(); ++i)
    if (legs[i].part == 0) leg_site[i] = r.site[legs[i].slot];
  std::vector<std::vector<int>> legs_of_slot(product.size());
  for (std::size_t i = 0; i < legs.size(); ++i) legs_of_slot[legs[i].slot].push_back(static_cast<int>(i));

  auto satisfied = [&](int level) {
    for (const auto& [l, rr] : checks[level])
      if (leg_site[l] != leg_site[rr]) return false;
    return true;
  };
  if (!satisfied(0)) return 0.0;

  const auto offsets = geo.offsets();
  std::function<double(std::size_t)> sum = [&](std::size_t k) -> double {
    if (k == summed.size()) return 1.0;
    const int slot = summed[k];
    double total = 0.0;
    for (int y : offsets) {
      const double amp = spectrum.phi(r.label[slot], y);
      if (amp == 0.0) continue;
      const auto [x1, x2] = geo.constituents(r.site[slot], y);
      for (int leg : legs_of_slot[slot]) leg_site[leg] = legs[leg].part == 1 ? x1 : x2;
      if (!satisfied(static_cast<int>(k) + 1)) continue;
      total += amp * sum(k + 1);
    }
    return total;
  };
  return double(diagram.sign) * sum(0);
}

}  // namespace

std::vector<ContractionDiagram> enumerate_contractions(const Product& product) {
  const auto legs = legs_of(product);
  std::vector<ContractionDiagram> out;
  if (legs.size() % 2) return out;
  std::vector<bool> used(legs.size(), false);
  std::vector<std::pair<int, int>> pairs;
  std::function<void()> extend = [&]() {
    const auto first = std::find(used.begin(), used.end(), false);
    if (first == used.end()) {
      out.push_back(build_diagram(product, legs, pairs));
      return;
    }
    const int i = static_cast<int>(first - used.begin());
    if (legs[i].creator) return;
    const int block = product[legs[i].slot].block;
    used[i] = true;
    for (int j = i + 1; j < static_cast<int>(legs.size()); ++j) {
      if (used[j] || !legs[j].creator || legs[j].species != legs[i].species) continue;
      if (block >= 0 && product[legs[j].slot].block == block) continue;
      used[j] = true;
      pairs.emplace_back(i, j);
      extend();
      pairs.pop_back();
      used[j] = false;
    }
    used[i] = false;
  };
  extend();
  return out;
}

std::string kernel_string(const ContractionDiagram& diagram) {
  std::string out = diagram.sign < 0 ? "-" : "";
  for (const auto& f : diagram.kernel) {
    if (out.size() > 1 || (out.size() == 1 && out != "-")) out += " ";
    switch (f.kind) {
      case KernelFactor::Kind::site_delta: out += "δ(" + f.first + "-" + f.second + ")"; break;
      case KernelFactor::Kind::label_delta: out += "δ[" + f.first + "," + f.second + "]"; break;
      case KernelFactor::Kind::wavefunction:
        out += std::string("φ") + (f.conjugate ? "*" : "") + "[" + f.label + "](" + f.first + "-" + f.second + ")";
        break;
    }
  }
  return out.empty() || out == "-" ? out + "1" : out;
}

cplx evaluate_diagram(const Product& product, const ContractionDiagram& diagram, const Bindings& bindings,
                      const fock::PairSpectrum& spectrum, const fock::LatticeConfig& config) {
  return evaluate_resolved(product, diagram, resolve_all(product, bindings, spectrum, config), spectrum, config);
}

cplx evaluate_vev(const Product& product, const Bindings& bindings, const fock::PairSpectrum& spectrum,
                  const fock::LatticeConfig& config, EvaluationOptions options) {
  const auto resolved = resolve_all(product, bindings, spectrum, config);
  cplx total = 0.0;
  for (const auto& d : enumerate_contractions(product)) {
    if (d.suppressed && !options.include_suppressed) continue;
    total += evaluate_resolved(product, d, resolved, spectrum, config);
  }
  return total;
}

cplx fock_vev(const Product& product, const Bindings& bindings, const fock::PairSpectrum& spectrum,
              const fock::LatticeConfig& config) {
  const auto resolved = resolve_all(product, bindings, spectrum, config);
  int creators1 = 0, creators2 = 0;
  for (const auto& leg : legs_of(product))
    if (leg.creator) (leg.species == 1 ? creators1 : creators2) += 1;
  const fock::LatticeFockSpace space(config, creators1, creators2);

  // Normal-ordered blocks: creators moved ahead of annihilators, one sign per
  // elementary fermion pair that crosses.
  std::vector<int> order;
  double sign = 1.0;
  for (std::size_t i = 0; i < product.size();) {
    if (product[i].block < 0) {
      order.push_back(static_cast<int>(i++));
      continue;
    }
    std::vector<int> up, down;
    int elementary_down = 0;
    const int block = product[i].block;
    for (; i < product.size() && product[i].block == block; ++i) {
      if (is_creator(product[i].kind)) {
        up.push_back(static_cast<int>(i));
        if (!is_composite(product[i].kind) && elementary_down % 2) sign = -sign;
      } else {
        down.push_back(static_cast<int>(i));
        elementary_down += !is_composite(product[i].kind);
      }
    }
    order.insert(order.end(), up.begin(), up.end());
    order.insert(order.end(), down.begin(), down.end());
  }

  Eigen::VectorXcd state = fock::vacuum_vector(*space.modes());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& op = product[*it];
    const int site = resolved.site[op.slot];
    std::vector<fock::Term> terms;
    if (is_composite(op.kind))
      terms = space.composite_terms(spectrum, resolved.label[op.slot], site, is_creator(op.kind));
    else
      terms = {{1.0, {space.ladder(species(op.kind), site, is_creator(op.kind))}}};
    state = fock::apply_terms(*space.modes(), terms, state);
  }
  return sign * state[static_cast<Eigen::Index>(space.modes()->vacuum())];
}

std::optional<int> probe_class(const Product& product, const ContractionDiagram& diagram) {
  int u = -1, v = -1;
  for (std::size_t i = 0; i + 1 < product.size(); ++i)
    if (product[i].block >= 0 && product[i].kind == OpKind::psi1_dag && product[i + 1].kind == OpKind::psi1 &&
        product[i + 1].block == product[i].block) {
      u = static_cast<int>(i);
      v = static_cast<int>(i + 1);
      break;
    }
  if (u < 0) return std::nullopt;
  const auto legs = legs_of(product);
  auto partner_leg = [&](int leg) {
    for (const auto& [l, r] : diagram.leg_pairs) {
      if (l == leg) return r;
      if (r == leg) return l;
    }
    return -1;
  };
  auto leg_of = [&](int slot, int part) {
    for (std::size_t i = 0; i < legs.size(); ++i)
      if (legs[i].slot == slot && legs[i].part == part) return static_cast<int>(i);
    return -1;
  };
  const int pu = partner_leg(leg_of(u, 0)), pv = partner_leg(leg_of(v, 0));
  const bool u_composite = legs[pu].part != 0, v_composite = legs[pv].part != 0;
  // The other constituent of the composite met by u or v, and what it contracts with.
  auto second_partner = [&](int leg) { return partner_leg(leg_of(legs[leg].slot, 2)); };
  auto elementary = [&](int leg) { return leg >= 0 && legs[leg].part == 0; };

  if (!u_composite && !v_composite) return 1;
  if (!u_composite && v_composite) return elementary(second_partner(pv)) ? std::optional<int>(2) : std::nullopt;
  if (u_composite && !v_composite) return elementary(second_partner(pu)) ? std::optional<int>(3) : std::nullopt;
  const int su = second_partner(pu), sv = second_partner(pv);
  if (su >= 0 && legs[su].slot == legs[pv].slot) return 4;
  if (elementary(su) && elementary(sv)) return 5;
  return std::nullopt;
}

}  // namespace bsl::wick
