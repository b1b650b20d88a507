#include "boundstate/vdw/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "boundstate/atoms/angular.hpp"
#include "boundstate/atoms/matrix_elements.hpp"
#include "boundstate/error.hpp"

namespace bsl::vdw {

namespace {

constexpr double cutoffs[] = {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 1e3, 1e4, 1e5, 1e6,
                              std::numeric_limits<double>::infinity()};
constexpr int cutoff_count = static_cast<int>(std::size(cutoffs));

int power_of_three(int n) {
  int out = 1;
  for (int k = 0; k < n; ++k) out *= 3;
  return out;
}

std::string shell_name(const atoms::StateLabel& label) {
  std::string s = atoms::StateLabel{label.n, label.l, 0}.str();
  if (label.l > 0) s.pop_back();
  return s;
}

BoundState with_m(const BoundState& s, int m) {
  BoundState out = s;
  out.label.m = m;
  return out;
}

// One radial pair of intermediate states and its share of E2.
struct Ranked {
  double magnitude;
  ChannelContribution entry;
  bool operator<(const Ranked& o) const { return magnitude > o.magnitude; }  // min-heap on magnitude
};

}  // namespace

RadialBasis spectrum_basis(const atoms::PseudoSpectrum& spectrum, std::optional<double> max_energy) {
  RadialBasis basis;
  for (int l = 0; l <= spectrum.l_max(); ++l) basis.channels[l] = spectrum.states(l, false, max_energy);
  return basis;
}

RadialBasis discrete_basis(const AtomModel& model, int n_max, int l_max) {
  RadialBasis basis;
  for (int l = 0; l <= l_max; ++l)
    for (int n = l + 1; n <= n_max; ++n) basis.channels[l].push_back(atoms::analytic_state(model, {n, l, 0}));
  return basis;
}

DispersionSum::Atom DispersionSum::tabulate(const BoundState& initial, const AtomModel& model,
                                            const RadialBasis& basis, int max_rank) {
  Atom atom;
  for (int p = 0; p <= max_rank; ++p)
    atom.charge[p] = model.e1() * std::pow(model.share1(), p) + model.e2() * std::pow(-model.share2(), p);

  for (const auto& [l, states] : basis.channels) {
    Atom::Wave wave;
    wave.l = l;
    wave.states = states;
    for (int p = 0; p <= max_rank; ++p) {
      if (atom.charge[p] == 0.0 || (l + initial.l() + p) % 2 != 0 || std::abs(l - initial.l()) > p) continue;
      wave.ranks.push_back(p);
      std::vector<double> radial(states.size());
      for (std::size_t k = 0; k < states.size(); ++k) radial[k] = atoms::radial_integral(states[k], initial, p);
      wave.radial.push_back(std::move(radial));
      std::vector<std::vector<cplx>> angular(2 * l + 1, std::vector<cplx>(power_of_three(p)));
      for (int m = -l; m <= l; ++m) {
        for (int flat = 0; flat < power_of_three(p); ++flat) {
          angular[m + l][flat] = atoms::angular_integral(l, m, initial.l(), initial.m(), [&](const Vec3& n) {
            double prod = 1.0;
            for (int rest = flat, k = 0; k < p; ++k, rest /= 3) prod *= n(rest % 3);
            return cplx(prod);
          });
        }
      }
      wave.angular.push_back(std::move(angular));
    }
    if (!wave.ranks.empty()) atom.waves.push_back(std::move(wave));
  }
  return atom;
}

DispersionSum::DispersionSum(const BoundState& alpha, const BoundState& beta, const AtomModel& model,
                             const RadialBasis& basis, DispersionOptions options)
    : alpha_(alpha),
      beta_(beta),
      model_(model),
      options_(options),
      max_rank_(combined_rank(options.order)),
      a_(tabulate(alpha, model, basis, max_rank_)),
      b_(tabulate(beta, model, basis, max_rank_)) {}

VdwResult DispersionSum::operator()(const Vec3& R, int top_channels) const {
  VdwResult result;
  result.R = R.norm();
  result.separation = check_separation(alpha_, beta_, model_, R);
  result.E0 = alpha_.energy + beta_.energy;
  std::tie(result.E1, result.E1_exchange) = first_order_energy(alpha_, beta_, R, model_, options_.order);

  std::array<double, cutoff_count> bins{};
  std::priority_queue<Ranked> top;
  std::vector<std::vector<double>> tensors;
  for (int n = 0; n <= max_rank_; ++n) tensors.push_back(derivative_tensor(n, R));

  for (const auto& wa : a_.waves) {
    for (const auto& wb : b_.waves) {
      // Angular couplings C[combo][mA][mB] for each admissible rank pair.
      struct Combo {
        std::size_t slot_a, slot_b;
      };
      std::vector<Combo> combos;
      std::vector<std::vector<cplx>> c;
      const int na = 2 * wa.l + 1, nb = 2 * wb.l + 1;
      for (std::size_t sa = 0; sa < wa.ranks.size(); ++sa) {
        for (std::size_t sb = 0; sb < wb.ranks.size(); ++sb) {
          const int p = wa.ranks[sa], q = wb.ranks[sb];
          if (p + q > max_rank_) continue;
          const auto& t = tensors[p + q];
          const int width = power_of_three(q);
          const double factor = (q % 2 ? -1.0 : 1.0) / (std::tgamma(p + 1.0) * std::tgamma(q + 1.0)) *
                                a_.charge[p] * b_.charge[q];
          std::vector<cplx> block(static_cast<std::size_t>(na * nb));
          for (int ma = 0; ma < na; ++ma) {
            for (int mb = 0; mb < nb; ++mb) {
              cplx sum = 0.0;
              const auto& ang_a = wa.angular[sa][ma];
              const auto& ang_b = wb.angular[sb][mb];
              for (std::size_t i = 0; i < ang_a.size(); ++i) {
                if (ang_a[i] == 0.0) continue;
                for (std::size_t j = 0; j < ang_b.size(); ++j) sum += ang_a[i] * ang_b[j] * t[i * width + j];
              }
              block[ma * nb + mb] = factor * sum;
            }
          }
          combos.push_back({sa, sb});
          c.push_back(std::move(block));
        }
      }
      if (combos.empty()) continue;

      // Σ_m |G|² = Σ_{c,c'} K_cc' x_c x_c' with x_c the product of radial integrals.
      const std::size_t nc = combos.size();
      std::vector<double> kernel(nc * nc);
      for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t j = 0; j < nc; ++j) {
          cplx sum = 0.0;
          for (std::size_t m = 0; m < c[i].size(); ++m) sum += c[i][m] * std::conj(c[j][m]);
          kernel[i * nc + j] = sum.real();
        }

      std::vector<double> x(nc);
      for (std::size_t ka = 0; ka < wa.states.size(); ++ka) {
        const BoundState& lambda = wa.states[ka];
        for (std::size_t kb = 0; kb < wb.states.size(); ++kb) {
          const BoundState& rho = wb.states[kb];
          for (std::size_t i = 0; i < nc; ++i)
            x[i] = wa.radial[combos[i].slot_a][ka] * wb.radial[combos[i].slot_b][kb];
          double numerator = 0.0;
          for (std::size_t i = 0; i < nc; ++i)
            for (std::size_t j = 0; j < nc; ++j) numerator += kernel[i * nc + j] * x[i] * x[j];
          if (numerator == 0.0) continue;
          const double gap = result.E0 - lambda.energy - rho.energy;
          if (std::abs(gap) < options_.degenerate_gap) {
            if (options_.refuse_degenerate)
              throw DegenerateDenominator("channel (" + shell_name(lambda.label) + ", " + shell_name(rho.label) +
                                          ") is degenerate with the initial pair");
            result.excluded.push_back({shell_name(lambda.label), shell_name(rho.label), numerator});
            continue;
          }
          if (gap >= 0.0) result.all_denominators_negative = false;
          const double value = numerator / gap;
          const double pair_energy = lambda.energy + rho.energy;
          int bin = 0;
          while (bin + 1 < cutoff_count && pair_energy > cutoffs[bin]) ++bin;
          bins[bin] += value;
          if (top_channels > 0) {
            if (static_cast<int>(top.size()) < top_channels || std::abs(value) > top.top().magnitude) {
              top.push({std::abs(value), {shell_name(lambda.label), shell_name(rho.label), value}});
              if (static_cast<int>(top.size()) > top_channels) top.pop();
            }
          }
        }
      }
    }
  }

  double running = 0.0;
  for (int i = 0; i < cutoff_count; ++i) {
    running += bins[i];
    result.sweep.push_back({cutoffs[i], running});
  }
  result.E2 = running;
  result.C6 = -result.E2 * std::pow(result.R, 6);
  const double scale = std::abs(result.E2);
  result.converged_cutoff = cutoffs[cutoff_count - 1];
  for (int i = cutoff_count - 1; i >= 0; --i) {
    if (std::abs(result.sweep[i].energy - result.E2) > options_.convergence * scale) break;
    result.converged_cutoff = cutoffs[i];
  }
  if (std::abs(result.sweep[cutoff_count - 2].energy - result.E2) > options_.convergence * scale)
    throw BasisTooSmall("dispersion sum still moves by more than " + std::to_string(options_.convergence) +
                        " above the last finite energy cutoff");

  while (!top.empty()) {
    result.channels.push_back(top.top().entry);
    top.pop();
  }
  std::reverse(result.channels.begin(), result.channels.end());
  return result;
}

VdwResult second_order_energy(const BoundState& alpha, const BoundState& beta, const Vec3& R, const AtomModel& model,
                              const RadialBasis& basis, const DispersionOptions& options) {
  return DispersionSum(alpha, beta, model, basis, options)(R);
}

std::pair<double, double> first_order_energy(const BoundState& alpha, const BoundState& beta, const Vec3& R,
                                             const AtomModel& model, int order) {
  const double direct = coupling(alpha, beta, alpha, beta, model, R, order).real();
  const double exchange = coupling(beta, alpha, alpha, beta, model, R, order).real();
  return {direct, exchange};
}

double isotropic_c6(const BoundState& alpha, const BoundState& beta, const AtomModel& model, const RadialBasis& basis) {
  // Σ_m |<λ m|d|initial>|² for every radial state of the dipole-allowed waves.
  auto strengths = [&](const BoundState& initial) {
    std::vector<std::pair<double, double>> out;  // (energy, strength)
    for (const auto& [l, states] : basis.channels) {
      if (std::abs(l - initial.l()) != 1) continue;
      for (const auto& s : states) {
        double total = 0.0;
        for (int m = -l; m <= l; ++m) total += atoms::dipole_matrix(with_m(s, m), initial, model).squaredNorm();
        out.emplace_back(s.energy, total);
      }
    }
    return out;
  };
  const auto sa = strengths(alpha);
  const auto sb = strengths(beta);
  double sum = 0.0;
  for (const auto& [ea, fa] : sa)
    for (const auto& [eb, fb] : sb) {
      const double gap = ea + eb - alpha.energy - beta.energy;
      if (std::abs(gap) < 1e-10) continue;
      sum += fa * fb / gap;
    }
  return 2.0 / 3.0 * sum;
}

EffectivePotential effective_potential(const BoundState& alpha, const AtomModel& model, const RadialBasis& basis,
                                       const std::vector<double>& radii, const DispersionOptions& options) {
  if (radii.empty()) throw ValidationError("effective potential needs at least one separation");
  const DispersionSum sum(alpha, alpha, model, basis, options);
  EffectivePotential out;
  for (double r : radii) {
    out.R.push_back(r);
    out.V.push_back(sum(Vec3(0.0, 0.0, r), 0).E2);
  }
  const auto last = std::max_element(out.R.begin(), out.R.end()) - out.R.begin();
  out.C6 = -out.V[last] * std::pow(out.R[last], 6);
  for (std::size_t i = 0; i < out.R.size(); ++i)
    out.plateau_spread = std::max(out.plateau_spread, std::abs(-out.V[i] * std::pow(out.R[i], 6) / out.C6 - 1.0));
  return out;
}

double matrix_route_energy(const BoundState& alpha, const BoundState& beta, const Vec3& R, const AtomModel& model,
                           const RadialBasis& basis, int order, double degenerate_gap) {
  const int top = combined_rank(order);
  struct Entry {
    double energy;
    TransitionMoments moments;
  };
  auto expand = [&](const BoundState& initial) {
    std::vector<Entry> out;
    for (const auto& [l, states] : basis.channels)
      for (const auto& s : states)
        for (int m = -l; m <= l; ++m) out.push_back({s.energy, transition_moments(with_m(s, m), initial, model, top)});
    return out;
  };
  const auto side_a = expand(alpha);
  const auto side_b = expand(beta);

  // g holds every coupling <λρ|V|αβ>; D the inverse energy denominators.
  const std::size_t n = side_a.size() * side_b.size();
  Eigen::VectorXcd g(n);
  Eigen::VectorXd d(n);
  std::size_t idx = 0;
  for (const auto& a : side_a)
    for (const auto& b : side_b) {
      const double gap = alpha.energy + beta.energy - a.energy - b.energy;
      g(idx) = coupling(a.moments, b.moments, R, order);
      d(idx) = std::abs(gap) < degenerate_gap ? 0.0 : 1.0 / gap;
      ++idx;
    }
  return (g.adjoint() * d.asDiagonal() * g).value().real();
}

}  // namespace bsl::vdw
