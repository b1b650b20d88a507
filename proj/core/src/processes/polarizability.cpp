#include "boundstate/processes/polarizability.hpp"

#include <algorithm>
#include <cmath>

#include "boundstate/atoms/matrix_elements.hpp"
#include "boundstate/error.hpp"

namespace bsl::processes {

namespace {

double contribution(const atoms::BoundState& alpha, const atoms::BoundState& beta, const atoms::AtomModel& model) {
  const double strength = std::norm(atoms::dipole_matrix(alpha, beta, model)(2));
  if (strength == 0.0) return 0.0;
  const double gap = beta.energy - alpha.energy;
  if (std::abs(gap) < 1e-12)
    throw DegenerateDenominator("state " + beta.label.str() + " is degenerate with " + alpha.label.str());
  return 2.0 * strength / gap;
}

}  // namespace

double static_polarizability(const atoms::BoundState& alpha, const std::vector<atoms::BoundState>& intermediates,
                             const atoms::AtomModel& model) {
  double sum = 0.0;
  for (const auto& beta : intermediates) sum += contribution(alpha, beta, model);
  return sum;
}

double static_polarizability(const atoms::BoundState& alpha, const atoms::PseudoSpectrum& basis,
                             const PolarizabilityOptions& options) {
  std::vector<std::pair<double, double>> terms;  // (energy, contribution)
  for (int l : {alpha.l() - 1, alpha.l() + 1}) {
    if (l < 0) continue;
    if (l > basis.l_max()) throw ValidationError("pseudo-spectrum lacks the l = " + std::to_string(l) + " channel");
    for (const auto& beta : basis.states(l, true)) terms.emplace_back(beta.energy, contribution(alpha, beta, basis.model()));
  }
  std::sort(terms.begin(), terms.end());
  double total = 0.0, tail = 0.0;
  const std::size_t tail_start = terms.size() - terms.size() / 10;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    total += terms[i].second;
    if (i >= tail_start) tail += terms[i].second;
  }
  if (std::abs(tail) > options.tail_tolerance * std::abs(total))
    throw BasisTooSmall("highest tenth of the basis carries " + std::to_string(tail / total) +
                        " of the polarizability");
  return total;
}

}  // namespace bsl::processes
