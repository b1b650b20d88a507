#include "boundstate/processes/emission.hpp"

#include <cmath>
#include <memory>

#include <Eigen/Geometry>

#include "boundstate/atoms/form_factors.hpp"
#include "boundstate/atoms/matrix_elements.hpp"
#include "boundstate/error.hpp"
#include "boundstate/quadrature.hpp"

namespace bsl::processes {

std::pair<Vec3, Vec3> transverse_polarizations(const Vec3& direction) {
  const Vec3 n = direction.normalized();
  const Vec3 helper = std::abs(n.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  const Vec3 first = n.cross(helper).normalized();
  return {first, n.cross(first)};
}

double photon_energy(double gap, const AtomModel& model, MassMode mass) {
  if (mass == MassMode::infinite || model.static_nucleus()) return gap;
  // Root of gap = omega + omega²/(2 M c²), the recoil momentum being omega/c,
  // written without the cancellation in sqrt(1 + x) - 1.
  const double rest = model.total_mass() * speed_of_light * speed_of_light;
  return 2.0 * gap / (std::sqrt(1.0 + 2.0 * gap / rest) + 1.0);
}

TransitionResult emission_rate(const BoundState& initial, const BoundState& final_state, const AtomModel& model,
                               const EmissionOptions& options) {
  if (!(initial.energy > final_state.energy))
    throw NotDownhill("emission needs the initial level above the final one (" + initial.label.str() + " -> " +
                      final_state.label.str() + ")");
  const double gap = initial.energy - final_state.energy;
  const double omega = photon_energy(gap, model, options.mass);
  const double c = speed_of_light;
  // d(gap - omega - omega²/2Mc²)/d omega, the density-of-states Jacobian of the recoil.
  const double jacobian = options.mass == MassMode::finite && !model.static_nucleus()
                              ? 1.0 / (1.0 + omega / (model.total_mass() * c * c))
                              : 1.0;

  TransitionResult result;
  result.initial = initial.label;
  result.final_state = final_state.label;
  result.omega = omega;

  if (options.form == EmissionForm::dipole) {
    const CVec3 d = atoms::dipole_matrix(final_state, initial, model);
    const double prefactor = jacobian * std::pow(omega, 3) / (2.0 * pi * std::pow(c, 3));
    result.differential = [d, prefactor](const Vec3& n) {
      const Vec3 u = n.normalized();
      return prefactor * (d.squaredNorm() - std::norm(dot(u.cast<cplx>(), d)));
    };
    result.rate_au = jacobian * 4.0 / 3.0 * std::pow(omega, 3) * d.squaredNorm() / std::pow(c, 3);
  } else {
    auto evaluator = std::make_shared<const atoms::FormFactorEvaluator>(final_state, initial, model);
    const double prefactor = jacobian * omega / (2.0 * pi * std::pow(c, 3));
    result.differential = [evaluator, prefactor, omega, c](const Vec3& n) {
      const Vec3 u = n.normalized();
      // The recoil term (p+p')/2M · g is longitudinal and drops out against transverse polarizations.
      const CVec3 current = (*evaluator)(-omega / c * u).gvec;
      const auto [e1, e2] = transverse_polarizations(u);
      return prefactor * (std::norm(dot(e1.cast<cplx>(), current)) + std::norm(dot(e2.cast<cplx>(), current)));
    };
  }

  const SphereRule rule = rotated(sphere_rule(options.polar_nodes, options.azimuth_nodes), options.frame);
  double integral = 0.0;
  for (std::size_t p = 0; p < rule.directions.size(); ++p) integral += rule.weights[p] * result.differential(rule.directions[p]);
  result.quadrature_rate_au = integral;
  if (options.form == EmissionForm::form_factor) result.rate_au = integral;
  result.rate_per_s = per_second(result.rate_au);
  return result;
}

double shell_emission_rate(const BoundState& initial, int final_n, int final_l, const AtomModel& model,
                           const EmissionOptions& options) {
  double total = 0.0;
  for (int m = -final_l; m <= final_l; ++m)
    total += emission_rate(initial, atoms::analytic_state(model, {final_n, final_l, m}), model, options).rate_au;
  return total;
}

}  // namespace bsl::processes
