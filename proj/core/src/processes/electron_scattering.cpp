#include "boundstate/processes/electron_scattering.hpp"

#include "boundstate/atoms/matrix_elements.hpp"
#include "boundstate/error.hpp"

namespace bsl::processes {

namespace {

double checked_q2(const Vec3& q) {
  const double q2 = q.squaredNorm();
  if (q2 == 0.0) throw ZeroMomentumTransfer("momentum transfer must be nonzero");
  return q2;
}

}  // namespace

cplx electron_atom_amplitude(const atoms::BoundState& alpha, const atoms::BoundState& alpha_prime, const Vec3& q,
                             const atoms::AtomModel& model) {
  const double q2 = checked_q2(q);
  const CVec3 d = atoms::dipole_matrix(alpha_prime, alpha, model);
  return cplx(0.0, 4.0 * pi * model.e1() / q2) * dot(q.cast<cplx>(), d);
}

cplx electron_atom_born(const atoms::BoundState& alpha, const atoms::BoundState& alpha_prime, const Vec3& q,
                        const atoms::AtomModel& model, const atoms::FormFactorOptions& options) {
  const double q2 = checked_q2(q);
  return 4.0 * pi * model.e1() / q2 * atoms::FormFactorEvaluator(alpha_prime, alpha, model, options)(q).g;
}

}  // namespace bsl::processes
