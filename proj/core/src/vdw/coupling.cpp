#include "boundstate/vdw/coupling.hpp"

#include <cmath>

#include "boundstate/atoms/matrix_elements.hpp"
#include "boundstate/error.hpp"

namespace bsl::vdw {

namespace {

int power_of_three(int n) {
  int out = 1;
  for (int k = 0; k < n; ++k) out *= 3;
  return out;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

std::vector<double> derivative_tensor(int n, const Vec3& R) {
  const double r = R.norm();
  const double r2 = r * r;
  auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  std::vector<double> t(power_of_three(n));
  switch (n) {
    case 0:
      t[0] = 1.0 / r;
      break;
    case 1:
      for (int a = 0; a < 3; ++a) t[a] = -R(a) / (r2 * r);
      break;
    case 2:
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) t[3 * a + b] = (3.0 * R(a) * R(b) - r2 * delta(a, b)) / std::pow(r, 5);
      break;
    case 3:
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 3; ++c)
            t[9 * a + 3 * b + c] = -15.0 * R(a) * R(b) * R(c) / std::pow(r, 7) +
                                   3.0 * (R(a) * delta(b, c) + R(b) * delta(a, c) + R(c) * delta(a, b)) / std::pow(r, 5);
      break;
    default:
      throw ValidationError("derivative tensors are implemented up to third order");
  }
  return t;
}

int combined_rank(int order) {
  switch (order) {
    case 0: return 0;
    case 1: return 2;
    case 2: return 3;
    default: throw ValidationError("multipole order must be 0, 1 or 2");
  }
}

TransitionMoments transition_moments(const BoundState& final_state, const BoundState& initial,
                                     const AtomModel& model, int max_rank) {
  if (max_rank < 0 || max_rank > max_moment_rank) throw ValidationError("moment rank out of range");
  TransitionMoments out;
  out.max_rank = max_rank;
  for (int p = 0; p <= max_rank; ++p) {
    const double charge = model.e1() * std::pow(model.share1(), p) + model.e2() * std::pow(-model.share2(), p);
    out.rank[p] = atoms::moment_tensor(final_state, initial, p);
    for (auto& v : out.rank[p]) v *= charge;
  }
  return out;
}

cplx coupling(const TransitionMoments& a, const TransitionMoments& b, const Vec3& R, int order) {
  const int top = combined_rank(order);
  cplx total = 0.0;
  for (int p = 0; p <= std::min(top, a.max_rank); ++p) {
    for (int q = 0; q <= std::min(top - p, b.max_rank); ++q) {
      const auto t = derivative_tensor(p + q, R);
      const int width = power_of_three(q);
      cplx sum = 0.0;
      for (std::size_t i = 0; i < a.rank[p].size(); ++i) {
        if (a.rank[p][i] == 0.0) continue;
        for (std::size_t j = 0; j < b.rank[q].size(); ++j) sum += a.rank[p][i] * b.rank[q][j] * t[i * width + j];
      }
      total += (q % 2 ? -1.0 : 1.0) / (factorial(p) * factorial(q)) * sum;
    }
  }
  return total;
}

cplx coupling(const BoundState& delta, const BoundState& gamma, const BoundState& alpha, const BoundState& beta,
              const AtomModel& model, const Vec3& R, int order) {
  const int top = combined_rank(order);
  return coupling(transition_moments(delta, alpha, model, top), transition_moments(gamma, beta, model, top), R, order);
}

cplx dipole_dipole(const CVec3& d1, const CVec3& d2, const Vec3& x) {
  const CVec3 xc = x.cast<cplx>();
  const double r2 = x.squaredNorm();
  return (r2 * dot(d1, d2) - 3.0 * dot(xc, d1) * dot(xc, d2)) / std::pow(r2, 2.5);
}

SeparationCheck check_separation(const BoundState& alpha, const BoundState& beta, const AtomModel& model,
                                 const Vec3& R) {
  SeparationCheck check;
  check.size = std::max(atoms::bohr_radius(alpha, model), atoms::bohr_radius(beta, model));
  check.mass_size = std::max(atoms::mass_radius(alpha), atoms::mass_radius(beta));
  const double distance = R.norm();
  if (distance < 3.0 * check.size)
    throw SeparationTooSmall("separation " + std::to_string(distance) + " is below three atomic radii (" +
                             std::to_string(3.0 * check.size) + ")");
  check.comfortable = distance >= 3.0 * check.mass_size;
  return check;
}

}  // namespace bsl::vdw
