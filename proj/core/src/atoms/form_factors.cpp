#include "boundstate/atoms/form_factors.hpp"

#include <algorithm>
#include <cmath>

#include "boundstate/atoms/angular.hpp"
#include "boundstate/error.hpp"
#include "boundstate/quadrature.hpp"

namespace bsl::atoms {

namespace {

struct Orbital {
  cplx value;
  CVec3 gradient;
};

Orbital evaluate(const BoundState& s, const RadialSampler& radial, double r, double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  const cplx y = spherical_harmonic(s.l(), s.m(), theta, phi);
  const cplx dy = spherical_harmonic_dtheta(s.l(), s.m(), theta, phi);
  const double rv = radial.value(r);
  const double dr = radial.derivative(r);
  const Vec3 r_hat(st * cp, st * sp, ct);
  const Vec3 theta_hat(ct * cp, ct * sp, -st);
  const Vec3 phi_hat(-sp, cp, 0.0);
  const cplx d_phi = cplx(0.0, s.m()) * rv * y / (r * st);
  CVec3 grad = (dr * y) * r_hat.cast<cplx>() + (rv * dy / r) * theta_hat.cast<cplx>() + d_phi * phi_hat.cast<cplx>();
  return {rv * y, grad};
}

}  // namespace

FormFactorEvaluator::FormFactorEvaluator(const BoundState& a, const BoundState& b, const AtomModel& model,
                                         const FormFactorOptions& options)
    : e1_(model.e1()),
      e2_(model.e2()),
      w1_(model.e1() / model.m1()),
      w2_(model.e2() / model.m2()),
      c1_(model.e1() * model.e1() / model.m1()),
      c2_(model.e2() * model.e2() / model.m2()),
      share1_(model.share1()),
      share2_(model.share2()) {
  // Scale the radial rule to the slower of the two tails so that |φa|², |φb|²
  // and φa*φb all decay under the Laguerre weight.
  const double decay = std::max(2.0 * std::min(a.decay, b.decay), 0.05);
  const QuadratureRule radial = gauss_laguerre(options.radial_nodes);
  const auto log_w = gauss_laguerre_log_weights(radial);
  const SphereRule sphere = sphere_rule(options.polar_nodes, options.azimuth_nodes);
  const auto sa = a.radial.sampler();
  const auto sb = b.radial.sampler();

  double norm_a = 0.0, norm_b = 0.0;
  points_.reserve(radial.nodes.size() * sphere.directions.size());
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double r = radial.nodes[i] / decay;
    const double wr = std::exp(log_w[i]) / decay * r * r;
    for (std::size_t p = 0; p < sphere.directions.size(); ++p) {
      const double w = wr * sphere.weights[p];
      const Orbital fa = evaluate(a, *sa, r, sphere.theta[p], sphere.phi[p]);
      const Orbital fb = evaluate(b, *sb, r, sphere.theta[p], sphere.phi[p]);
      norm_a += w * std::norm(fa.value);
      norm_b += w * std::norm(fb.value);
      points_.push_back(Point{r * sphere.directions[p], w, std::conj(fa.value) * fb.value,
                              std::conj(fa.value) * fb.gradient - fa.gradient.conjugate() * fb.value});
    }
  }
  normalization_error_ = std::max(std::abs(norm_a - 1.0), std::abs(norm_b - 1.0));
  r0_ = std::max(mass_radius(a), mass_radius(b));
}

FormFactor FormFactorEvaluator::operator()(const Vec3& k) const {
  cplx g = 0.0, q = 0.0;
  CVec3 current = CVec3::Zero();
  for (const Point& p : points_) {
    const double phase = k.dot(p.y);
    const cplx p1 = std::polar(1.0, share1_ * phase);
    const cplx p2 = std::polar(1.0, -share2_ * phase);
    g += p.weight * (e1_ * p1 + e2_ * p2) * p.density;
    q += p.weight * (c1_ * p1 + c2_ * p2) * p.density;
    current += (p.weight * (w1_ * p1 - w2_ * p2)) * p.current;
  }
  return FormFactor{g, cplx(0.0, -0.5) * current, q, k.norm() * r0_ <= 0.3};
}

FormFactor form_factors(const BoundState& a, const BoundState& b, const AtomModel& model, const Vec3& k,
                        const FormFactorOptions& options) {
  const FormFactor coarse = FormFactorEvaluator(a, b, model, options)(k);
  FormFactorOptions finer = options;
  finer.radial_nodes += 16;
  finer.polar_nodes += 8;
  finer.azimuth_nodes += 8;
  const FormFactor fine = FormFactorEvaluator(a, b, model, finer)(k);
  const double scale = std::max({1.0, std::abs(fine.g), fine.gvec.norm(), std::abs(fine.q)});
  const double diff = std::max({std::abs(coarse.g - fine.g), (coarse.gvec - fine.gvec).norm(), std::abs(coarse.q - fine.q)});
  if (diff > options.tolerance * scale)
    throw QuadratureNotConverged("form factor quadrature changed by " + std::to_string(diff) +
                                 " under refinement (tolerance " + std::to_string(options.tolerance) + ")");
  return fine;
}

}  // namespace bsl::atoms
