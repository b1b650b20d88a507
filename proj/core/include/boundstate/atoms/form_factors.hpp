#pragma once

#include <vector>

#include "boundstate/atoms/states.hpp"
#include "boundstate/units.hpp"

namespace bsl::atoms {

// Transition charge, current and contact densities of the pair in momentum space:
//   g(k)    = ∫ (e1 P1 + e2 P2) φa* φb
//   gvec(k) = -(i/2) ∫ (e1/m1 P1 - e2/m2 P2) (φa* ∇φb - ∇φa* φb)
//   q(k)    = ∫ (e1²/m1 P1 + e2²/m2 P2) φa* φb
// with P1 = exp(i k·y m2/M), P2 = exp(-i k·y m1/M).
struct FormFactor {
  cplx g;
  CVec3 gvec;
  cplx q;
  bool long_wave = true;  // |k| r0 <= 0.3
};

struct FormFactorOptions {
  int radial_nodes = 48;
  int polar_nodes = 24;
  int azimuth_nodes = 24;
  double tolerance = 1e-8;  // two-resolution agreement required by form_factors()
};

// Tabulates φa, φb and their gradients on a fixed 3-D product grid once, so that
// evaluating many wavevectors only costs the phase factors.
class FormFactorEvaluator {
 public:
  FormFactorEvaluator(const BoundState& a, const BoundState& b, const AtomModel& model,
                      const FormFactorOptions& options = {});

  FormFactor operator()(const Vec3& k) const;

  // max(|∫|φa|² - 1|, |∫|φb|² - 1|) on the grid.
  double normalization_error() const { return normalization_error_; }
  double size() const { return r0_; }

 private:
  struct Point {
    Vec3 y;
    double weight;
    cplx density;  // φa* φb
    CVec3 current; // φa* ∇φb - ∇φa* φb
  };
  std::vector<Point> points_;
  double e1_, e2_, w1_, w2_, c1_, c2_, share1_, share2_;
  double normalization_error_ = 0.0;
  double r0_ = 0.0;
};

// Single evaluation with a convergence check against a finer grid.
FormFactor form_factors(const BoundState& a, const BoundState& b, const AtomModel& model, const Vec3& k,
                        const FormFactorOptions& options = {});

}  // namespace bsl::atoms
