#include "boundstate/atoms/model.hpp"

#include <cmath>
#include <sstream>

#include "boundstate/error.hpp"
#include "boundstate/units.hpp"

namespace bsl::atoms {

AtomModel::AtomModel(double m1, double m2, double e1, double e2) : m1_(m1), m2_(m2), e1_(e1), e2_(e2) {
  if (!(m1 > 0.0) || !(m2 > 0.0) || std::isinf(m1))
    throw ValidationError("masses must be positive; only m2 may be infinite");
  if (!(-e1 * e2 > 0.0)) throw ValidationError("charges must attract (e1*e2 < 0)");
  if (static_nucleus()) {
    total_ = m2;
    mu_ = m1;
  } else {
    total_ = m1 + m2;
    mu_ = m1 * m2 / total_;
  }
}

AtomModel AtomModel::hydrogen() { return AtomModel(1.0, std::numeric_limits<double>::infinity()); }
AtomModel AtomModel::hydrogen_recoiling() { return AtomModel(1.0, proton_electron_mass_ratio); }
AtomModel AtomModel::positronium() { return AtomModel(1.0, 1.0); }

double AtomModel::share1() const { return static_nucleus() ? 1.0 : m2_ / total_; }
double AtomModel::share2() const { return static_nucleus() ? 0.0 : m1_ / total_; }

double AtomModel::dipole_charge() const { return e1_ * share1() - e2_ * share2(); }

double AtomModel::current_charge() const { return e1_ / m1_ - (static_nucleus() ? 0.0 : e2_ / m2_); }

double AtomModel::contact_charge() const {
  return e1_ * e1_ / m1_ + (static_nucleus() ? 0.0 : e2_ * e2_ / m2_);
}

std::string AtomModel::describe() const {
  std::ostringstream os;
  os << "m1=" << m1_ << " m2=" << (static_nucleus() ? std::string("inf") : std::to_string(m2_)) << " e1=" << e1_
     << " e2=" << e2_ << " mu=" << mu_;
  return os.str();
}

}  // namespace bsl::atoms
