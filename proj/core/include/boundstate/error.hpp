#pragma once

#include <stdexcept>
#include <string>

namespace bsl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input: out-of-range parameters, inadmissible geometry. The CLI exits 2.
struct ValidationError : Error {
  using Error::Error;
};

// A computation ran but could not meet its own accuracy contract. The CLI exits 3.
struct NumericalError : Error {
  using Error::Error;
};

#define BSL_DEFINE_ERROR(name, base) \
  struct name : base {               \
    using base::base;                \
  };

BSL_DEFINE_ERROR(CapExceeded, ValidationError)
BSL_DEFINE_ERROR(OffGrid, ValidationError)
BSL_DEFINE_ERROR(SeparationViolated, ValidationError)
BSL_DEFINE_ERROR(IncompatibleBoost, ValidationError)
BSL_DEFINE_ERROR(UnboundVariable, ValidationError)
BSL_DEFINE_ERROR(NotDownhill, ValidationError)
BSL_DEFINE_ERROR(ZeroMomentumTransfer, ValidationError)
BSL_DEFINE_ERROR(ResonanceHit, ValidationError)
BSL_DEFINE_ERROR(SeparationTooSmall, ValidationError)
BSL_DEFINE_ERROR(ParseError, ValidationError)

BSL_DEFINE_ERROR(NoBoundState, NumericalError)
BSL_DEFINE_ERROR(GridTooCoarse, NumericalError)
BSL_DEFINE_ERROR(QuadratureNotConverged, NumericalError)
BSL_DEFINE_ERROR(BasisTooSmall, NumericalError)
BSL_DEFINE_ERROR(DegenerateDenominator, NumericalError)

#undef BSL_DEFINE_ERROR

}  // namespace bsl
