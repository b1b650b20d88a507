#pragma once

#include <vector>

#include "boundstate/atoms/radial_grid.hpp"
#include "boundstate/atoms/states.hpp"

namespace bsl::processes {

struct PolarizabilityOptions {
  double tail_tolerance = 1e-3;  // allowed share of the top tenth (by energy) of intermediate states
};

// 2 Σ_β |<α|d_z|β>|² / (ε_β - ε_α) over the given states; no truncation check.
double static_polarizability(const atoms::BoundState& alpha, const std::vector<atoms::BoundState>& intermediates,
                             const atoms::AtomModel& model);

// Over the whole pseudo-spectrum. Throws BasisTooSmall when the highest tenth
// of the intermediate states carries more than tail_tolerance of the sum.
double static_polarizability(const atoms::BoundState& alpha, const atoms::PseudoSpectrum& basis,
                             const PolarizabilityOptions& options = {});

}  // namespace bsl::processes
