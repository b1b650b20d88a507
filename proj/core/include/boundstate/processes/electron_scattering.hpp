#pragma once

#include "boundstate/atoms/form_factors.hpp"
#include "boundstate/atoms/states.hpp"
#include "boundstate/units.hpp"

namespace bsl::processes {

// First Born amplitude for a projectile of charge e1 (like constituent 1)
// exciting alpha -> alpha_prime with momentum transfer q, long-wave form:
//   4π i e1 (q·d_α'α) / q².
cplx electron_atom_amplitude(const atoms::BoundState& alpha, const atoms::BoundState& alpha_prime, const Vec3& q,
                             const atoms::AtomModel& model);

// Same amplitude with the full charge form factor, 4π e1 g_α'α(q) / q².
cplx electron_atom_born(const atoms::BoundState& alpha, const atoms::BoundState& alpha_prime, const Vec3& q,
                        const atoms::AtomModel& model, const atoms::FormFactorOptions& options = {});

}  // namespace bsl::processes
