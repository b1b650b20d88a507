#include "boundstate/fock/fock_space.hpp"

#include <cmath>
#include <string>

#include "boundstate/error.hpp"

namespace bsl::fock {

LatticeFockSpace::LatticeFockSpace(LatticeConfig config, int max_n1, int max_n2, std::size_t cap)
    : config_((config.validate(), std::move(config))), geometry_(config_), max_n1_(max_n1), max_n2_(max_n2) {
  if (max_n1 < 0 || max_n2 < 0) throw ValidationError("particle limits must be non-negative");
  modes_ = std::make_shared<const ModeSpace>(
      std::vector<ModeGroup>{{"psi1", Statistics::fermion, config_.sites, std::min(max_n1, config_.sites)},
                             {"psi2", Statistics::fermion, config_.sites, std::min(max_n2, config_.sites)}},
      cap);
}

LatticeFockSpace enumerate_basis(const LatticeConfig& config, int max_n1, int max_n2, std::size_t cap) {
  return LatticeFockSpace(config, max_n1, max_n2, cap);
}

int LatticeFockSpace::mode(int species, int site) const {
  if (species != 1 && species != 2) throw ValidationError("species must be 1 or 2");
  if (site < 0 || site >= config_.sites) throw ValidationError("site " + std::to_string(site) + " outside the lattice");
  return (species - 1) * config_.sites + site;
}

OperatorMatrix LatticeFockSpace::field(int species, int site, bool dagger) const {
  return OperatorMatrix::from_terms(modes_, {Term{1.0, {ladder(species, site, dagger)}}});
}

OperatorMatrix LatticeFockSpace::number(int species) const {
  const int offset = (species - 1) * config_.sites;
  return OperatorMatrix::diagonal(modes_, [&](std::size_t i) {
    int n = 0;
    for (int x = 0; x < config_.sites; ++x) n += modes_->occupation(i, offset + x);
    return cplx(n);
  });
}

int centre_site(double centre, const LatticeConfig& config) {
  const double refined = centre * config.total_mass();
  if (std::abs(refined - std::round(refined)) > 1e-9)
    throw OffGrid("centre " + std::to_string(centre) + " is not on the mass-refined grid");
  const long r = std::lround(refined);
  if (r % config.total_mass() != 0)
    throw OffGrid("centre " + std::to_string(centre) + " lies between cells; composites sit on integer sites");
  const long site = r / config.total_mass();
  return static_cast<int>(((site % config.sites) + config.sites) % config.sites);
}

std::vector<Term> LatticeFockSpace::composite_terms(const PairSpectrum& spectrum, int alpha, double centre,
                                                    bool dagger) const {
  const int X = centre_site(centre, config_);
  std::vector<Term> terms;
  for (int y : geometry_.offsets()) {
    const double amp = spectrum.phi(alpha, y);
    if (amp == 0.0) continue;
    const auto [x1, x2] = geometry_.constituents(X, y);
    if (dagger)
      terms.push_back({amp, {ladder(1, x1, true), ladder(2, x2, true)}});
    else
      terms.push_back({amp, {ladder(2, x2, false), ladder(1, x1, false)}});
  }
  return terms;
}

OperatorMatrix LatticeFockSpace::composite(const PairSpectrum& spectrum, int alpha, double centre, bool dagger) const {
  return OperatorMatrix::from_terms(modes_, composite_terms(spectrum, alpha, centre, dagger));
}

OperatorMatrix LatticeFockSpace::kinetic() const {
  std::vector<Term> terms;
  const int L = config_.sites;
  for (int species : {1, 2}) {
    const double t = 1.0 / (2.0 * (species == 1 ? config_.mass1 : config_.mass2));
    for (int x = 0; x < L; ++x) {
      const int next = geometry_.wrap(x + 1);
      terms.push_back({2.0 * t, {ladder(species, x, true), ladder(species, x, false)}});
      terms.push_back({-t, {ladder(species, x, true), ladder(species, next, false)}});
      terms.push_back({-t, {ladder(species, next, true), ladder(species, x, false)}});
    }
  }
  return OperatorMatrix::from_terms(modes_, terms);
}

OperatorMatrix LatticeFockSpace::potential() const {
  const int L = config_.sites;
  const auto& v = config_.potential;
  return OperatorMatrix::diagonal(modes_, [&](std::size_t i) {
    double e = 0.0;
    for (int x = 0; x < L; ++x) {
      const bool a1 = modes_->occupation(i, x), a2 = modes_->occupation(i, L + x);
      if (!a1 && !a2) continue;
      for (int x2 = 0; x2 < L; ++x2) {
        const int d = geometry_.distance(x, x2);
        if (a1 && modes_->occupation(i, L + x2)) e += v.v12[d];
        if (x2 <= x) continue;
        if (a1 && modes_->occupation(i, x2)) e += v.v11[d];
        if (a2 && modes_->occupation(i, L + x2)) e += v.v22[d];
      }
    }
    return cplx(e);
  });
}

}  // namespace bsl::fock
