#include "boundstate/fock/auxiliary.hpp"

#include <cmath>
#include <string>

#include "boundstate/error.hpp"

namespace bsl::fock {

namespace {

// t Σ_x (2 a†a - a†(x)a(x+1) - a†(x+1)a(x)) for one family of site-indexed modes.
void add_hopping(std::vector<Term>& terms, const std::function<Ladder(int, bool)>& mode, int sites, double t) {
  for (int x = 0; x < sites; ++x) {
    const int next = (x + 1) % sites;
    terms.push_back({2.0 * t, {mode(x, true), mode(x, false)}});
    terms.push_back({-t, {mode(x, true), mode(next, false)}});
    terms.push_back({-t, {mode(next, true), mode(x, false)}});
  }
}

// (1/2i) Σ_x (a†(x)a(x+1) - a†(x+1)a(x)).
void add_current(std::vector<Term>& terms, const std::function<Ladder(int, bool)>& mode, int sites) {
  const cplx half_over_i(0.0, -0.5);
  for (int x = 0; x < sites; ++x) {
    const int next = (x + 1) % sites;
    terms.push_back({half_over_i, {mode(x, true), mode(next, false)}});
    terms.push_back({-half_over_i, {mode(next, true), mode(x, false)}});
  }
}

}  // namespace

AuxiliarySpace::AuxiliarySpace(LatticeConfig config, PairSpectrum spectrum, int composites, int max_chi1,
                               int max_chi2, int max_eta, std::size_t cap)
    : config_((config.validate(), std::move(config))),
      geometry_(config_),
      spectrum_(std::move(spectrum)),
      composites_(composites) {
  if (composites < 0 || composites > spectrum_.bound_count)
    throw ValidationError("composite species must be bound states of the pair problem (" +
                          std::to_string(spectrum_.bound_count) + " available)");
  if (spectrum_.sites != config_.sites) throw ValidationError("pair spectrum was solved on a different lattice");
  const int L = config_.sites;
  modes_ = std::make_shared<const ModeSpace>(
      std::vector<ModeGroup>{{"chi1", Statistics::fermion, L, std::min(max_chi1, L)},
                             {"chi2", Statistics::fermion, L, std::min(max_chi2, L)},
                             {"eta", Statistics::boson, composites * L, max_eta}},
      cap);
}

Ladder AuxiliarySpace::chi(int species, int site, bool dagger) const {
  if (species != 1 && species != 2) throw ValidationError("species must be 1 or 2");
  if (site < 0 || site >= config_.sites) throw ValidationError("site outside the lattice");
  return {(species - 1) * config_.sites + site, dagger};
}

Ladder AuxiliarySpace::eta(int alpha, int centre, bool dagger) const {
  if (alpha < 0 || alpha >= composites_) throw ValidationError("composite label out of range");
  if (centre < 0 || centre >= config_.sites) throw ValidationError("centre outside the lattice");
  return {2 * config_.sites + alpha * config_.sites + centre, dagger};
}

OperatorMatrix AuxiliarySpace::chi_field(int species, int site, bool dagger) const {
  return OperatorMatrix::from_terms(modes_, {Term{1.0, {chi(species, site, dagger)}}});
}

OperatorMatrix AuxiliarySpace::eta_field(int alpha, int centre, bool dagger) const {
  return OperatorMatrix::from_terms(modes_, {Term{1.0, {eta(alpha, centre, dagger)}}});
}

OperatorMatrix AuxiliarySpace::free_part() const {
  std::vector<Term> terms;
  const int L = config_.sites;
  add_hopping(terms, [&](int x, bool d) { return chi(1, x, d); }, L, 1.0 / (2.0 * config_.mass1));
  add_hopping(terms, [&](int x, bool d) { return chi(2, x, d); }, L, 1.0 / (2.0 * config_.mass2));
  for (int a = 0; a < composites_; ++a) {
    add_hopping(terms, [&](int x, bool d) { return eta(a, x, d); }, L, 1.0 / (2.0 * config_.total_mass()));
    for (int X = 0; X < L; ++X) terms.push_back({spectrum_.states[a].energy, {eta(a, X, true), eta(a, X, false)}});
  }
  return OperatorMatrix::from_terms(modes_, terms);
}

OperatorMatrix AuxiliarySpace::internal_potential() const {
  std::vector<Term> terms;
  for (int ap = 0; ap < composites_; ++ap)
    for (int a = 0; a < composites_; ++a) {
      double overlap = 0.0;
      for (int y : geometry_.offsets())
        overlap += spectrum_.phi(ap, y) * config_.potential.v12[std::abs(y)] * spectrum_.phi(a, y);
      if (overlap == 0.0) continue;
      for (int X = 0; X < config_.sites; ++X) terms.push_back({overlap, {eta(ap, X, true), eta(a, X, false)}});
    }
  return OperatorMatrix::from_terms(modes_, terms);
}

OperatorMatrix AuxiliarySpace::fermion_composite() const {
  std::vector<Term> terms;
  const int L = config_.sites;
  const auto& v = config_.potential;
  for (int species : {1, 2}) {
    const auto& same = species == 1 ? v.v11 : v.v22;
    for (int x = 0; x < L; ++x)
      for (int X = 0; X < L; ++X)
        for (int ap = 0; ap < composites_; ++ap)
          for (int a = 0; a < composites_; ++a) {
            double kernel = 0.0;
            for (int y : geometry_.offsets()) {
              const auto [x1, x2] = geometry_.constituents(X, y);
              const int like = species == 1 ? x1 : x2;
              const int unlike = species == 1 ? x2 : x1;
              kernel += spectrum_.phi(ap, y) * spectrum_.phi(a, y) *
                        (same[geometry_.distance(x, like)] + v.v12[geometry_.distance(x, unlike)]);
            }
            if (kernel == 0.0) continue;
            terms.push_back({kernel, {chi(species, x, true), chi(species, x, false), eta(ap, X, true), eta(a, X, false)}});
          }
  }
  return OperatorMatrix::from_terms(modes_, terms);
}

OperatorMatrix AuxiliarySpace::composite_composite() const {
  std::vector<Term> terms;
  const int L = config_.sites;
  const auto& v = config_.potential;
  const auto ys = geometry_.offsets();
  const int n = composites_;
  for (int X1 = 0; X1 < L; ++X1)
    for (int X2 = 0; X2 < L; ++X2) {
      // Constituent-pair potential for every (y1, y2).
      std::vector<double> pot(ys.size() * ys.size());
      for (std::size_t i = 0; i < ys.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) {
          const auto [a1, a2] = geometry_.constituents(X1, ys[i]);
          const auto [b1, b2] = geometry_.constituents(X2, ys[j]);
          pot[i * ys.size() + j] = v.v11[geometry_.distance(a1, b1)] + v.v22[geometry_.distance(a2, b2)] +
                                   v.v12[geometry_.distance(a1, b2)] + v.v12[geometry_.distance(b1, a2)];
        }
      for (int ap = 0; ap < n; ++ap)
        for (int a = 0; a < n; ++a)
          for (int bp = 0; bp < n; ++bp)
            for (int b = 0; b < n; ++b) {
              double kernel = 0.0;
              for (std::size_t i = 0; i < ys.size(); ++i) {
                const double first = spectrum_.phi(ap, ys[i]) * spectrum_.phi(a, ys[i]);
                if (first == 0.0) continue;
                for (std::size_t j = 0; j < ys.size(); ++j)
                  kernel += first * spectrum_.phi(bp, ys[j]) * spectrum_.phi(b, ys[j]) * pot[i * ys.size() + j];
              }
              if (kernel == 0.0) continue;
              terms.push_back({0.5 * kernel, {eta(ap, X1, true), eta(bp, X2, true), eta(b, X2, false), eta(a, X1, false)}});
            }
    }
  return OperatorMatrix::from_terms(modes_, terms);
}

OperatorMatrix AuxiliarySpace::fermion_fermion() const {
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

OperatorMatrix AuxiliarySpace::tilde_field(int species, int site, bool dagger, TildeSign sign) const {
  const int other = species == 1 ? 2 : 1;
  const double correction_sign = species == 2 && sign == TildeSign::consistent ? -1.0 : 1.0;
  std::vector<Term> terms{{1.0, {chi(species, site, dagger)}}};
  for (int partner = 0; partner < config_.sites; ++partner) {
    // The composite whose species-`species` constituent sits at `site` and the other at `partner`.
    const auto [X, y] = species == 1 ? geometry_.cell(site, partner) : geometry_.cell(partner, site);
    for (int a = 0; a < composites_; ++a) {
      const double amp = correction_sign * spectrum_.phi(a, y);
      if (amp == 0.0) continue;
      if (dagger)
        terms.push_back({amp, {chi(other, partner, false), eta(a, X, true)}});
      else
        terms.push_back({amp, {eta(a, X, false), chi(other, partner, true)}});
    }
  }
  return OperatorMatrix::from_terms(modes_, terms);
}

OperatorMatrix AuxiliarySpace::number(int species) const {
  const int L = config_.sites;
  const int offset = (species - 1) * L;
  const int eta_offset = 2 * L;
  const int eta_modes = composites_ * L;
  return OperatorMatrix::diagonal(modes_, [&, offset](std::size_t i) {
    int n = 0;
    for (int x = 0; x < L; ++x) n += modes_->occupation(i, offset + x);
    for (int k = 0; k < eta_modes; ++k) n += modes_->occupation(i, eta_offset + k);
    return cplx(n);
  });
}

OperatorMatrix AuxiliarySpace::momentum() const {
  std::vector<Term> terms;
  const int L = config_.sites;
  add_current(terms, [&](int x, bool d) { return chi(1, x, d); }, L);
  add_current(terms, [&](int x, bool d) { return chi(2, x, d); }, L);
  for (int a = 0; a < composites_; ++a) add_current(terms, [&](int x, bool d) { return eta(a, x, d); }, L);
  return OperatorMatrix::from_terms(modes_, terms);
}

OperatorMatrix AuxiliarySpace::momentum_from_modes() const {
  // n_k = (1/L) Σ_{x,x'} e^{ik(x-x')} a†(x) a(x'), weighted by sin k.
  std::vector<Term> terms;
  const int L = config_.sites;
  auto add_family = [&](const std::function<Ladder(int, bool)>& mode) {
    for (int x = 0; x < L; ++x)
      for (int xp = 0; xp < L; ++xp) {
        cplx weight = 0.0;
        for (int j = 0; j < L; ++j) {
          const double k = 2.0 * pi * j / L;
          weight += std::sin(k) * std::polar(1.0, k * (x - xp)) / double(L);
        }
        if (std::abs(weight) < 1e-15) continue;
        terms.push_back({weight, {mode(x, true), mode(xp, false)}});
      }
  };
  add_family([&](int x, bool d) { return chi(1, x, d); });
  add_family([&](int x, bool d) { return chi(2, x, d); });
  for (int a = 0; a < composites_; ++a) add_family([&](int x, bool d) { return eta(a, x, d); });
  return OperatorMatrix::from_terms(modes_, terms);
}

OperatorMatrix AuxiliarySpace::translation() const {
  const int L = config_.sites;
  const int families = 2 + composites_;
  std::vector<Eigen::Triplet<cplx>> trip;
  for (std::size_t col = 0; col < dimension(); ++col) {
    // Rebuild the state by creating shifted quanta in the canonical (ascending mode) order.
    const Occupation occ = modes_->state(col);
    std::vector<Ladder> creators;
    double norm = 1.0;
    for (int f = 0; f < families; ++f)
      for (int x = 0; x < L; ++x) {
        const int n = occ[f * L + x];
        for (int q = 0; q < n; ++q) creators.push_back({f * L + (x + 1) % L, true});
        norm *= std::sqrt(std::tgamma(n + 1.0));
      }
    // Basis vectors are a†_{j1} a†_{j2} ... |0> (j ascending, bosons divided by √n!);
    // replaying the same order with shifted modes yields the permutation sign.
    Occupation out(occ.size(), 0);
    const double amp = modes_->apply(creators, out) / norm;
    const long row = modes_->find(out);
    if (row < 0 || amp == 0.0) continue;
    trip.emplace_back(static_cast<int>(row), static_cast<int>(col), amp);
  }
  const auto n = static_cast<Eigen::Index>(dimension());
  OperatorMatrix::Sparse m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  return OperatorMatrix(modes_, std::move(m));
}

OperatorMatrix AuxiliarySpace::boost(double velocity) const {
  const int L = config_.sites;
  auto integral = [&](double mass) {
    const double turns = mass * velocity * L / (2.0 * pi);
    return std::abs(turns - std::round(turns)) < 1e-9;
  };
  if (!integral(config_.mass1) || !integral(config_.mass2) || !integral(config_.total_mass()))
    throw IncompatibleBoost("m_i v L / 2π and M v L / 2π must be integers for a periodic boost");
  const double m1 = config_.mass1, m2 = config_.mass2, M = config_.total_mass();
  return OperatorMatrix::diagonal(modes_, [&](std::size_t i) {
    double phase = 0.0;
    for (int x = 0; x < L; ++x) {
      phase += m1 * x * modes_->occupation(i, x) + m2 * x * modes_->occupation(i, L + x);
      for (int a = 0; a < composites_; ++a) phase += M * x * modes_->occupation(i, 2 * L + a * L + x);
    }
    return std::polar(1.0, -velocity * phase);
  });
}

}  // namespace bsl::fock
