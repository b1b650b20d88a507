#include "boundstate/fock/mode_space.hpp"

#include <algorithm>
#include <cmath>

#include "boundstate/error.hpp"
#include "boundstate/parallel.hpp"

namespace bsl::fock {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

// All occupations of one group, ordered by total then lexicographically (vacuum first).
std::vector<Occupation> group_states(const ModeGroup& g) {
  std::vector<Occupation> out;
  const int per_mode = g.statistics == Statistics::fermion ? 1 : g.max_total;
  Occupation occ(g.modes, 0);
  for (int total = 0; total <= g.max_total; ++total) {
    std::function<void(int, int)> fill = [&](int mode, int remaining) {
      if (mode == g.modes) {
        if (remaining == 0) out.push_back(occ);
        return;
      }
      for (int n = std::min(per_mode, remaining); n >= 0; --n) {
        occ[mode] = static_cast<std::uint8_t>(n);
        fill(mode + 1, remaining - n);
      }
      occ[mode] = 0;
    };
    fill(0, total);
  }
  return out;
}

std::string key_of(const std::uint8_t* begin, std::size_t n) { return std::string(begin, begin + n); }

}  // namespace

double ModeSpace::count_states(const std::vector<ModeGroup>& groups) {
  double total = 1.0;
  for (const auto& g : groups) {
    double count = 0.0;
    for (int k = 0; k <= g.max_total; ++k)
      count += g.statistics == Statistics::fermion ? binomial(g.modes, k) : binomial(g.modes + k - 1, k);
    total *= count;
  }
  return total;
}

ModeSpace::ModeSpace(std::vector<ModeGroup> groups, std::size_t cap) : groups_(std::move(groups)) {
  for (const auto& g : groups_) {
    if (g.modes < 0 || g.max_total < 0) throw ValidationError("mode group '" + g.name + "' has negative size");
    if (g.statistics == Statistics::boson && g.max_total > 255) throw ValidationError("boson cap above 255");
  }
  const double size = count_states(groups_);
  if (size > static_cast<double>(cap))
    throw CapExceeded("basis of " + std::to_string(static_cast<long long>(size)) + " states exceeds the cap of " +
                      std::to_string(cap));

  for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
    offsets_.push_back(modes_);
    for (int k = 0; k < groups_[gi].modes; ++k) {
      group_of_.push_back(static_cast<int>(gi));
      fermionic_.push_back(groups_[gi].statistics == Statistics::fermion);
    }
    modes_ += groups_[gi].modes;
  }

  std::vector<std::vector<Occupation>> per_group;
  for (const auto& g : groups_) per_group.push_back(group_states(g));
  count_ = static_cast<std::size_t>(size);
  data_.reserve(count_ * modes_);
  // Cartesian product, first group outermost.
  std::vector<std::size_t> pick(groups_.size(), 0);
  for (std::size_t n = 0; n < count_; ++n) {
    for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
      const auto& occ = per_group[gi][pick[gi]];
      data_.insert(data_.end(), occ.begin(), occ.end());
    }
    for (std::size_t gi = groups_.size(); gi-- > 0;) {
      if (++pick[gi] < per_group[gi].size()) break;
      pick[gi] = 0;
    }
  }
  index_.reserve(count_);
  for (std::size_t n = 0; n < count_; ++n) index_.emplace(key_of(&data_[n * modes_], modes_), n);
}

Occupation ModeSpace::state(std::size_t index) const {
  return Occupation(data_.begin() + index * modes_, data_.begin() + (index + 1) * modes_);
}

long ModeSpace::find(const Occupation& occ) const {
  const auto it = index_.find(key_of(occ.data(), occ.size()));
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

double ModeSpace::apply(const std::vector<Ladder>& ops, Occupation& occ) const {
  double amplitude = 1.0;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    const int m = it->mode;
    std::uint8_t& n = occ[m];
    if (fermionic_[m]) {
      if (it->dagger == (n == 1)) return 0.0;
      int parity = 0;
      for (int k = 0; k < m; ++k)
        if (fermionic_[k]) parity += occ[k];
      if (parity % 2) amplitude = -amplitude;
      n = it->dagger ? 1 : 0;
    } else if (it->dagger) {
      amplitude *= std::sqrt(n + 1.0);
      ++n;
    } else {
      if (n == 0) return 0.0;
      amplitude *= std::sqrt(static_cast<double>(n));
      --n;
    }
  }
  return amplitude;
}

OperatorMatrix::OperatorMatrix(std::shared_ptr<const ModeSpace> space, Sparse matrix)
    : space_(std::move(space)), m_(std::move(matrix)) {
  if (m_.rows() != static_cast<Eigen::Index>(space_->dimension()) || m_.cols() != m_.rows())
    throw std::invalid_argument("operator matrix does not match its space");
}

OperatorMatrix OperatorMatrix::zero(std::shared_ptr<const ModeSpace> space) {
  const auto n = static_cast<Eigen::Index>(space->dimension());
  return OperatorMatrix(std::move(space), Sparse(n, n));
}

OperatorMatrix OperatorMatrix::identity(std::shared_ptr<const ModeSpace> space) {
  const auto n = static_cast<Eigen::Index>(space->dimension());
  Sparse id(n, n);
  id.setIdentity();
  return OperatorMatrix(std::move(space), std::move(id));
}

OperatorMatrix OperatorMatrix::from_terms(std::shared_ptr<const ModeSpace> space, const std::vector<Term>& terms) {
  using Triplet = Eigen::Triplet<cplx>;
  const std::size_t dim = space->dimension();
  const std::size_t chunks = std::min<std::size_t>(dim, 64);
  std::vector<std::vector<Triplet>> parts(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = dim * c / chunks, end = dim * (c + 1) / chunks;
    for (std::size_t col = begin; col < end; ++col) {
      for (const Term& t : terms) {
        Occupation occ = space->state(col);
        const double amp = space->apply(t.ops, occ);
        if (amp == 0.0) continue;
        const long row = space->find(occ);
        if (row < 0) continue;
        parts[c].emplace_back(static_cast<int>(row), static_cast<int>(col), t.coefficient * amp);
      }
    }
  });
  std::vector<Triplet> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  const auto n = static_cast<Eigen::Index>(dim);
  Sparse m(n, n);
  m.setFromTriplets(all.begin(), all.end());
  return OperatorMatrix(std::move(space), std::move(m));
}

OperatorMatrix OperatorMatrix::diagonal(std::shared_ptr<const ModeSpace> space,
                                        const std::function<cplx(std::size_t)>& value) {
  const std::size_t dim = space->dimension();
  std::vector<cplx> values(dim);
  parallel_for(dim, [&](std::size_t i) { values[i] = value(i); });
  std::vector<Eigen::Triplet<cplx>> trip;
  for (std::size_t i = 0; i < dim; ++i)
    if (values[i] != 0.0) trip.emplace_back(static_cast<int>(i), static_cast<int>(i), values[i]);
  const auto n = static_cast<Eigen::Index>(dim);
  Sparse m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  return OperatorMatrix(std::move(space), std::move(m));
}

OperatorMatrix OperatorMatrix::adjoint() const { return OperatorMatrix(space_, Sparse(m_.adjoint())); }

double OperatorMatrix::max_abs() const {
  double out = 0.0;
  for (Eigen::Index k = 0; k < m_.outerSize(); ++k)
    for (Sparse::InnerIterator it(m_, k); it; ++it) out = std::max(out, std::abs(it.value()));
  return out;
}

namespace {
void require_same(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.space() != b.space()) throw std::invalid_argument("operators live on different spaces");
}
}  // namespace

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same(a, b);
  return OperatorMatrix(a.space_, OperatorMatrix::Sparse(a.m_ + b.m_));
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same(a, b);
  return OperatorMatrix(a.space_, OperatorMatrix::Sparse(a.m_ - b.m_));
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same(a, b);
  return OperatorMatrix(a.space_, OperatorMatrix::Sparse(a.m_ * b.m_));
}

OperatorMatrix operator*(cplx s, const OperatorMatrix& a) { return OperatorMatrix(a.space_, OperatorMatrix::Sparse(s * a.m_)); }

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& b) {
  require_same(*this, b);
  m_ += b.m_;
  return *this;
}

OperatorMatrix anticommutator(const OperatorMatrix& a, const OperatorMatrix& b) { return a * b + b * a; }
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) { return a * b - b * a; }

Eigen::VectorXcd basis_vector(const ModeSpace& space, std::size_t index) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dimension()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

Eigen::VectorXcd vacuum_vector(const ModeSpace& space) { return basis_vector(space, space.vacuum()); }

Eigen::VectorXcd apply_terms(const ModeSpace& space, const std::vector<Term>& terms, const Eigen::VectorXcd& state) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.size());
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    if (state[i] == 0.0) continue;
    const Occupation occ = space.state(static_cast<std::size_t>(i));
    for (const auto& t : terms) {
      Occupation next = occ;
      const double amp = space.apply(t.ops, next);
      if (amp == 0.0) continue;
      const long row = space.find(next);
      if (row >= 0) out[row] += t.coefficient * amp * state[i];
    }
  }
  return out;
}

}  // namespace bsl::fock
