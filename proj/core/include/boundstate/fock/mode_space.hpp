#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "boundstate/units.hpp"

namespace bsl::fock {

inline constexpr std::size_t default_basis_cap = 2'000'000;

enum class Statistics { fermion, boson };

// A block of modes sharing statistics and a cap on its total occupation.
struct ModeGroup {
  std::string name;
  Statistics statistics;
  int modes;
  int max_total;
};

using Occupation = std::vector<std::uint8_t>;

// Elementary creation/annihilation on one mode.
struct Ladder {
  int mode;
  bool dagger;
};

// coefficient * ops[0] ops[1] ... ops[n-1]; the rightmost acts first.
struct Term {
  cplx coefficient;
  std::vector<Ladder> ops;
};

// Occupation-number basis over a list of mode groups. Fermion modes follow a
// single global order (group order, then mode order) for the Jordan-Wigner
// signs; bosons carry no sign. States leaving the truncated space are dropped.
class ModeSpace {
 public:
  ModeSpace(std::vector<ModeGroup> groups, std::size_t cap = default_basis_cap);

  std::size_t dimension() const { return count_; }
  int mode_count() const { return modes_; }
  const std::vector<ModeGroup>& groups() const { return groups_; }
  int group_offset(std::size_t group) const { return offsets_.at(group); }

  Occupation state(std::size_t index) const;
  std::uint8_t occupation(std::size_t index, int mode) const { return data_[index * modes_ + mode]; }
  // -1 when the occupation lies outside the space.
  long find(const Occupation& occ) const;
  std::size_t vacuum() const { return 0; }

  // Applies a product of ladder operators in place; returns the amplitude (0 when annihilated).
  double apply(const std::vector<Ladder>& ops, Occupation& occ) const;

  // Exact basis size for the given groups, without enumerating.
  static double count_states(const std::vector<ModeGroup>& groups);

 private:
  std::vector<ModeGroup> groups_;
  std::vector<int> offsets_;
  std::vector<int> group_of_;
  std::vector<bool> fermionic_;
  int modes_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Sparse operator on a ModeSpace. Value type; arithmetic requires a shared space.
class OperatorMatrix {
 public:
  using Sparse = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

  OperatorMatrix(std::shared_ptr<const ModeSpace> space, Sparse matrix);

  static OperatorMatrix zero(std::shared_ptr<const ModeSpace> space);
  static OperatorMatrix identity(std::shared_ptr<const ModeSpace> space);
  static OperatorMatrix from_terms(std::shared_ptr<const ModeSpace> space, const std::vector<Term>& terms);
  static OperatorMatrix diagonal(std::shared_ptr<const ModeSpace> space,
                                 const std::function<cplx(std::size_t index)>& value);

  const Sparse& matrix() const { return m_; }
  const std::shared_ptr<const ModeSpace>& space() const { return space_; }
  std::size_t dimension() const { return space_->dimension(); }

  OperatorMatrix adjoint() const;
  Eigen::VectorXcd operator*(const Eigen::VectorXcd& v) const { return m_ * v; }
  cplx element(const Eigen::VectorXcd& bra, const Eigen::VectorXcd& ket) const { return bra.dot(m_ * ket); }
  // Largest entry magnitude; the norm used by every identity check.
  double max_abs() const;

  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(cplx s, const OperatorMatrix& a);
  OperatorMatrix& operator+=(const OperatorMatrix& b);

 private:
  std::shared_ptr<const ModeSpace> space_;
  Sparse m_;
};

OperatorMatrix anticommutator(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

// Basis vector for an occupation, or the state produced by creation operators on the vacuum.
Eigen::VectorXcd basis_vector(const ModeSpace& space, std::size_t index);
Eigen::VectorXcd vacuum_vector(const ModeSpace& space);

// Applies a sum of terms to a state with few components, without building a matrix.
Eigen::VectorXcd apply_terms(const ModeSpace& space, const std::vector<Term>& terms, const Eigen::VectorXcd& state);

}  // namespace bsl::fock
