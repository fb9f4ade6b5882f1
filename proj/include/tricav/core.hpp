#pragma once

// Dense complex linear algebra on small joint Hilbert spaces: ladder and Pauli
// operators, Kronecker products, subsystem embedding, partial traces and the
// handful of decompositions the rest of the library needs.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "tricav/error.hpp"

namespace tricav {

using Index = Eigen::Index;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
/// Column-major working copy handed to Eigen's decompositions.
template <typename Real>
using DenseWork = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

using cdouble = std::complex<double>;
using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;

/// Relative threshold below which an eigenvalue counts as zero.
inline constexpr double kZeroEigenvalueTolerance = 1e-10;

/// Ordered subsystem dimensions of a tensor-product space. Subsystem indices
/// are zero-based; for the resonator/atom system slot 0 is resonator 1, slot 1
/// is resonator 2 and slot 2 is the atom, so |n1 n2 a> maps to
/// n1*d2*d3 + n2*d3 + a.
class HilbertLayout {
public:
  explicit HilbertLayout(std::vector<Index> dims);

  /// Resonator 1, resonator 2 (each truncated to n_max+1 Fock states), atom.
  static HilbertLayout resonator_atom(int n_max);

  const std::vector<Index>& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return dims_.size(); }
  Index dim(std::size_t slot) const { return dims_.at(slot); }
  Index total() const noexcept { return total_; }

  /// True for the [d, d, 2] resonator/atom shape.
  bool is_resonator_atom() const noexcept;
  /// Fock cutoff of a resonator/atom layout (dims[0] - 1).
  int n_max() const { return static_cast<int>(dims_.at(0)) - 1; }

  /// Flat index of a product basis state.
  Index index_of(const std::vector<Index>& digits) const;
  /// Inverse of index_of.
  std::vector<Index> digits_of(Index flat) const;

  bool operator==(const HilbertLayout&) const = default;

private:
  std::vector<Index> dims_;
  Index total_ = 1;
};

inline constexpr std::size_t kResonator1 = 0;
inline constexpr std::size_t kResonator2 = 1;
inline constexpr std::size_t kAtom = 2;

template <typename Real = double>
CMatrix<Real> identity(Index d) {
  return CMatrix<Real>::Identity(d, d);
}

/// Truncated bosonic lowering operator, <n-1|a|n> = sqrt(n).
template <typename Real = double>
CMatrix<Real> annihilation(Index d) {
  if (d < 2) {
    throw Error(Errc::InvalidDimension, "annihilation: dimension must be >= 2, got " + std::to_string(d));
  }
  CMatrix<Real> a = CMatrix<Real>::Zero(d, d);
  for (Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<Real>(n));
  return a;
}

template <typename Real = double>
CMatrix<Real> number(Index d) {
  const CMatrix<Real> a = annihilation<Real>(d);
  return a.adjoint() * a;
}

// Two-level operators in the ordered basis (|0> = ground, |1> = excited).

template <typename Real = double>
CMatrix<Real> sigma_minus() {
  CMatrix<Real> s = CMatrix<Real>::Zero(2, 2);
  s(0, 1) = 1;
  return s;
}

template <typename Real = double>
CMatrix<Real> sigma_plus() {
  return sigma_minus<Real>().adjoint();
}

template <typename Real = double>
CMatrix<Real> sigma_z() {
  CMatrix<Real> s = CMatrix<Real>::Zero(2, 2);
  s(0, 0) = -1;
  s(1, 1) = 1;
  return s;
}

template <typename Real = double>
CMatrix<Real> sigma_y() {
  CMatrix<Real> s = CMatrix<Real>::Zero(2, 2);
  s(0, 1) = std::complex<Real>(0, -1);
  s(1, 0) = std::complex<Real>(0, 1);
  return s;
}

template <typename A, typename B>
CMatrix<typename A::RealScalar> kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  using Real = typename A::RealScalar;
  CMatrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = std::complex<Real>(a(i, j)) * b.template cast<std::complex<Real>>();
    }
  }
  return out;
}

/// I (x) ... (x) op (x) ... (x) I with op in `slot`.
template <typename Derived>
CMatrix<typename Derived::RealScalar> embed(const Eigen::MatrixBase<Derived>& op, std::size_t slot,
                                            const HilbertLayout& layout) {
  using Real = typename Derived::RealScalar;
  if (slot >= layout.size()) {
    throw Error(Errc::InvalidEmbedding, "embed: slot " + std::to_string(slot) + " outside layout");
  }
  if (op.rows() != layout.dim(slot) || op.cols() != layout.dim(slot)) {
    throw Error(Errc::InvalidEmbedding, "embed: operator is " + std::to_string(op.rows()) + "x" +
                                            std::to_string(op.cols()) + " but slot " + std::to_string(slot) +
                                            " has dimension " + std::to_string(layout.dim(slot)));
  }
  Index left = 1;
  Index right = 1;
  for (std::size_t k = 0; k < slot; ++k) left *= layout.dim(k);
  for (std::size_t k = slot + 1; k < layout.size(); ++k) right *= layout.dim(k);
  return kron(kron(identity<Real>(left), op), identity<Real>(right));
}

/// Reduced matrix over the subsystems in `keep` (kept in layout order).
template <typename Derived>
CMatrix<typename Derived::RealScalar> partial_trace(const Eigen::MatrixBase<Derived>& rho, const HilbertLayout& layout,
                                                    std::vector<std::size_t> keep) {
  using Real = typename Derived::RealScalar;
  if (keep.empty()) throw Error(Errc::InvalidArgument, "partial_trace: keep set is empty");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.back() >= layout.size()) throw Error(Errc::InvalidArgument, "partial_trace: keep index outside layout");
  if (rho.rows() != layout.total() || rho.cols() != layout.total()) {
    throw Error(Errc::InvalidDimension, "partial_trace: matrix does not match layout total dimension");
  }

  std::vector<bool> kept(layout.size(), false);
  for (auto k : keep) kept[k] = true;

  Index reduced_dim = 1;
  for (auto k : keep) reduced_dim *= layout.dim(k);

  // Split every flat index into its kept and traced parts once.
  const Index n = layout.total();
  std::vector<Index> kept_index(static_cast<std::size_t>(n));
  std::vector<Index> traced_index(static_cast<std::size_t>(n));
  for (Index flat = 0; flat < n; ++flat) {
    const auto digits = layout.digits_of(flat);
    Index ki = 0;
    Index ti = 0;
    for (std::size_t s = 0; s < layout.size(); ++s) {
      if (kept[s]) {
        ki = ki * layout.dim(s) + digits[s];
      } else {
        ti = ti * layout.dim(s) + digits[s];
      }
    }
    kept_index[static_cast<std::size_t>(flat)] = ki;
    traced_index[static_cast<std::size_t>(flat)] = ti;
  }

  CMatrix<Real> out = CMatrix<Real>::Zero(reduced_dim, reduced_dim);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (traced_index[static_cast<std::size_t>(i)] != traced_index[static_cast<std::size_t>(j)]) continue;
      out(kept_index[static_cast<std::size_t>(i)], kept_index[static_cast<std::size_t>(j)]) += rho(i, j);
    }
  }
  return out;
}

/// Largest entrywise modulus of M - M^dagger.
template <typename Derived>
typename Derived::RealScalar hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
CVector<typename Derived::RealScalar> eigenvalues(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Derived::RealScalar;
  if (m.rows() != m.cols()) throw Error(Errc::InvalidDimension, "eigenvalues: matrix is not square");
  const DenseWork<Real> dense = m;
  Eigen::ComplexEigenSolver<DenseWork<Real>> solver(dense, /*computeEigenvectors=*/false);
  return solver.eigenvalues();
}

template <typename Real>
struct HermitianEigensystem {
  RVector<Real> values;   // ascending
  CMatrix<Real> vectors;  // columns
};

template <typename Derived>
HermitianEigensystem<typename Derived::RealScalar> hermitian_eigensystem(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Derived::RealScalar;
  if (m.rows() != m.cols()) throw Error(Errc::InvalidDimension, "hermitian_eigensystem: matrix is not square");
  const DenseWork<Real> dense = m;
  Eigen::SelfAdjointEigenSolver<DenseWork<Real>> solver(dense);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Smallest reciprocal condition number accepted by solve().
inline constexpr double kMinReciprocalCondition = 1e-13;

/// Solves A x = b by partial-pivot LU; throws SingularSystem (payload: the
/// reciprocal condition estimate) when A is numerically singular.
template <typename DA, typename DB>
CVector<typename DA::RealScalar> solve(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Real = typename DA::RealScalar;
  if (a.rows() != a.cols() || a.rows() != b.rows()) throw Error(Errc::InvalidDimension, "solve: nonconformable system");
  const DenseWork<Real> dense = a;
  Eigen::PartialPivLU<DenseWork<Real>> lu(dense);
  const Real rcond = lu.rcond();
  if (!(rcond > static_cast<Real>(kMinReciprocalCondition))) {
    throw Error(Errc::SingularSystem, "solve: matrix is singular (rcond=" + std::to_string(static_cast<double>(rcond)) + ")",
                {static_cast<double>(rcond)});
  }
  return lu.solve(b.template cast<std::complex<Real>>());
}

/// Trace distance 1/2 ||a - b||_1 of two Hermitian matrices.
template <typename DA, typename DB>
typename DA::RealScalar trace_distance(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  const auto diff = (a - b).eval();
  const auto eig = hermitian_eigensystem((diff + diff.adjoint()) / 2);
  return eig.values.cwiseAbs().sum() / 2;
}

}  // namespace tricav
