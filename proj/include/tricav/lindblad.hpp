#pragma once

// Lindblad master equation on a dense joint space:
//   d rho/dt = -i[H, rho] + sum_k rate_k D[O_k] rho,
//   D[O] rho = O rho O^dagger - 1/2 {O^dagger O, rho}.
//
// Superoperators act on column-stacked density matrices, vec(rho)[i + j*d] =
// rho(i, j), so that vec(A X B) = (B^T (x) A) vec(X).

#include <optional>
#include <vector>

#include "tricav/core.hpp"
#include "tricav/model.hpp"

namespace tricav {

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
/// Most negative eigenvalue tolerated in a density matrix.
inline constexpr double kPsdTolerance = -1e-8;

struct CollapseChannel {
  ComplexMatrix op;  // embedded in the joint space
  double rate = 0.0;
};

struct DensityDiagnostics {
  double hermiticity = 0.0;     // max |rho - rho^dagger|
  double trace_error = 0.0;     // |tr rho - 1|
  double min_eigenvalue = 0.0;  // of the Hermitian part
};

DensityDiagnostics diagnose_density(const ComplexMatrix& rho);

/// Hermitian, unit-trace, positive semidefinite matrix on a layout. The
/// constructor enforces the tolerances above and throws InvalidState.
class DensityMatrix {
public:
  DensityMatrix(ComplexMatrix matrix, HilbertLayout layout);

  static DensityMatrix pure(const ComplexVector& psi, HilbertLayout layout);
  static DensityMatrix basis_state(const std::vector<Index>& digits, HilbertLayout layout);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const HilbertLayout& layout() const noexcept { return layout_; }
  const DensityDiagnostics& diagnostics() const noexcept { return diagnostics_; }

  /// Re tr(op rho).
  double expectation(const ComplexMatrix& op) const;
  double purity() const { return (matrix_ * matrix_).trace().real(); }

private:
  ComplexMatrix matrix_;
  HilbertLayout layout_;
  DensityDiagnostics diagnostics_;
};

ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Index dim);

class Liouvillian {
public:
  Liouvillian(ComplexMatrix matrix, HilbertLayout layout);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const HilbertLayout& layout() const noexcept { return layout_; }
  /// Hilbert-space dimension (the superoperator is dim^2 x dim^2).
  Index dim() const noexcept { return layout_.total(); }

  ComplexMatrix apply(const ComplexMatrix& rho) const { return unvec(matrix_ * vec(rho), dim()); }

private:
  ComplexMatrix matrix_;
  HilbertLayout layout_;
};

ComplexMatrix dissipator_action(const ComplexMatrix& op, const ComplexMatrix& rho);

/// Right-hand side of the master equation evaluated directly in operator form.
ComplexMatrix lindblad_rhs(const ComplexMatrix& h, const std::vector<CollapseChannel>& channels, const ComplexMatrix& rho);

/// L = -i(I (x) H - H^T (x) I) + sum rate [conj(O) (x) O - 1/2 I (x) O'O - 1/2 (O'O)^T (x) I].
Liouvillian build_liouvillian(const ComplexMatrix& h, const std::vector<CollapseChannel>& channels,
                              std::optional<HilbertLayout> layout = std::nullopt);

/// kappa1 D[a1] + kappa2 D[a2] + gamma D[sigma-]; zero-rate channels are dropped.
std::vector<CollapseChannel> system_channels(const SystemParams& p, const HilbertLayout& layout);

/// Rotating-frame Hamiltonian plus the three decay channels.
Liouvillian system_liouvillian(const SystemParams& p, const HilbertLayout& layout);

struct SteadyStateOptions {
  /// Compute the Liouvillian spectrum to verify the zero mode is unique.
  bool check_gap = true;
};

struct SteadyState {
  DensityMatrix rho;
  double spectral_gap;  // second-smallest |eigenvalue| of L, NaN when not computed
  double residual;      // ||L vec(rho)||_2
};

/// Minimum spectral gap separating a unique steady state from a degenerate one.
inline constexpr double kMinSpectralGap = 1e-8;
inline constexpr double kSteadyResidualTolerance = 1e-8;

/// Second-smallest |eigenvalue| of L from the full spectrum.
double spectral_gap(const Liouvillian& l);

/// The same quantity from shift-invert Arnoldi on L + s vec(rho_ss) tr(.),
/// whose spectrum is that of L with the zero mode moved out to s.
double spectral_gap_krylov(const Liouvillian& l, const ComplexMatrix& rho_ss, int steps = 40);

/// Liouvillian sizes above this use the Krylov gap.
inline constexpr Index kDenseGapLimit = 32;

/// Replaces one row of L with the trace constraint and solves the square
/// system. Throws DegenerateSteadyState (payload: spectral gap) when the zero
/// mode is not unique.
SteadyState solve_steady_state(const Liouvillian& l, SteadyStateOptions options = {});
DensityMatrix steady_state(const Liouvillian& l);

/// Nullspace route: eigenvector of the eigenvalue of smallest modulus,
/// rescaled to unit trace. Diagnostic fallback for the row-replacement solve.
SteadyState steady_state_from_spectrum(const Liouvillian& l);

/// Default integration step in units of 1/kappa.
inline constexpr double kDefaultTimeStep = 1e-3;

struct Evolution {
  DensityMatrix rho;
  double trace_deviation;  // |tr - 1| before the final renormalization
};

/// Fixed-step RK4 integration of d vec(rho)/dt = L vec(rho) up to t_final.
Evolution integrate(const DensityMatrix& rho0, const Liouvillian& l, double t_final, double dt = kDefaultTimeStep);
DensityMatrix evolve(const DensityMatrix& rho0, const Liouvillian& l, double t_final, double dt = kDefaultTimeStep);

}  // namespace tricav
