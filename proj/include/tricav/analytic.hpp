#pragma once

// Closed-form weak-drive solutions. Under weak driving the steady state is
// approximated by the single-excitation pure state
//   |psi> = c0|000> + c1|100> + c2|010> + c3|001>
// whose amplitudes solve M (c1, c2, c3)^T = -(W1, W2, 0)^T c0 with
//   M = [[A, J, g], [J, B, 0], [g, 0, C]],  A = B = D - i k/2,  C = Da - i gamma/2.
// The single-resonator (Jaynes-Cummings) reduction uses the atomic coefficient
// Da/2 - i gamma/2 instead of Da - i gamma/2; both conventions are kept as-is.

#include <Eigen/Dense>

#include <array>

#include "tricav/core.hpp"
#include "tricav/model.hpp"

namespace tricav {

/// Smallest |det| accepted before a closed-form solve is declared singular.
inline constexpr double kNearSingularDeterminant = 1e-12;

struct WeakDriveAmplitudes {
  cdouble c0{1.0};
  cdouble c1{0.0};
  cdouble c2{0.0};
  cdouble c3{0.0};

  double norm_squared() const { return std::norm(c0) + std::norm(c1) + std::norm(c2) + std::norm(c3); }
  /// Amplitudes on the [2, 2, 2] product basis, in layout order.
  ComplexVector state_vector() const;
};

/// Rescales (1, c1, c2, c3) to unit norm with c0 real and positive.
WeakDriveAmplitudes normalize_weak_drive(const std::array<cdouble, 3>& unnormalized);

struct JCAmplitudes {
  cdouble C0{1.0};
  cdouble C1{0.0};  // photon in resonator 1
  cdouble C2{0.0};  // atom excited

  double norm_squared() const { return std::norm(C0) + std::norm(C1) + std::norm(C2); }
};

/// The 3x3 coefficient matrix M (requires symmetric cavities).
Eigen::Matrix3cd coefficient_matrix(const SystemParams& p);
/// Right-hand side -(W1, W2, 0) for c0 = 1.
Eigen::Vector3cd drive_vector(const SystemParams& p);

/// (D - ik/2)^2 (Da - i gamma/2) - g^2 (D - ik/2) - J^2 (Da - i gamma/2).
cdouble det_m(const SystemParams& p);

/// Cramer's rule: det(M_i) / det(M) with M_i the column-replaced minors.
std::array<cdouble, 3> cramer_amplitudes(const SystemParams& p);

/// Closed-form expansions in the commonly quoted form. Relative to
/// cramer_amplitudes all three carry the opposite sign, and c3 also has the
/// two drive amplitudes exchanged. Kept for comparison only.
std::array<cdouble, 3> printed_cramer_amplitudes(const SystemParams& p);

struct WeakDriveSolution {
  WeakDriveAmplitudes amplitudes;
  std::array<cdouble, 3> unnormalized;  // c0 = 1
  cdouble determinant;
  double residual;             // ||M c - d||
  double cramer_discrepancy;   // max |cramer - solve|
  double printed_discrepancy;  // max |printed - solve|
};

/// Dense solve of the weak-drive system with cross-checks against both
/// closed-form routes. Throws UnsupportedRegime for asymmetric cavities and
/// NearSingular when |det M| <= 1e-12.
WeakDriveSolution solve_weak_drive(const SystemParams& p);
WeakDriveAmplitudes weak_drive_amplitudes(const SystemParams& p);

struct ResonanceResidual {
  double re;
  double im;
};

/// Real and imaginary parts of det M in the quoted form:
///   Re = Da (D^2 - J^2 - k^2/4) + k D gamma - g^2 D
///   Im = -(k/2)(D^2 - k^2/4 - J^2) - k D Da/2 + g^2 k/2
/// These do not equal det_m(p) once k or gamma is nonzero; compare against
/// det_m for the exact expansion.
ResonanceResidual resonance_residual(const SystemParams& p);

enum class OptimalCouplingForm {
  Printed,     // as quoted
  Rearranged,  // solved from the resonance condition Da(D^2 - J^2 - k^2/4) = g^2 D - k D gamma
};

/// sqrt((Da/D)(D^2 - J^2 - k^2/4) + k gamma).
double optimal_g(const SystemParams& p);
/// Printed: sqrt((2 g^2 D - k D gamma)/Da + k^2/4 - D^2).
/// Rearranged: sqrt(D^2 - k^2/4 - (g^2 D - k D gamma)/Da).
double optimal_j(const SystemParams& p, OptimalCouplingForm form = OptimalCouplingForm::Printed);

/// (D - ik/2)(Da/2 - i gamma/2) - g^2 for resonator 1.
cdouble jc_determinant(const SystemParams& p);
Eigen::Matrix2cd jc_matrix(const SystemParams& p);

/// Quoted JC closed forms C1 = W1 (Da/2 - i gamma/2)/D, C2 = -W1 g / D.
/// Both carry the opposite sign to the solution of the 2x2 system.
std::array<cdouble, 2> printed_jc_amplitudes(const SystemParams& p);

struct JCSolution {
  JCAmplitudes amplitudes;
  std::array<cdouble, 2> unnormalized;  // C0 = 1
  cdouble determinant;
  double residual;
  double printed_discrepancy;
};

/// Requires J = 0 and omega2 = 0 (InconsistentParameters otherwise).
JCSolution solve_jc(const SystemParams& p);
JCAmplitudes jc_amplitudes(const SystemParams& p);

/// Principal square root of (D - ik/2)(Da/2 - i gamma/2).
cdouble jc_optimal_g(const SystemParams& p);

/// 2 |C1| |C2|.
double jc_concurrence(const JCAmplitudes& a);

/// Parameters under which the tripartite solution reproduces the JC one:
/// the tripartite atomic coefficient Da - i gamma/2 becomes Da/2 - i gamma/2.
SystemParams jc_convention_params(const SystemParams& p);

}  // namespace tricav
