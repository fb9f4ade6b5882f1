#include "tricav/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tricav {

namespace {

const cdouble kI(0, 1);

void require_symmetric(const SystemParams& p, const char* who) {
  p.validate();
  if (!p.symmetric_cavities()) {
    throw Error(Errc::UnsupportedRegime, std::string(who) + ": closed forms require delta1 == delta2 and kappa1 == kappa2");
  }
}

cdouble cavity_coefficient(const SystemParams& p) { return p.delta1 - kI * (p.kappa1 / 2); }
cdouble atom_coefficient(const SystemParams& p) { return p.delta_a - kI * (p.gamma / 2); }
cdouble jc_atom_coefficient(const SystemParams& p) { return p.delta_a / 2 - kI * (p.gamma / 2); }

cdouble det3(const Eigen::Matrix3cd& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double max_abs_diff(const cdouble* a, const cdouble* b, std::size_t n) {
  double out = 0;
  for (std::size_t k = 0; k < n; ++k) out = std::max(out, std::abs(a[k] - b[k]));
  return out;
}

double checked_sqrt(double radicand, const char* who) {
  if (!(radicand >= 0)) {
    throw Error(Errc::NoRealSolution, std::string(who) + ": negative radicand " + std::to_string(radicand), {radicand});
  }
  return std::sqrt(radicand);
}

}  // namespace

ComplexVector WeakDriveAmplitudes::state_vector() const {
  const HilbertLayout layout = HilbertLayout::resonator_atom(1);
  ComplexVector psi = ComplexVector::Zero(layout.total());
  psi(layout.index_of({0, 0, 0})) = c0;
  psi(layout.index_of({1, 0, 0})) = c1;
  psi(layout.index_of({0, 1, 0})) = c2;
  psi(layout.index_of({0, 0, 1})) = c3;
  return psi;
}

WeakDriveAmplitudes normalize_weak_drive(const std::array<cdouble, 3>& c) {
  const double norm = std::sqrt(1.0 + std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]));
  return {1.0 / norm, c[0] / norm, c[1] / norm, c[2] / norm};
}

Eigen::Matrix3cd coefficient_matrix(const SystemParams& p) {
  require_symmetric(p, "coefficient_matrix");
  const cdouble a = cavity_coefficient(p);
  Eigen::Matrix3cd m;
  m << a, p.J, p.g,
       p.J, a, 0.0,
       p.g, 0.0, atom_coefficient(p);
  return m;
}

Eigen::Vector3cd drive_vector(const SystemParams& p) {
  return Eigen::Vector3cd(-p.omega1, -p.omega2, 0.0);
}

cdouble det_m(const SystemParams& p) {
  require_symmetric(p, "det_m");
  const cdouble a = cavity_coefficient(p);
  const cdouble c = atom_coefficient(p);
  return a * a * c - p.g * p.g * a - p.J * p.J * c;
}

std::array<cdouble, 3> cramer_amplitudes(const SystemParams& p) {
  const Eigen::Matrix3cd m = coefficient_matrix(p);
  const Eigen::Vector3cd d = drive_vector(p);
  const cdouble det = det_m(p);
  if (!(std::abs(det) > kNearSingularDeterminant)) {
    throw Error(Errc::NearSingular, "cramer_amplitudes: |det M| below threshold", {std::abs(det)});
  }
  std::array<cdouble, 3> out;
  for (int k = 0; k < 3; ++k) {
    Eigen::Matrix3cd mk = m;
    mk.col(k) = d;
    out[static_cast<std::size_t>(k)] = det3(mk) / det;
  }
  return out;
}

std::array<cdouble, 3> printed_cramer_amplitudes(const SystemParams& p) {
  const cdouble det = det_m(p);
  if (!(std::abs(det) > kNearSingularDeterminant)) {
    throw Error(Errc::NearSingular, "printed_cramer_amplitudes: |det M| below threshold", {std::abs(det)});
  }
  const cdouble a = cavity_coefficient(p);
  const cdouble c = atom_coefficient(p);
  const double g = p.g;
  const double j = p.J;
  return {(c * a * p.omega1 - c * j * p.omega2) / det,
          (c * a * p.omega2 - c * j * p.omega1 - g * g * p.omega2) / det,
          g * (-a * p.omega2 + j * p.omega1) / det};
}

WeakDriveSolution solve_weak_drive(const SystemParams& p) {
  const Eigen::Matrix3cd m = coefficient_matrix(p);
  const cdouble det = det_m(p);
  if (!(std::abs(det) > kNearSingularDeterminant)) {
    throw Error(Errc::NearSingular, "weak_drive_amplitudes: |det M| = " + std::to_string(std::abs(det)) +
                                        " at or below 1e-12 (resonance pole)",
                {std::abs(det)});
  }
  const Eigen::Vector3cd d = drive_vector(p);
  const Eigen::Vector3cd x = m.fullPivLu().solve(d);
  const std::array<cdouble, 3> solved = {x(0), x(1), x(2)};
  const auto cramer = cramer_amplitudes(p);
  const auto printed = printed_cramer_amplitudes(p);

  WeakDriveSolution s{normalize_weak_drive(solved),
                      solved,
                      det,
                      (m * x - d).norm(),
                      max_abs_diff(cramer.data(), solved.data(), 3),
                      max_abs_diff(printed.data(), solved.data(), 3)};
  return s;
}

WeakDriveAmplitudes weak_drive_amplitudes(const SystemParams& p) {
  return solve_weak_drive(p).amplitudes;
}

ResonanceResidual resonance_residual(const SystemParams& p) {
  require_symmetric(p, "resonance_residual");
  const double d = p.delta1;
  const double k = p.kappa1;
  const double da = p.delta_a;
  const double g2 = p.g * p.g;
  const double j2 = p.J * p.J;
  return {da * (d * d - j2 - k * k / 4) + k * d * p.gamma - g2 * d,
          -(k / 2) * (d * d - k * k / 4 - j2) - k * d * da / 2 + g2 * k / 2};
}

double optimal_g(const SystemParams& p) {
  require_symmetric(p, "optimal_g");
  const double d = p.delta1;
  const double k = p.kappa1;
  if (d == 0.0) throw Error(Errc::InvalidRegime, "optimal_g: cavity detuning must be nonzero");
  return checked_sqrt((p.delta_a / d) * (d * d - p.J * p.J - k * k / 4) + k * p.gamma, "optimal_g");
}

double optimal_j(const SystemParams& p, OptimalCouplingForm form) {
  require_symmetric(p, "optimal_j");
  const double d = p.delta1;
  const double k = p.kappa1;
  if (p.delta_a == 0.0) throw Error(Errc::InvalidRegime, "optimal_j: atomic detuning must be nonzero");
  const double g2 = p.g * p.g;
  if (form == OptimalCouplingForm::Printed) {
    return checked_sqrt((2 * g2 * d - k * d * p.gamma) / p.delta_a + k * k / 4 - d * d, "optimal_j");
  }
  return checked_sqrt(d * d - k * k / 4 - (g2 * d - k * d * p.gamma) / p.delta_a, "optimal_j");
}

cdouble jc_determinant(const SystemParams& p) {
  return cavity_coefficient(p) * jc_atom_coefficient(p) - p.g * p.g;
}

Eigen::Matrix2cd jc_matrix(const SystemParams& p) {
  Eigen::Matrix2cd m;
  m << cavity_coefficient(p), p.g,
       p.g, jc_atom_coefficient(p);
  return m;
}

std::array<cdouble, 2> printed_jc_amplitudes(const SystemParams& p) {
  const cdouble det = jc_determinant(p);
  if (!(std::abs(det) > kNearSingularDeterminant)) {
    throw Error(Errc::NearSingular, "printed_jc_amplitudes: |D| below threshold", {std::abs(det)});
  }
  return {p.omega1 * jc_atom_coefficient(p) / det, -p.omega1 * p.g / det};
}

JCSolution solve_jc(const SystemParams& p) {
  p.validate();
  if (p.J != 0.0 || p.omega2 != 0.0) {
    throw Error(Errc::InconsistentParameters, "jc_amplitudes: requires J = 0 and omega2 = 0");
  }
  const cdouble det = jc_determinant(p);
  if (!(std::abs(det) > kNearSingularDeterminant)) {
    throw Error(Errc::NearSingular, "jc_amplitudes: |D| = " + std::to_string(std::abs(det)) + " at or below 1e-12",
                {std::abs(det)});
  }
  const Eigen::Matrix2cd m = jc_matrix(p);
  const Eigen::Vector2cd rhs(-p.omega1, 0.0);
  const Eigen::Vector2cd x = m.fullPivLu().solve(rhs);
  const std::array<cdouble, 2> solved = {x(0), x(1)};
  const auto printed = printed_jc_amplitudes(p);

  const double norm = std::sqrt(1.0 + std::norm(x(0)) + std::norm(x(1)));
  return {JCAmplitudes{1.0 / norm, x(0) / norm, x(1) / norm}, solved, det, (m * x - rhs).norm(),
          max_abs_diff(printed.data(), solved.data(), 2)};
}

JCAmplitudes jc_amplitudes(const SystemParams& p) {
  return solve_jc(p).amplitudes;
}

cdouble jc_optimal_g(const SystemParams& p) {
  const cdouble z = cavity_coefficient(p) * jc_atom_coefficient(p);
  // +0.0 drops a negative zero so negative radicands land on +i.
  return std::sqrt(cdouble(z.real(), z.imag() + 0.0));
}

double jc_concurrence(const JCAmplitudes& a) {
  return 2.0 * std::abs(a.C1) * std::abs(a.C2);
}

SystemParams jc_convention_params(const SystemParams& p) {
  SystemParams out = p;
  out.delta_a = p.delta_a / 2;
  return out;
}

}  // namespace tricav
