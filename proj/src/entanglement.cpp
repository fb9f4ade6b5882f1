#include "tricav/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tricav {

double wootters_concurrence(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw Error(Errc::InvalidState, "wootters_concurrence: expected a 4x4 matrix");
  const DensityDiagnostics diag = diagnose_density(rho);
  if (!(diag.hermiticity <= kHermitianTolerance) || !(diag.trace_error <= kTraceTolerance) ||
      !(diag.min_eigenvalue >= kPsdTolerance)) {
    throw Error(Errc::InvalidState, "wootters_concurrence: not a valid two-qubit density matrix",
                {diag.hermiticity, diag.trace_error, diag.min_eigenvalue});
  }

  // The l_i are the singular values of sqrt(rho) * sqrt(rho~) with
  // rho~ = Y rho* Y, which avoids square-rooting a non-Hermitian spectrum.
  const auto eig = hermitian_eigensystem(ComplexMatrix((rho + rho.adjoint()) / 2.0));
  const double cutoff = 16 * std::numeric_limits<double>::epsilon();
  Eigen::VectorXd root(4);
  for (Index k = 0; k < 4; ++k) root(k) = eig.values(k) > cutoff ? std::sqrt(eig.values(k)) : 0.0;
  const ComplexMatrix sqrt_rho = eig.vectors * root.cast<cdouble>().asDiagonal() * eig.vectors.adjoint();
  const ComplexMatrix yy = kron(sigma_y(), sigma_y());
  const ComplexMatrix sqrt_tilde = yy * sqrt_rho.conjugate() * yy;

  const Eigen::MatrixXcd product = sqrt_rho * sqrt_tilde;
  const Eigen::VectorXd lambda = Eigen::JacobiSVD<Eigen::MatrixXcd>(product).singularValues();  // descending
  return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

double purity_concurrence(const ComplexMatrix& reduced) {
  const double purity = (reduced * reduced).trace().real();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

double one_vs_rest_concurrence(const DensityMatrix& rho, std::size_t subsystem) {
  if (subsystem >= rho.layout().size()) {
    throw Error(Errc::InvalidArgument, "one_vs_rest_concurrence: subsystem index " + std::to_string(subsystem) +
                                           " outside layout");
  }
  return purity_concurrence(partial_trace(rho.matrix(), rho.layout(), {subsystem}));
}

ConcurrenceTriangle edge_concurrences(const WeakDriveAmplitudes& a) {
  const double p1 = std::norm(a.c1);
  const double p2 = std::norm(a.c2);
  const double p3 = std::norm(a.c3);
  ConcurrenceTriangle t;
  t.c1_23 = 2 * std::sqrt(p1) * std::sqrt(p2 + p3);
  t.c2_31 = 2 * std::sqrt(p2) * std::sqrt(p3 + p1);
  t.c3_12 = 2 * std::sqrt(p3) * std::sqrt(p1 + p2);
  t.polygon_ok = polygon_holds(t.c1_23, t.c2_31, t.c3_12);
  return t;
}

bool polygon_holds(double c1, double c2, double c3, double tolerance) {
  const double s1 = c1 * c1;
  const double s2 = c2 * c2;
  const double s3 = c3 * c3;
  return s1 <= s2 + s3 + tolerance && s2 <= s3 + s1 + tolerance && s3 <= s1 + s2 + tolerance;
}

Fill concurrence_fill(double c1, double c2, double c3) {
  if (!(c1 >= 0 && c2 >= 0 && c3 >= 0)) {
    throw Error(Errc::InvalidArgument, "concurrence_fill: edges must be nonnegative");
  }
  const double s1 = c1 * c1;
  const double s2 = c2 * c2;
  const double s3 = c3 * c3;
  const double q = (s1 + s2 + s3) / 2;
  double f[3] = {q - s1, q - s2, q - s3};
  for (double& x : f) {
    if (x < -kPolygonTolerance) {
      throw Error(Errc::PolygonViolation, "concurrence_fill: polygon inequality violated", {s1, s2, s3});
    }
    x = std::max(x, 0.0);
  }
  return {std::pow(16.0 / 3.0 * f[0] * f[1] * f[2] * q, 0.25), true};
}

ConcurrenceTriangle triangle_from_amplitudes(const WeakDriveAmplitudes& a) {
  ConcurrenceTriangle t = edge_concurrences(a);
  const Fill f = concurrence_fill(t.c1_23, t.c2_31, t.c3_12);
  t.fill = f.fill;
  t.polygon_ok = f.polygon_ok;
  return t;
}

ConcurrenceTriangle triangle_from_state(const DensityMatrix& rho) {
  const HilbertLayout& layout = rho.layout();
  if (!layout.is_resonator_atom() || layout.n_max() != 1) {
    throw Error(Errc::InvalidArgument, "triangle_from_state: needs a [2, 2, 2] state; project_two_level first");
  }
  ConcurrenceTriangle t;
  t.c1_23 = one_vs_rest_concurrence(rho, kResonator1);
  t.c2_31 = one_vs_rest_concurrence(rho, kResonator2);
  t.c3_12 = one_vs_rest_concurrence(rho, kAtom);
  const Fill f = concurrence_fill(t.c1_23, t.c2_31, t.c3_12);
  t.fill = f.fill;
  t.polygon_ok = f.polygon_ok;
  return t;
}

TwoLevelProjection project_two_level(const DensityMatrix& rho) {
  const HilbertLayout& layout = rho.layout();
  if (!layout.is_resonator_atom()) throw Error(Errc::InvalidArgument, "project_two_level: layout must be [d, d, 2]");
  const HilbertLayout target = HilbertLayout::resonator_atom(1);
  if (layout == target) return {rho, 1.0};

  std::vector<Index> source(static_cast<std::size_t>(target.total()));
  for (Index k = 0; k < target.total(); ++k) source[static_cast<std::size_t>(k)] = layout.index_of(target.digits_of(k));

  ComplexMatrix sub(target.total(), target.total());
  for (Index i = 0; i < target.total(); ++i) {
    for (Index j = 0; j < target.total(); ++j) {
      sub(i, j) = rho.matrix()(source[static_cast<std::size_t>(i)], source[static_cast<std::size_t>(j)]);
    }
  }
  const double weight = sub.trace().real();
  if (!(weight > 0)) throw Error(Errc::InvalidState, "project_two_level: no population in the two-level subspace");
  return {DensityMatrix(sub / weight, target), weight};
}

DensityMatrix dominant_pure_component(const DensityMatrix& rho) {
  const auto eig = hermitian_eigensystem(ComplexMatrix((rho.matrix() + rho.matrix().adjoint()) / 2.0));
  const ComplexVector top = eig.vectors.col(eig.values.size() - 1);
  return DensityMatrix::pure(top, rho.layout());
}

}  // namespace tricav
