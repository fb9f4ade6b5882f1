#include "tricav/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tricav {

DensityDiagnostics diagnose_density(const ComplexMatrix& rho) {
  DensityDiagnostics d;
  d.hermiticity = hermiticity_error(rho);
  d.trace_error = std::abs(rho.trace() - cdouble(1.0));
  const ComplexMatrix herm = (rho + rho.adjoint()) / 2.0;
  d.min_eigenvalue = hermitian_eigensystem(herm).values.minCoeff();
  return d;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, HilbertLayout layout)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
  if (matrix_.rows() != layout_.total() || matrix_.cols() != layout_.total()) {
    throw Error(Errc::InvalidState, "DensityMatrix: matrix does not match layout dimension");
  }
  diagnostics_ = diagnose_density(matrix_);
  if (!(diagnostics_.hermiticity <= kHermitianTolerance)) {
    throw Error(Errc::InvalidState, "DensityMatrix: not Hermitian", {diagnostics_.hermiticity});
  }
  if (!(diagnostics_.trace_error <= kTraceTolerance)) {
    throw Error(Errc::InvalidState, "DensityMatrix: trace differs from 1", {diagnostics_.trace_error});
  }
  if (!(diagnostics_.min_eigenvalue >= kPsdTolerance)) {
    throw Error(Errc::InvalidState, "DensityMatrix: negative eigenvalue", {diagnostics_.min_eigenvalue});
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi, HilbertLayout layout) {
  const double norm = psi.norm();
  if (norm == 0.0) throw Error(Errc::InvalidState, "DensityMatrix::pure: zero vector");
  const ComplexVector unit = psi / norm;
  return DensityMatrix(unit * unit.adjoint(), std::move(layout));
}

DensityMatrix DensityMatrix::basis_state(const std::vector<Index>& digits, HilbertLayout layout) {
  ComplexMatrix m = ComplexMatrix::Zero(layout.total(), layout.total());
  const Index k = layout.index_of(digits);
  m(k, k) = 1.0;
  return DensityMatrix(std::move(m), std::move(layout));
}

double DensityMatrix::expectation(const ComplexMatrix& op) const {
  return (op * matrix_).trace().real();
}

ComplexVector vec(const ComplexMatrix& m) {
  ComplexVector v(m.rows() * m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) v(i + j * m.rows()) = m(i, j);
  }
  return v;
}

ComplexMatrix unvec(const ComplexVector& v, Index dim) {
  if (v.size() != dim * dim) throw Error(Errc::InvalidDimension, "unvec: vector length is not dim^2");
  ComplexMatrix m(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) m(i, j) = v(i + j * dim);
  }
  return m;
}

Liouvillian::Liouvillian(ComplexMatrix matrix, HilbertLayout layout)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
  const Index n = layout_.total() * layout_.total();
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw Error(Errc::InvalidDimension, "Liouvillian: matrix is not dim^2 x dim^2");
  }
}

ComplexMatrix dissipator_action(const ComplexMatrix& op, const ComplexMatrix& rho) {
  if (op.rows() != op.cols() || rho.rows() != rho.cols() || op.rows() != rho.rows()) {
    throw Error(Errc::InvalidDimension, "dissipator_action: nonconformable operator and state");
  }
  const ComplexMatrix odo = op.adjoint() * op;
  return op * rho * op.adjoint() - 0.5 * (odo * rho + rho * odo);
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& h, const std::vector<CollapseChannel>& channels, const ComplexMatrix& rho) {
  const cdouble i(0, 1);
  ComplexMatrix out = -i * (h * rho - rho * h);
  for (const auto& c : channels) out += c.rate * dissipator_action(c.op, rho);
  return out;
}

Liouvillian build_liouvillian(const ComplexMatrix& h, const std::vector<CollapseChannel>& channels,
                              std::optional<HilbertLayout> layout) {
  if (h.rows() != h.cols()) throw Error(Errc::InvalidDimension, "build_liouvillian: Hamiltonian is not square");
  const Index d = h.rows();
  HilbertLayout lay = layout ? *layout : HilbertLayout({d});
  if (lay.total() != d) throw Error(Errc::InvalidDimension, "build_liouvillian: layout does not match Hamiltonian");

  const ComplexMatrix id = identity(d);
  const cdouble i(0, 1);
  ComplexMatrix l = -i * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& c : channels) {
    if (c.op.rows() != d || c.op.cols() != d) {
      throw Error(Errc::InvalidDimension, "build_liouvillian: collapse operator does not match Hamiltonian");
    }
    if (c.rate < 0) throw Error(Errc::InvalidArgument, "build_liouvillian: negative collapse rate");
    if (c.rate == 0) continue;
    const ComplexMatrix odo = c.op.adjoint() * c.op;
    l += c.rate * (kron(c.op.conjugate(), c.op) - 0.5 * kron(id, odo) - 0.5 * kron(odo.transpose(), id));
  }
  return Liouvillian(std::move(l), std::move(lay));
}

std::vector<CollapseChannel> system_channels(const SystemParams& p, const HilbertLayout& layout) {
  const SystemOperators ops(layout);
  std::vector<CollapseChannel> out;
  if (p.kappa1 > 0) out.push_back({ops.a1, p.kappa1});
  if (p.kappa2 > 0) out.push_back({ops.a2, p.kappa2});
  if (p.gamma > 0) out.push_back({ops.sigma_minus, p.gamma});
  return out;
}

Liouvillian system_liouvillian(const SystemParams& p, const HilbertLayout& layout) {
  return build_liouvillian(build_hamiltonian(p, layout), system_channels(p, layout), layout);
}

namespace {

// Unit trace; the DensityMatrix constructor still checks everything else.
ComplexMatrix tidy(const ComplexMatrix& rho) {
  return rho / rho.trace();
}

}  // namespace

double spectral_gap(const Liouvillian& l) {
  const ComplexVector ev = eigenvalues(l.matrix());
  std::vector<double> mags(static_cast<std::size_t>(ev.size()));
  for (Index k = 0; k < ev.size(); ++k) mags[static_cast<std::size_t>(k)] = std::abs(ev(k));
  std::sort(mags.begin(), mags.end());
  return mags.size() > 1 ? mags[1] : std::numeric_limits<double>::infinity();
}

double spectral_gap_krylov(const Liouvillian& l, const ComplexMatrix& rho_ss, int steps) {
  const Index d = l.dim();
  const Index n = d * d;
  const ComplexVector v = vec(rho_ss / rho_ss.trace());
  const ComplexVector t = vec(ComplexMatrix::Identity(d, d));
  const double shift = std::max(1.0, l.matrix().cwiseAbs().rowwise().sum().maxCoeff());
  const ComplexMatrix b = l.matrix() + shift * v * t.transpose();
  const Eigen::PartialPivLU<ComplexMatrix> lu(b);
  // A second zero mode leaves B singular. The rcond estimate misses exact zero pivots.
  const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (!(pivots.minCoeff() > 1e-14 * pivots.maxCoeff())) return 0.0;

  const Index m = std::min<Index>(steps, n);
  ComplexMatrix q = ComplexMatrix::Zero(n, m + 1);
  ComplexMatrix h = ComplexMatrix::Zero(m + 1, m);
  for (Index k = 0; k < n; ++k) q(k, 0) = cdouble(1.0, 1.0 / static_cast<double>(k + 1));
  q.col(0).normalize();
  Index used = m;
  for (Index j = 0; j < m; ++j) {
    ComplexVector w = lu.solve(q.col(j));
    // Two Gram-Schmidt passes keep the basis orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i <= j; ++i) {
        const cdouble c = q.col(i).dot(w);
        h(i, j) += c;
        w -= c * q.col(i);
      }
    }
    h(j + 1, j) = w.norm();
    if (std::abs(h(j + 1, j)) < 1e-14 * std::abs(h(0, 0))) {
      used = j + 1;
      break;
    }
    q.col(j + 1) = w / h(j + 1, j).real();
  }
  const ComplexVector theta = eigenvalues(ComplexMatrix(h.topLeftCorner(used, used)));
  double largest = 0.0;
  for (Index k = 0; k < theta.size(); ++k) {
    if (!std::isfinite(std::abs(theta(k)))) return 0.0;
    largest = std::max(largest, std::abs(theta(k)));
  }
  return largest > 0.0 ? 1.0 / largest : std::numeric_limits<double>::infinity();
}

SteadyState solve_steady_state(const Liouvillian& l, SteadyStateOptions options) {
  const Index d = l.dim();
  const Index n = d * d;

  // Row 0 is the equation for rho(0,0); trace preservation makes it a linear
  // combination of the other diagonal rows, so it can carry tr(rho) = 1.
  ComplexMatrix a = l.matrix();
  a.row(0).setZero();
  for (Index k = 0; k < d; ++k) a(0, k + k * d) = 1.0;
  ComplexVector b = ComplexVector::Zero(n);
  b(0) = 1.0;

  ComplexVector x;
  try {
    x = solve(a, b);
  } catch (const Error& e) {
    if (e.code() != Errc::SingularSystem) throw;
    const double gap = spectral_gap(l);
    throw Error(Errc::DegenerateSteadyState, std::string("steady_state: constrained system is singular; ") + e.what(),
                {gap});
  }

  ComplexMatrix rho = tidy(unvec(x, d));
  double gap = std::numeric_limits<double>::quiet_NaN();
  if (options.check_gap) {
    gap = d * d <= kDenseGapLimit ? spectral_gap(l) : spectral_gap_krylov(l, rho);
    if (!(gap > kMinSpectralGap)) {
      throw Error(Errc::DegenerateSteadyState, "steady_state: Liouvillian zero eigenvalue is not unique (gap=" +
                                                   std::to_string(gap) + ")",
                  {gap});
    }
  }
  const double residual = (l.matrix() * vec(rho)).norm();
  if (!(residual <= kSteadyResidualTolerance)) {
    throw Error(Errc::DegenerateSteadyState, "steady_state: residual " + std::to_string(residual) + " too large",
                {gap, residual});
  }
  return {DensityMatrix(std::move(rho), l.layout()), gap, residual};
}

DensityMatrix steady_state(const Liouvillian& l) {
  return solve_steady_state(l).rho;
}

SteadyState steady_state_from_spectrum(const Liouvillian& l) {
  const Eigen::MatrixXcd dense = l.matrix();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(dense);
  const Eigen::VectorXcd& ev = solver.eigenvalues();

  std::vector<Index> order(static_cast<std::size_t>(ev.size()));
  for (Index k = 0; k < ev.size(); ++k) order[static_cast<std::size_t>(k)] = k;
  std::sort(order.begin(), order.end(), [&](Index x, Index y) { return std::abs(ev(x)) < std::abs(ev(y)); });
  const double scale = std::max(1.0, dense.cwiseAbs().rowwise().sum().maxCoeff());
  if (!(std::abs(ev(order[0])) <= kZeroEigenvalueTolerance * scale)) {
    throw Error(Errc::DegenerateSteadyState, "steady_state_from_spectrum: no zero eigenvalue", {std::abs(ev(order[0]))});
  }
  const double gap = order.size() > 1 ? std::abs(ev(order[1])) : std::numeric_limits<double>::infinity();
  if (!(gap > kMinSpectralGap)) {
    throw Error(Errc::DegenerateSteadyState, "steady_state_from_spectrum: degenerate zero mode", {gap});
  }

  const ComplexVector null = solver.eigenvectors().col(order[0]);
  ComplexMatrix rho = unvec(null, l.dim());
  if (std::abs(rho.trace()) < 1e-14) {
    throw Error(Errc::DegenerateSteadyState, "steady_state_from_spectrum: null vector has zero trace", {gap});
  }
  rho = tidy(rho);
  rho = (rho + rho.adjoint()).eval() / 2.0;
  const double residual = (l.matrix() * vec(rho)).norm();
  return {DensityMatrix(std::move(rho), l.layout()), gap, residual};
}

Evolution integrate(const DensityMatrix& rho0, const Liouvillian& l, double t_final, double dt) {
  if (!(t_final > 0)) throw Error(Errc::InvalidArgument, "evolve: t_final must be positive");
  if (!(dt > 0)) throw Error(Errc::StepSize, "evolve: dt must be positive");
  if (rho0.layout() != l.layout()) throw Error(Errc::InvalidDimension, "evolve: state and Liouvillian layouts differ");

  const ComplexMatrix& lm = l.matrix();
  // Cheap bound first; only fall back to the spectrum when the bound is too loose.
  const double norm_bound = lm.cwiseAbs().rowwise().sum().maxCoeff();
  if (dt * norm_bound >= 1.0) {
    const double radius = eigenvalues(lm).cwiseAbs().maxCoeff();
    if (dt * radius >= 1.0) {
      throw Error(Errc::StepSize, "evolve: dt * spectral radius = " + std::to_string(dt * radius) + " >= 1",
                  {dt * radius});
    }
  }

  const auto steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
  const double h = t_final / static_cast<double>(steps);
  const Index d = l.dim();

  ComplexVector v = vec(rho0.matrix());
  const auto trace_of = [d](const ComplexVector& x) {
    cdouble t = 0;
    for (Index k = 0; k < d; ++k) t += x(k + k * d);
    return t;
  };

  ComplexVector k1, k2, k3, k4;
  for (long s = 0; s < steps; ++s) {
    k1 = lm * v;
    k2 = lm * (v + (h / 2) * k1);
    k3 = lm * (v + (h / 2) * k2);
    k4 = lm * (v + h * k3);
    v += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (s % 256 == 0 || s + 1 == steps) {
      const double dev = std::abs(trace_of(v) - cdouble(1.0));
      if (!(dev <= 1e-2)) {
        throw Error(Errc::StepSize, "evolve: integration unstable (trace deviation " + std::to_string(dev) + ")", {dev});
      }
    }
  }

  const cdouble tr = trace_of(v);
  ComplexMatrix rho = unvec(v, d) / tr;
  return {DensityMatrix(std::move(rho), l.layout()), std::abs(tr - cdouble(1.0))};
}

DensityMatrix evolve(const DensityMatrix& rho0, const Liouvillian& l, double t_final, double dt) {
  return integrate(rho0, l, t_final, dt).rho;
}

}  // namespace tricav
