// Acceptance criteria: one PASS/FAIL line each, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <string>

#include "oracles.hpp"
#include "tricav/analytic.hpp"
#include "tricav/entanglement.hpp"
#include "tricav/lindblad.hpp"
#include "tricav/sweep.hpp"

using namespace tricav;

namespace {

constexpr double kWeakDriveAgreement = 0.05;
constexpr double kFullDriveAgreement = 0.15;
constexpr double kRuntimeBudgetSeconds = 10.0;
constexpr double kFixtureTolerance = 1e-12;
constexpr double kSolveTolerance = 1e-10;
constexpr double kEdgeTolerance = 1e-12;
constexpr double kStateTolerance = 1e-10;
constexpr double kPositivityTolerance = 1e-8;
constexpr double kResidualTolerance = 1e-8;
constexpr double kRelaxationTolerance = 1e-4;
constexpr double kPolygonCheckTolerance = 1e-9;
constexpr double kJcTolerance = 1e-10;
constexpr double kTruncationTolerance = 1e-3;

int failures = 0;

void verdict(int id, bool pass, const std::string& what) {
  std::printf("%s  %d  %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  failures += !pass;
}

void info(const std::string& what) { std::printf("      %s\n", what.c_str()); }

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SweepSpec single_curve(const std::string& preset, const std::string& family_name, double value) {
  SweepSpec s = figure_preset(preset);
  s.family.reset();
  set_param(s.base, family_name, value);
  return s;
}

// Column of one observable, or empty when any point failed.
std::vector<double> column(const SweepResult& r, std::size_t method, std::size_t observable) {
  std::vector<double> out;
  for (const GridPoint& pt : r.points) {
    if (!pt.records[method].ok()) return {};
    out.push_back(pt.records[method].values[observable]);
  }
  return out;
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

// Largest |a - n| between the analytic and numeric fill of a fig6a curve.
double fill_gap(double g, double omega, int jobs, bool* ok) {
  SweepSpec s = single_curve("fig6a", "g", g);
  s.base.omega1 = s.base.omega2 = omega;
  s.n_max = 1;
  const SweepResult r = run_sweep(s, jobs);
  const auto a = column(r, 0, 0);
  const auto n = column(r, 1, 0);
  if (a.empty() || n.empty()) {
    *ok = false;
    return 0.0;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - n[i]));
  return worst;
}

void criterion1() {
  bool ok = true;
  double weak = 0.0;
  for (double g : {0.3, 0.6}) {
    const double d = fill_gap(g, 0.05, 1, &ok);
    info(fmt("g=%.1f, omega=0.05: max |fill_analytic - fill_numeric| = %.3e", g, d));
    weak = std::max(weak, d);
  }
  double full = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (double g : {0.3, 0.6}) {
    const double d = fill_gap(g, 0.5, 1, &ok);
    info(fmt("g=%.1f, omega=0.5:  max |fill_analytic - fill_numeric| = %.3e", g, d));
    full = std::max(full, d);
  }
  const double elapsed = seconds_since(t0);
  info(fmt("201 points x 2 curves at n_max=1 on one thread: %.2f s", elapsed));
  verdict(1, ok && weak <= kWeakDriveAgreement && full <= kFullDriveAgreement && elapsed < kRuntimeBudgetSeconds,
          fmt("analytic-numeric fill agreement: %.3e <= %.2f (weak drive), %.3e <= %.2f (omega=0.5), runtime %.2f s "
              "< %.0f s",
              weak, kWeakDriveAgreement, full, kFullDriveAgreement, elapsed, kRuntimeBudgetSeconds));
}

void criterion2() {
  bool pass = true;
  double peaks[2] = {0.0, 0.0};
  int k = 0;
  for (double g : {0.3, 0.6}) {
    SweepSpec s = single_curve("fig2a", "g", g);
    s.methods = {Method::Analytic, Method::Numeric};
    const SweepResult r = run_sweep(s);
    const auto c = column(r, 0, 0);
    const auto n = column(r, 1, 0);
    if (c.empty()) {
      pass = false;
      continue;
    }
    const auto values = s.axes[0].values();
    if (!n.empty()) info(fmt("g=%.1f: numeric JC concurrence peak %.6f at delta=%.3f", g, max_of(n), values[argmax(n)]));
    const double step = values[1] - values[0];
    const double at = values[argmax(c)];
    peaks[k++] = max_of(c);
    info(fmt("g=%.1f: analytic JC concurrence peak %.6f at delta=%.3f", g, max_of(c), at));
    pass = pass && std::abs(at) <= step + 1e-12;
  }
  pass = pass && peaks[1] >= peaks[0];
  verdict(2, pass, fmt("JC concurrence peaks within one grid step of zero detuning, peak(g=0.6)=%.4f >= peak(g=0.3)=%.4f",
                       peaks[1], peaks[0]));
}

void criterion3() {
  const SweepSpec preset = figure_preset("fig8a");
  bool pass = true;
  for (std::size_t m = 0; m < preset.methods.size(); ++m) {
    double previous = std::numeric_limits<double>::infinity();
    for (const Curve& curve : expand_family(preset)) {
      const auto f = column(run_sweep(curve.spec), m, 0);
      if (f.empty()) {
        pass = false;
        continue;
      }
      const double peak = max_of(f);
      info(std::string(method_name(preset.methods[m])) + " " + curve.suffix + fmt(": max fill %.6f", peak));
      pass = pass && peak <= previous;
      previous = peak;
    }
  }
  verdict(3, pass, "max-over-g fill non-increasing in gamma = 0.05, 0.1, 0.2");
}

void criterion4() {
  const double a = std::abs(concurrence_fill(1, 1, 1).fill - 1.0);
  const double c = 2.0 * std::sqrt(2.0) / 3.0;
  const double b = std::abs(concurrence_fill(c, c, c).fill - 8.0 / 9.0);
  verdict(4, a <= kFixtureTolerance && b <= kFixtureTolerance,
          fmt("fill(1,1,1) error %.1e, fill(2sqrt2/3 x3) - 8/9 error %.1e", a, b));
}

// psi as a 2x4 matrix: qubit k against the other two.
Eigen::Matrix<cdouble, 2, 4> split_qubit(const ComplexVector& psi, int k) {
  Eigen::Matrix<cdouble, 2, 4> m;
  const int bit = 2 - k;
  for (int i = 0; i < 8; ++i) {
    const int rest = ((i >> (bit + 1)) << bit) | (i & ((1 << bit) - 1));
    m((i >> bit) & 1, rest) = psi(i);
  }
  return m;
}

// sqrt(2 (1 - tr rho_k^2)) evaluated literally from the reduced matrix.
double purity_edge_naive(const ComplexVector& psi, int k) {
  const auto m = split_qubit(psi, k);
  const Eigen::Matrix2cd r = m * m.adjoint();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - (r * r).trace().real())));
}

// The same quantity through 1 - tr rho^2 = 2 det rho and Cauchy-Binet,
// det(M M^+) = sum of |2x2 minors|^2, which has no cancellation.
double purity_edge(const ComplexVector& psi, int k) {
  const auto m = split_qubit(psi, k);
  double det = 0.0;
  for (int j = 0; j < 4; ++j)
    for (int l = j + 1; l < 4; ++l) det += std::norm(m(0, j) * m(1, l) - m(0, l) * m(1, j));
  return 2.0 * std::sqrt(det);
}

void criterion5() {
  double solve_err = 0.0;
  double edge_err = 0.0;
  double quoted = 0.0;
  double naive = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const SystemParams p = oracle::random_symmetric_params();
    const cdouble a = p.delta1 - cdouble(0, 1) * p.kappa1 / 2.0;
    const cdouble c = p.delta_a - cdouble(0, 1) * p.gamma / 2.0;
    Eigen::Matrix3cd m;
    m << a, p.J, p.g, p.J, a, 0.0, p.g, 0.0, c;
    const Eigen::Vector3cd x = m.fullPivLu().solve(Eigen::Vector3cd(-p.omega1, -p.omega2, 0.0));
    const auto cr = cramer_amplitudes(p);
    const auto pr = printed_cramer_amplitudes(p);
    for (int i = 0; i < 3; ++i) {
      solve_err = std::max(solve_err, std::abs(cr[static_cast<std::size_t>(i)] - x(i)));
      quoted = std::max(quoted, std::abs(pr[static_cast<std::size_t>(i)] - x(i)));
    }

    const WeakDriveAmplitudes w = normalize_weak_drive(cr);
    const ComplexVector psi = oracle::single_excitation_state(w.c0, w.c1, w.c2, w.c3);
    const ConcurrenceTriangle t = edge_concurrences(w);
    edge_err = std::max({edge_err, std::abs(t.c1_23 - purity_edge(psi, 0)), std::abs(t.c2_31 - purity_edge(psi, 1)),
                         std::abs(t.c3_12 - purity_edge(psi, 2))});
    for (int k = 0; k < 3; ++k)
      naive = std::max(naive, std::abs(purity_edge_naive(psi, k) - purity_edge(psi, k)));
  }
  info(fmt("literal 1 - tr rho^2 evaluation loses sqrt(eps) near zero edges: max deviation %.3e", naive));
  info(fmt("quoted closed forms vs dense solve (sign and drive-order conventions differ): max %.3e", quoted));
  verdict(5, solve_err <= kSolveTolerance && edge_err <= kEdgeTolerance,
          fmt("Cramer vs dense solve %.2e <= 1e-10 over 1000 draws; edge formulas vs purity %.2e <= 1e-12", solve_err,
              edge_err));
}

void criterion6() {
  const auto layout = HilbertLayout::resonator_atom(1);
  double trace = 0.0, herm = 0.0, min_eig = 0.0, residual = 0.0, relax = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    SystemParams p;
    p.delta1 = p.delta2 = oracle::uniform(-1, 1);
    p.delta_a = oracle::uniform(-1, 1);
    p.J = oracle::uniform(0, 1);
    p.g = oracle::uniform(0, 1);
    p.kappa1 = p.kappa2 = oracle::uniform(0.2, 1);
    p.gamma = oracle::uniform(0.2, 1);
    p.omega1 = oracle::uniform(0, 0.5);
    p.omega2 = oracle::uniform(0, 0.5);
    try {
      const Liouvillian l = system_liouvillian(p, layout);
      const SteadyState ss = solve_steady_state(l);
      const ComplexMatrix& rho = ss.rho.matrix();
      trace = std::max(trace, std::abs(rho.trace() - 1.0));
      herm = std::max(herm, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
      min_eig = std::min(min_eig, hermitian_eigensystem(rho).values.minCoeff());
      residual = std::max(residual, ss.residual);
      const DensityMatrix late = evolve(DensityMatrix::basis_state({0, 0, 0}, layout), l, 100.0, 0.05);
      relax = std::max(relax, trace_distance(late.matrix(), rho));
    } catch (const Error& e) {
      info(std::string("draw failed: ") + e.what());
      ok = false;
    }
  }
  info(fmt("trace %.1e, hermiticity %.1e, min eigenvalue %.1e", trace, herm, min_eig));
  info(fmt("residual %.1e, trace distance to evolve(t=100) %.1e", residual, relax));
  verdict(6,
          ok && trace <= kStateTolerance && herm <= kStateTolerance && min_eig >= -kPositivityTolerance &&
              residual <= kResidualTolerance && relax <= kRelaxationTolerance,
          "steady-state invariants over 100 random draws");
}

bool numeric_polygon(const std::string& preset, NumericState state, double* worst_excess, int* points) {
  SweepSpec base = figure_preset(preset);
  base.methods = {Method::Numeric};
  base.observables = {Observable::EdgeC1, Observable::EdgeC2, Observable::EdgeC3};
  base.numeric_state = state;
  bool ok = true;
  for (const Curve& curve : expand_family(base)) {
    for (const GridPoint& pt : run_sweep(curve.spec).points) {
      const MethodRecord& r = pt.records[0];
      ++*points;
      if (!r.ok()) {
        ok = false;
        continue;
      }
      const double a = r.values[0] * r.values[0], b = r.values[1] * r.values[1], c = r.values[2] * r.values[2];
      *worst_excess = std::max({*worst_excess, a - b - c, b - c - a, c - a - b});
      ok = ok && polygon_holds(r.values[0], r.values[1], r.values[2], kPolygonCheckTolerance);
    }
  }
  return ok;
}

void criterion7() {
  bool random_ok = true;
  for (int trial = 0; trial < 10000; ++trial) {
    const ComplexVector v = oracle::random_unit_vector(4);
    const ConcurrenceTriangle t = edge_concurrences({v(0), v(1), v(2), v(3)});
    random_ok = random_ok && polygon_holds(t.c1_23, t.c2_31, t.c3_12, kPolygonCheckTolerance);
  }
  double excess = -1.0;
  int points = 0;
  bool sweep_ok = numeric_polygon("fig6a", NumericState::DominantPure, &excess, &points);
  sweep_ok = numeric_polygon("fig6b", NumericState::DominantPure, &excess, &points) && sweep_ok;
  double mixed_excess = -1.0;
  int mixed_points = 0;
  const bool mixed_ok = numeric_polygon("fig6a", NumericState::Mixed, &mixed_excess, &mixed_points) &&
                        numeric_polygon("fig6b", NumericState::Mixed, &mixed_excess, &mixed_points);
  info(std::string("mixed-state edges on the same grids: ") + (mixed_ok ? "hold" : "violate") +
       fmt(", largest squared-edge excess %.3e", mixed_excess));
  verdict(7, random_ok && sweep_ok,
          fmt("polygon inequality on 10^4 random states and %d numeric sweep points (largest excess %.2e)", points,
              excess));
}

void criterion8() {
  double amp_err = 0.0, conc_err = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    SystemParams q = oracle::random_symmetric_params();
    q.J = 0.0;
    q.omega2 = 0.0;
    const JCAmplitudes jc = jc_amplitudes(q);
    const WeakDriveAmplitudes w = weak_drive_amplitudes(jc_convention_params(q));
    amp_err = std::max({amp_err, std::abs(w.c1 - jc.C1), std::abs(w.c3 - jc.C2), std::abs(w.c2)});
    conc_err = std::max(conc_err, std::abs(jc_concurrence(jc) - 2.0 * std::abs(w.c1) * std::abs(w.c3)));
  }
  verdict(8, amp_err <= kJcTolerance && conc_err <= kJcTolerance,
          fmt("JC reduction: amplitudes %.2e, concurrence %.2e (<= 1e-10 over 1000 draws)", amp_err, conc_err));
}

void criterion9() {
  bool pass = true;
  for (double omega : {0.05, 0.1}) {
    double worst = 0.0;
    for (double g : {0.3, 0.6}) {
      SweepSpec s = single_curve("fig6a", "g", g);
      s.base.omega1 = s.base.omega2 = omega;
      s.methods = {Method::Numeric};
      s.n_max = 1;
      const auto f1 = column(run_sweep(s), 0, 0);
      s.n_max = 2;
      const auto f2 = column(run_sweep(s), 0, 0);
      if (f1.empty() || f2.empty()) {
        pass = false;
        continue;
      }
      for (std::size_t i = 0; i < f1.size(); ++i) worst = std::max(worst, std::abs(f1[i] - f2[i]));
    }
    info(fmt("omega=%.2f: max |fill(n_max=1) - fill(n_max=2)| = %.3e", omega, worst));
    pass = pass && worst <= kTruncationTolerance;
  }
  verdict(9, pass, "truncation convergence n_max 1 vs 2 within 1e-3 at omega <= 0.1 on the fig6a grid");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
