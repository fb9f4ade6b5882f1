#include "tricav/validate.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>

#include "tricav/analytic.hpp"
#include "tricav/entanglement.hpp"
#include "tricav/io.hpp"
#include "tricav/lindblad.hpp"
#include "tricav/sweep.hpp"

namespace tricav {

namespace {

class Draws {
public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  ComplexVector unit_vector(Index n) {
    std::normal_distribution<double> normal;
    ComplexVector v(n);
    for (Index k = 0; k < n; ++k) v(k) = cdouble(normal(rng_), normal(rng_));
    return v / v.norm();
  }

  ComplexMatrix matrix(Index n) {
    std::normal_distribution<double> normal;
    ComplexMatrix m(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) m(i, j) = cdouble(normal(rng_), normal(rng_));
    return m;
  }

  SystemParams params() {
    SystemParams p;
    p.delta1 = p.delta2 = uniform(-3, 3);
    p.delta_a = uniform(-2, 2);
    p.J = uniform(0, 1);
    p.g = uniform(0, 1);
    p.omega1 = uniform(0, 0.5);
    p.omega2 = uniform(0, 0.5);
    p.kappa1 = p.kappa2 = uniform(0.2, 1);
    p.gamma = uniform(0.01, 1);
    return p;
  }

  WeakDriveAmplitudes amplitudes() {
    const ComplexVector v = unit_vector(4);
    return {v(0), v(1), v(2), v(3)};
  }

private:
  std::mt19937_64 rng_;
};

SystemParams reference_params() {
  SystemParams p;
  p.gamma = 0.1;
  p.delta_a = 1.0;
  p.J = p.g = 0.5;
  p.omega1 = p.omega2 = 0.5;
  return p;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

struct Check {
  const char* module;
  const char* name;
  double tolerance;
  std::function<double()> error;
};

std::vector<Check> checks() {
  std::vector<Check> out;

  out.push_back({"core", "ladder commutator is the identity below the cutoff", 1e-12, [] {
                   const ComplexMatrix a = annihilation(6);
                   const ComplexMatrix c = a * a.adjoint() - a.adjoint() * a;
                   return max_abs(c.topLeftCorner(5, 5) - ComplexMatrix::Identity(5, 5));
                 }});
  out.push_back({"core", "kron mixed-product identity", 1e-12, [] {
                   Draws d(1);
                   double err = 0;
                   for (int t = 0; t < 10; ++t) {
                     const ComplexMatrix a = d.matrix(2), b = d.matrix(3), c = d.matrix(2), e = d.matrix(3);
                     err = std::max(err, max_abs(kron(a, b) * kron(c, e) - kron(ComplexMatrix(a * c), ComplexMatrix(b * e))));
                   }
                   return err;
                 }});
  out.push_back({"core", "partial trace preserves the trace", 1e-12, [] {
                   Draws d(2);
                   const HilbertLayout layout = HilbertLayout::resonator_atom(2);
                   double err = 0;
                   for (int t = 0; t < 10; ++t) {
                     const ComplexMatrix m = d.matrix(layout.total());
                     for (std::size_t s = 0; s < 3; ++s)
                       err = std::max(err, std::abs(partial_trace(m, layout, {s}).trace() - m.trace()));
                   }
                   return err;
                 }});
  out.push_back({"model", "rotating-frame Hamiltonian is Hermitian", 1e-12, [] {
                   Draws d(3);
                   double err = 0;
                   for (int n = 1; n <= 3; ++n)
                     for (int t = 0; t < 5; ++t)
                       err = std::max(err, hermiticity_error(build_hamiltonian(d.params(), HilbertLayout::resonator_atom(n))));
                   return err;
                 }});
  out.push_back({"model", "single-excitation block equals the coefficient matrix", 1e-12, [] {
                   Draws d(4);
                   const HilbertLayout layout = HilbertLayout::resonator_atom(1);
                   const Index idx[3] = {layout.index_of({1, 0, 0}), layout.index_of({0, 1, 0}), layout.index_of({0, 0, 1})};
                   double err = 0;
                   for (int t = 0; t < 20; ++t) {
                     const SystemParams p = d.params();
                     const ComplexMatrix h = build_hamiltonian(p, layout, HamiltonianKind::EffectiveNonHermitian);
                     const cdouble ground = h(0, 0);
                     const Eigen::Matrix3cd m = coefficient_matrix(p);
                     for (int r = 0; r < 3; ++r)
                       for (int c = 0; c < 3; ++c)
                         err = std::max(err, std::abs(h(idx[r], idx[c]) - (r == c ? ground : cdouble(0.0)) - m(r, c)));
                   }
                   return err;
                 }});
  out.push_back({"lindblad", "Liouvillian preserves the trace", 1e-12, [] {
                   Draws d(5);
                   const HilbertLayout layout = HilbertLayout::resonator_atom(2);
                   const Liouvillian l = system_liouvillian(d.params(), layout);
                   const ComplexVector t = vec(ComplexMatrix::Identity(layout.total(), layout.total()));
                   return (t.transpose() * l.matrix()).cwiseAbs().maxCoeff();
                 }});
  out.push_back({"lindblad", "Liouvillian preserves Hermiticity", 1e-12, [] {
                   Draws d(6);
                   const HilbertLayout layout = HilbertLayout::resonator_atom(1);
                   const Liouvillian l = system_liouvillian(d.params(), layout);
                   ComplexMatrix h = d.matrix(8);
                   h = (h + h.adjoint()).eval();
                   return hermiticity_error(l.apply(h));
                 }});
  out.push_back({"lindblad", "steady state is a valid density matrix with small residual", 1e-8, [] {
                   const SteadyState ss = solve_steady_state(system_liouvillian(reference_params(), HilbertLayout::resonator_atom(1)));
                   const DensityDiagnostics dg = ss.rho.diagnostics();
                   return std::max({dg.trace_error, dg.hermiticity, std::max(0.0, -dg.min_eigenvalue), ss.residual});
                 }});
  out.push_back({"lindblad", "evolution relaxes to the steady state", 1e-4, [] {
                   const HilbertLayout layout = HilbertLayout::resonator_atom(1);
                   const Liouvillian l = system_liouvillian(reference_params(), layout);
                   const DensityMatrix late = evolve(DensityMatrix::basis_state({0, 0, 0}, layout), l, 100.0, 1e-2);
                   return trace_distance(late.matrix(), steady_state(l).matrix());
                 }});
  out.push_back({"lindblad", "row-replacement and nullspace steady states agree", 1e-8, [] {
                   const Liouvillian l = system_liouvillian(reference_params(), HilbertLayout::resonator_atom(1));
                   return trace_distance(steady_state(l).matrix(), steady_state_from_spectrum(l).rho.matrix());
                 }});
  out.push_back({"analytic", "Cramer amplitudes match the dense solve", 1e-10, [] {
                   Draws d(7);
                   double err = 0;
                   for (int t = 0; t < 200; ++t) {
                     const SystemParams p = d.params();
                     if (std::abs(det_m(p)) <= 1e-6) continue;
                     err = std::max(err, solve_weak_drive(p).cramer_discrepancy);
                   }
                   return err;
                 }});
  out.push_back({"analytic", "weak-drive amplitudes solve the linear system", 1e-12, [] {
                   Draws d(8);
                   double err = 0;
                   for (int t = 0; t < 200; ++t) err = std::max(err, solve_weak_drive(d.params()).residual);
                   return err;
                 }});
  out.push_back({"analytic", "JC closed form is the J = W2 = 0 limit", 1e-10, [] {
                   Draws d(9);
                   double err = 0;
                   for (int t = 0; t < 100; ++t) {
                     SystemParams jc = d.params();
                     jc.J = jc.omega2 = 0.0;
                     const auto tri = solve_weak_drive(jc_convention_params(jc)).unnormalized;
                     const auto two = solve_jc(jc).unnormalized;
                     err = std::max({err, std::abs(tri[0] - two[0]), std::abs(tri[2] - two[1])});
                   }
                   return err;
                 }});
  out.push_back({"entanglement", "Wootters concurrence of pure states is 2|ad - bc|", 1e-10, [] {
                   Draws d(10);
                   double err = 0;
                   for (int t = 0; t < 100; ++t) {
                     const ComplexVector v = d.unit_vector(4);
                     err = std::max(err, std::abs(wootters_concurrence(v * v.adjoint()) - 2 * std::abs(v(0) * v(3) - v(1) * v(2))));
                   }
                   return err;
                 }});
  out.push_back({"entanglement", "closed-form edges equal the purity formula", 1e-12, [] {
                   Draws d(11);
                   const HilbertLayout layout = HilbertLayout::resonator_atom(1);
                   double err = 0;
                   for (int t = 0; t < 100; ++t) {
                     const WeakDriveAmplitudes a = d.amplitudes();
                     const ConcurrenceTriangle e = edge_concurrences(a);
                     const DensityMatrix rho = DensityMatrix::pure(a.state_vector(), layout);
                     err = std::max({err, std::abs(e.c1_23 - one_vs_rest_concurrence(rho, kResonator1)),
                                     std::abs(e.c2_31 - one_vs_rest_concurrence(rho, kResonator2)),
                                     std::abs(e.c3_12 - one_vs_rest_concurrence(rho, kAtom))});
                   }
                   return err;
                 }});
  out.push_back({"entanglement", "fill of the unit triangle is 1", 1e-12,
                 [] { return std::abs(concurrence_fill(1, 1, 1).fill - 1.0); }});
  out.push_back({"entanglement", "W-state fill is 8/9", 1e-12, [] {
                   const double w = 1.0 / std::sqrt(3.0);
                   return std::abs(triangle_from_amplitudes({0.0, w, w, w}).fill - 8.0 / 9.0);
                 }});
  out.push_back({"entanglement", "polygon inequality on 10^4 random states (violations)", 0.0, [] {
                   Draws d(12);
                   int violations = 0;
                   for (int t = 0; t < 10000; ++t) {
                     const ConcurrenceTriangle e = edge_concurrences(d.amplitudes());
                     violations += !polygon_holds(e.c1_23, e.c2_31, e.c3_12);
                   }
                   return static_cast<double>(violations);
                 }});
  out.push_back({"entanglement", "fill is symmetric under edge permutations", 1e-14, [] {
                   Draws d(13);
                   double err = 0;
                   for (int t = 0; t < 100; ++t) {
                     const ConcurrenceTriangle e = edge_concurrences(d.amplitudes());
                     const double f = concurrence_fill(e.c1_23, e.c2_31, e.c3_12).fill;
                     err = std::max({err, std::abs(concurrence_fill(e.c2_31, e.c3_12, e.c1_23).fill - f),
                                     std::abs(concurrence_fill(e.c3_12, e.c2_31, e.c1_23).fill - f)});
                   }
                   return err;
                 }});
  out.push_back({"sweep", "identical specs give bit-identical results (differing values)", 0.0, [] {
                   SweepSpec s = expand_family(figure_preset("fig6a"))[0].spec;
                   s.axes[0].points = 11;
                   const SweepResult a = run_sweep(s, 1), b = run_sweep(s, 2);
                   int diff = 0;
                   for (std::size_t i = 0; i < a.points.size(); ++i)
                     for (std::size_t m = 0; m < a.points[i].records.size(); ++m) {
                       const auto& x = a.points[i].records[m].values;
                       const auto& y = b.points[i].records[m].values;
                       diff += x.size() != y.size() || std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) != 0;
                     }
                   return static_cast<double>(diff);
                 }});
  out.push_back({"sweep", "zero coupling gives zero analytic fill", 0.0, [] {
                   SweepSpec s = figure_preset("fig6a");
                   s.family.reset();
                   s.methods = {Method::Analytic};
                   s.base.g = 0.0;
                   double worst = 0;
                   for (const GridPoint& pt : run_sweep(s).points)
                     worst = std::max(worst, pt.records[0].ok() ? std::abs(pt.records[0].values[0]) : 1.0);
                   return worst;
                 }});
  out.push_back({"sweep", "maximum fill over g does not grow with gamma (fig8a)", 0.0, [] {
                   SweepSpec s = figure_preset("fig8a");
                   s.methods = {Method::Analytic};
                   double previous = 2.0, worst_increase = 0.0;
                   for (const Curve& c : expand_family(s)) {
                     double peak = 0;
                     for (const GridPoint& pt : run_sweep(c.spec).points)
                       if (pt.records[0].ok()) peak = std::max(peak, pt.records[0].values[0]);
                     worst_increase = std::max(worst_increase, peak - previous);
                     previous = peak;
                   }
                   return worst_increase;
                 }});
  out.push_back({"sweep", "fig6 fill peaks within g of the driven normal mode delta = -J", 0.0, [] {
                   double worst = 0;
                   for (auto name : {"fig6a", "fig6b"}) {
                     SweepSpec s = figure_preset(name);
                     s.methods = {Method::Analytic};
                     for (const Curve& c : expand_family(s)) {
                       double best = -1, at = 0;
                       for (const GridPoint& pt : run_sweep(c.spec).points)
                         if (pt.records[0].ok() && pt.records[0].values[0] > best) best = pt.records[0].values[0], at = pt.coords[0];
                       worst = std::max(worst, std::abs(at + c.spec.base.J) - c.spec.base.g);
                     }
                   }
                   return std::max(0.0, worst);
                 }});
  out.push_back({"cli", "CSV round trip reproduces every value", 0.0, [] {
                   SweepSpec s = expand_family(figure_preset("fig6a"))[1].spec;
                   s.axes[0].points = 7;
                   RunConfig c;
                   c.sweep = s;
                   const ResultTable t = sweep_table(run_sweep(s), c);
                   std::stringstream ss;
                   write_csv(ss, t);
                   const ParsedCsv back = read_csv(ss);
                   int diff = back.columns != t.columns || back.rows.size() != t.rows.size();
                   for (std::size_t i = 0; !diff && i < t.rows.size(); ++i) diff += back.rows[i] != t.rows[i];
                   return static_cast<double>(diff);
                 }});
  out.push_back({"cli", "config with a misspelled key is rejected", 0.0, [] {
                   try {
                     parse_config(nlohmann::json{{"schema", 1}, {"parms", nlohmann::json::object()}});
                   } catch (const Error& e) {
                     return e.code() == Errc::Config ? 0.0 : 1.0;
                   }
                   return 1.0;
                 }});
  return out;
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  std::vector<CheckResult> results;
  for (const Check& c : checks()) {
    CheckResult r{c.module, c.name, 0.0, options.tolerance_override.value_or(c.tolerance), false};
    try {
      r.error = c.error();
      r.passed = r.error <= r.tolerance;
    } catch (const std::exception&) {
      r.error = std::numeric_limits<double>::infinity();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace tricav
