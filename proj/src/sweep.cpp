#include "tricav/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "tricav/analytic.hpp"
#include "tricav/entanglement.hpp"
#include "tricav/lindblad.hpp"

namespace tricav {

namespace {

constexpr std::pair<Method, std::string_view> kMethodNames[] = {
    {Method::Analytic, "analytic"},
    {Method::Numeric, "numeric"},
};

constexpr std::pair<Observable, std::string_view> kObservableNames[] = {
    {Observable::JcConcurrence, "jc_concurrence"},
    {Observable::EdgeC1, "edge_c1"},
    {Observable::EdgeC2, "edge_c2"},
    {Observable::EdgeC3, "edge_c3"},
    {Observable::Fill, "fill"},
    {Observable::PhotonNumber1, "photon_number_1"},
    {Observable::PhotonNumber2, "photon_number_2"},
    {Observable::AtomExcitation, "atom_excitation"},
};

bool wants(const SweepSpec& spec, std::initializer_list<Observable> any) {
  for (Observable o : spec.observables)
    if (std::find(any.begin(), any.end(), o) != any.end()) return true;
  return false;
}

struct Values {
  double jc = 0.0;
  ConcurrenceTriangle triangle;
  double n1 = 0.0;
  double n2 = 0.0;
  double atom = 0.0;

  double get(Observable o) const {
    switch (o) {
      case Observable::JcConcurrence: return jc;
      case Observable::EdgeC1: return triangle.c1_23;
      case Observable::EdgeC2: return triangle.c2_31;
      case Observable::EdgeC3: return triangle.c3_12;
      case Observable::Fill: return triangle.fill;
      case Observable::PhotonNumber1: return n1;
      case Observable::PhotonNumber2: return n2;
      case Observable::AtomExcitation: return atom;
    }
    return 0.0;
  }
};

constexpr std::initializer_list<Observable> kTripartite = {Observable::EdgeC1,        Observable::EdgeC2,
                                                           Observable::EdgeC3,        Observable::Fill,
                                                           Observable::PhotonNumber1, Observable::PhotonNumber2,
                                                           Observable::AtomExcitation};

void analytic_values(const SweepSpec& spec, const SystemParams& p, MethodRecord& rec, Values& v) {
  if (wants(spec, {Observable::JcConcurrence})) {
    // The JC closed form writes the atomic detuning as Da/2; the Hamiltonian
    // block carries Da, hence the doubling.
    SystemParams q = p;
    q.delta_a = 2 * p.delta_a;
    const JCSolution jc = solve_jc(q);
    v.jc = jc_concurrence(jc.amplitudes);
    rec.det_m_abs = std::abs(jc.determinant);
    rec.quoted_discrepancy = jc.printed_discrepancy;
  }
  if (wants(spec, kTripartite)) {
    const WeakDriveSolution s = solve_weak_drive(p);
    rec.det_m_abs = std::abs(s.determinant);
    rec.quoted_discrepancy = s.printed_discrepancy;
    const WeakDriveAmplitudes& a = s.amplitudes;
    if (wants(spec, {Observable::Fill}))
      v.triangle = triangle_from_amplitudes(a);
    else
      v.triangle = edge_concurrences(a);
    v.n1 = std::norm(a.c1);
    v.n2 = std::norm(a.c2);
    v.atom = std::norm(a.c3);
  }
}

void numeric_values(const SweepSpec& spec, const SystemParams& p, MethodRecord& rec, Values& v) {
  const HilbertLayout layout = HilbertLayout::resonator_atom(spec.n_max);
  const SteadyState ss = solve_steady_state(system_liouvillian(p, layout));
  rec.spectral_gap = ss.spectral_gap;

  const SystemOperators ops(layout);
  v.n1 = ss.rho.expectation(ops.n1());
  v.n2 = ss.rho.expectation(ops.n2());
  v.atom = ss.rho.expectation(ops.atom_excitation());

  if (!wants(spec, {Observable::JcConcurrence, Observable::EdgeC1, Observable::EdgeC2, Observable::EdgeC3,
                    Observable::Fill}))
    return;
  std::optional<DensityMatrix> two_level;
  if (spec.n_max == 1) {
    two_level = ss.rho;
    rec.projection_weight = 1.0;
  } else {
    TwoLevelProjection proj = project_two_level(ss.rho);
    rec.projection_weight = proj.weight;
    two_level = std::move(proj.rho);
  }
  if (wants(spec, {Observable::JcConcurrence}))
    v.jc = wootters_concurrence(partial_trace(two_level->matrix(), two_level->layout(), {kResonator1, kAtom}));
  if (wants(spec, {Observable::EdgeC1, Observable::EdgeC2, Observable::EdgeC3, Observable::Fill})) {
    if (spec.numeric_state == NumericState::DominantPure) two_level = dominant_pure_component(*two_level);
    if (wants(spec, {Observable::Fill})) {
      v.triangle = triangle_from_state(*two_level);
    } else {
      v.triangle.c1_23 = one_vs_rest_concurrence(*two_level, kResonator1);
      v.triangle.c2_31 = one_vs_rest_concurrence(*two_level, kResonator2);
      v.triangle.c3_12 = one_vs_rest_concurrence(*two_level, kAtom);
    }
  }
}

}  // namespace

std::string_view method_name(Method m) {
  for (auto [k, name] : kMethodNames)
    if (k == m) return name;
  return "?";
}

std::string_view observable_name(Observable o) {
  for (auto [k, name] : kObservableNames)
    if (k == o) return name;
  return "?";
}

std::string_view numeric_state_name(NumericState s) {
  return s == NumericState::Mixed ? "mixed" : "dominant";
}

NumericState parse_numeric_state(std::string_view name) {
  if (name == "mixed") return NumericState::Mixed;
  if (name == "dominant") return NumericState::DominantPure;
  throw Error(Errc::InvalidArgument, "unknown numeric state '" + std::string(name) + "'");
}

Method parse_method(std::string_view name) {
  for (auto [k, n] : kMethodNames)
    if (n == name) return k;
  throw Error(Errc::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

Observable parse_observable(std::string_view name) {
  for (auto [k, n] : kObservableNames)
    if (n == name) return k;
  throw Error(Errc::InvalidArgument, "unknown observable '" + std::string(name) + "'");
}

std::vector<double> Axis::values() const {
  std::vector<double> out(static_cast<std::size_t>(std::max(points, 0)));
  for (int k = 0; k < points; ++k) {
    // Endpoints exact; interior points by the affine formula.
    out[k] = k == points - 1 ? max : min + (max - min) * k / (points - 1);
  }
  return out;
}

void SweepSpec::validate() const {
  if (axes.empty() || axes.size() > 2) {
    throw Error(Errc::InvalidArgument, "sweep needs 1 or 2 axes, got " + std::to_string(axes.size()));
  }
  std::vector<std::string> names;
  for (const Axis& a : axes) {
    if (!is_param_name(a.name)) throw Error(Errc::InvalidAxis, "unknown axis '" + a.name + "'");
    if (a.points < 2) {
      throw Error(Errc::InvalidArgument,
                  "axis '" + a.name + "' needs at least 2 points, got " + std::to_string(a.points));
    }
    if (!std::isfinite(a.min) || !std::isfinite(a.max)) {
      throw Error(Errc::InvalidArgument, "axis '" + a.name + "' has a non-finite range");
    }
    names.push_back(a.name);
  }
  if (family) {
    if (!is_param_name(family->name)) throw Error(Errc::InvalidAxis, "unknown family '" + family->name + "'");
    if (family->values.empty()) throw Error(Errc::InvalidArgument, "family '" + family->name + "' has no values");
    names.push_back(family->name);
  }
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
    throw Error(Errc::InvalidAxis, "parameter swept twice");
  }
  if (methods.empty()) throw Error(Errc::InvalidArgument, "no methods requested");
  if (observables.empty()) throw Error(Errc::InvalidArgument, "no observables requested");
  if (n_max < 1) throw Error(Errc::InvalidArgument, "n_max must be at least 1");
  base.validate();
}

Index SweepSpec::grid_size() const {
  Index n = 1;
  for (const Axis& a : axes) n *= a.points;
  return n;
}

std::string format_label(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::vector<Curve> expand_family(const SweepSpec& spec) {
  if (!spec.family) return {{"", spec}};
  std::vector<Curve> out;
  for (double v : spec.family->values) {
    Curve c{"_" + spec.family->name + format_label(v), spec};
    c.spec.family.reset();
    set_param(c.spec.base, spec.family->name, v);
    out.push_back(std::move(c));
  }
  return out;
}

Index SweepResult::error_count() const {
  Index n = 0;
  for (const GridPoint& pt : points)
    for (const MethodRecord& r : pt.records) n += !r.ok();
  return n;
}

SystemParams point_params(const SweepSpec& spec, const std::vector<double>& coords) {
  SystemParams p = spec.base;
  for (std::size_t k = 0; k < spec.axes.size(); ++k) set_param(p, spec.axes[k].name, coords[k]);
  return p;
}

MethodRecord evaluate_point(const SweepSpec& spec, const SystemParams& p, Method method) {
  MethodRecord rec;
  rec.method = method;
  Values v;
  try {
    if (method == Method::Analytic)
      analytic_values(spec, p, rec, v);
    else
      numeric_values(spec, p, rec, v);
  } catch (const Error& e) {
    rec.error = e.code();
    rec.message = e.what();
    return rec;
  }
  for (Observable o : spec.observables) rec.values.push_back(v.get(o));
  return rec;
}

SweepResult run_sweep(const SweepSpec& spec, int jobs) {
  spec.validate();
  const Index total = spec.grid_size();

  std::vector<std::vector<double>> axis_values;
  for (const Axis& a : spec.axes) axis_values.push_back(a.values());

  SweepResult result{spec, std::vector<GridPoint>(static_cast<std::size_t>(total))};
  auto work = [&](Index idx) {
    GridPoint& pt = result.points[static_cast<std::size_t>(idx)];
    pt.coords.resize(spec.axes.size());
    Index rest = idx;
    for (std::size_t k = spec.axes.size(); k-- > 0;) {
      const Index n = spec.axes[k].points;
      pt.coords[k] = axis_values[k][static_cast<std::size_t>(rest % n)];
      rest /= n;
    }
    const SystemParams p = point_params(spec, pt.coords);
    for (Method m : spec.methods) pt.records.push_back(evaluate_point(spec, p, m));
  };

  const int workers = static_cast<int>(std::clamp<Index>(jobs, 1, total));
  if (workers == 1) {
    for (Index i = 0; i < total; ++i) work(i);
    return result;
  }
  std::atomic<Index> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (Index i = next++; i < total; i = next++) work(i);
    });
  }
  for (std::thread& t : pool) t.join();
  return result;
}

SweepSpec figure_preset(std::string_view name) {
  SweepSpec s;
  s.name = std::string(name);
  s.base.kappa1 = s.base.kappa2 = 1.0;
  s.base.gamma = 0.1;
  s.base.delta_a = 1.0;
  s.base.J = 0.5;
  s.base.g = 0.5;
  s.base.omega1 = s.base.omega2 = 0.5;
  s.methods = {Method::Analytic, Method::Numeric};

  const Axis delta{"delta", -3.0, 3.0, 201};
  const Axis g_axis{"g", 0.0, 1.0, 201};

  if (name == "fig2a") {
    s.base.J = 0.0;
    s.base.omega2 = 0.0;
    s.axes = {delta};
    s.family = Family{"g", {0.3, 0.6}};
    s.observables = {Observable::JcConcurrence};
  } else if (name == "fig2c") {
    s.base.g = 0.001;
    s.base.omega2 = 0.0;
    s.axes = {delta};
    s.family = Family{"J", {0.3, 0.6}};
    s.observables = {Observable::EdgeC1, Observable::EdgeC2};
  } else if (name == "fig3a") {
    s.axes = {delta};
    s.observables = {Observable::EdgeC1, Observable::EdgeC2, Observable::EdgeC3};
  } else if (name == "fig3b") {
    s.axes = {g_axis};
    s.observables = {Observable::EdgeC1, Observable::EdgeC2, Observable::EdgeC3};
  } else if (name == "fig6a") {
    s.axes = {delta};
    s.family = Family{"g", {0.3, 0.6}};
  } else if (name == "fig6b") {
    s.axes = {delta};
    s.family = Family{"J", {0.3, 0.6}};
  } else if (name == "fig7a") {
    s.axes = {delta, Axis{"omega", 0.0, 1.0, 201}};
    s.methods = {Method::Analytic};
  } else if (name == "fig7b") {
    s.axes = {delta, g_axis};
    s.methods = {Method::Analytic};
  } else if (name == "fig8a") {
    s.axes = {g_axis};
    s.family = Family{"gamma", {0.05, 0.1, 0.2}};
  } else if (name == "fig8b") {
    s.axes = {g_axis};
    s.family = Family{"omega", {0.1, 0.5, 1.0}};
  } else {
    throw Error(Errc::UnknownPreset, "unknown preset '" + std::string(name) + "'");
  }
  return s;
}

}  // namespace tricav
