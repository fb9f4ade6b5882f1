#pragma once

// Grid evaluation of the analytic and numeric pipelines, plus figure presets.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tricav/error.hpp"
#include "tricav/model.hpp"

namespace tricav {

enum class Method { Analytic, Numeric };

enum class Observable {
  JcConcurrence,
  EdgeC1,
  EdgeC2,
  EdgeC3,
  Fill,
  PhotonNumber1,
  PhotonNumber2,
  AtomExcitation,
};

std::string_view method_name(Method m);
std::string_view observable_name(Observable o);
Method parse_method(std::string_view name);
Observable parse_observable(std::string_view name);

/// State fed to the purity-based edges of the numeric method.
enum class NumericState {
  DominantPure,  // eigenvector of the largest eigenvalue of the steady state
  Mixed,         // the steady state itself
};

std::string_view numeric_state_name(NumericState s);
NumericState parse_numeric_state(std::string_view name);

/// Evenly spaced values of one parameter, endpoints included.
struct Axis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int points = 0;

  std::vector<double> values() const;
};

/// Separate curves over the same grid, one per value of `name`.
struct Family {
  std::string name;
  std::vector<double> values;
};

struct SweepSpec {
  std::string name;
  SystemParams base;
  std::vector<Axis> axes;
  std::vector<Method> methods{Method::Analytic};
  std::vector<Observable> observables{Observable::Fill};
  int n_max = 1;
  NumericState numeric_state = NumericState::DominantPure;
  std::optional<Family> family;

  /// Throws InvalidAxis for unknown or duplicate names, InvalidArgument
  /// otherwise (axis count, points < 2, empty method or observable lists).
  void validate() const;
  Index grid_size() const;
};

/// One curve of a family: the spec with the family value written into base.
struct Curve {
  std::string suffix;  // "_g0.3"; empty when the spec has no family
  SweepSpec spec;
};
std::vector<Curve> expand_family(const SweepSpec& spec);

/// Compact decimal label for file suffixes ("0.3", "1", "0.05").
std::string format_label(double value);

struct MethodRecord {
  Method method = Method::Analytic;
  std::vector<double> values;  // parallel to SweepSpec::observables; empty on error
  std::optional<double> det_m_abs;
  std::optional<double> quoted_discrepancy;  // max |quoted closed form - solve|
  std::optional<double> spectral_gap;
  std::optional<double> projection_weight;
  std::optional<Errc> error;
  std::string message;

  bool ok() const { return !error.has_value(); }
};

struct GridPoint {
  std::vector<double> coords;          // parallel to SweepSpec::axes
  std::vector<MethodRecord> records;   // parallel to SweepSpec::methods
};

struct SweepResult {
  SweepSpec spec;
  std::vector<GridPoint> points;  // row-major over axes, last axis fastest

  Index error_count() const;
};

/// Parameters of a grid point: base with each axis value applied.
SystemParams point_params(const SweepSpec& spec, const std::vector<double>& coords);

/// Evaluates one point by one method; failures land in the record.
MethodRecord evaluate_point(const SweepSpec& spec, const SystemParams& p, Method method);

/// Evaluates the whole grid with up to `jobs` worker threads. The family,
/// if any, is ignored; use expand_family for per-curve specs.
SweepResult run_sweep(const SweepSpec& spec, int jobs = 1);

inline constexpr std::string_view kPresetNames[] = {"fig2a", "fig2c", "fig3a", "fig3b", "fig6a",
                                                    "fig6b", "fig7a", "fig7b", "fig8a", "fig8b"};

/// Throws UnknownPreset for names outside kPresetNames.
SweepSpec figure_preset(std::string_view name);

}  // namespace tricav
