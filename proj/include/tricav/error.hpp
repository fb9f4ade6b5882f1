#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tricav {

enum class Errc {
  InvalidDimension,
  InvalidEmbedding,
  InvalidArgument,
  SingularSystem,
  InconsistentParameters,
  DegenerateSteadyState,
  StepSize,
  UnsupportedRegime,
  NearSingular,
  NoRealSolution,
  InvalidRegime,
  InvalidState,
  PolygonViolation,
  InvalidAxis,
  UnknownPreset,
  Config,
};

/// Stable machine-readable name, used in CLI error output and result tables.
std::string_view errc_name(Errc code) noexcept;

/// Library-wide exception. `data` carries the numeric payload some errors
/// report (condition estimate, spectral gap, radicand, squared edges).
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what, std::vector<double> data = {})
      : std::runtime_error(what), code_(code), data_(std::move(data)) {}

  Errc code() const noexcept { return code_; }
  const std::vector<double>& data() const noexcept { return data_; }

private:
  Errc code_;
  std::vector<double> data_;
};

}  // namespace tricav
