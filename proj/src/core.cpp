#include "tricav/core.hpp"

namespace tricav {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidDimension: return "invalid-dimension";
    case Errc::InvalidEmbedding: return "invalid-embedding";
    case Errc::InvalidArgument: return "invalid-argument";
    case Errc::SingularSystem: return "singular-system";
    case Errc::InconsistentParameters: return "inconsistent-parameters";
    case Errc::DegenerateSteadyState: return "degenerate-steady-state";
    case Errc::StepSize: return "step-size";
    case Errc::UnsupportedRegime: return "unsupported-regime";
    case Errc::NearSingular: return "near-singular";
    case Errc::NoRealSolution: return "no-real-solution";
    case Errc::InvalidRegime: return "invalid-regime";
    case Errc::InvalidState: return "invalid-state";
    case Errc::PolygonViolation: return "polygon-violation";
    case Errc::InvalidAxis: return "invalid-axis";
    case Errc::UnknownPreset: return "unknown-preset";
    case Errc::Config: return "config";
  }
  return "unknown";
}

HilbertLayout::HilbertLayout(std::vector<Index> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(Errc::InvalidDimension, "HilbertLayout: no subsystems");
  for (auto d : dims_) {
    if (d < 2) throw Error(Errc::InvalidDimension, "HilbertLayout: subsystem dimension must be >= 2");
    total_ *= d;
  }
}

HilbertLayout HilbertLayout::resonator_atom(int n_max) {
  if (n_max < 1) throw Error(Errc::InvalidDimension, "HilbertLayout: n_max must be >= 1");
  return HilbertLayout({n_max + 1, n_max + 1, 2});
}

bool HilbertLayout::is_resonator_atom() const noexcept {
  return dims_.size() == 3 && dims_[0] == dims_[1] && dims_[2] == 2;
}

Index HilbertLayout::index_of(const std::vector<Index>& digits) const {
  if (digits.size() != dims_.size()) throw Error(Errc::InvalidArgument, "index_of: wrong number of digits");
  Index flat = 0;
  for (std::size_t s = 0; s < dims_.size(); ++s) {
    if (digits[s] < 0 || digits[s] >= dims_[s]) throw Error(Errc::InvalidArgument, "index_of: digit out of range");
    flat = flat * dims_[s] + digits[s];
  }
  return flat;
}

std::vector<Index> HilbertLayout::digits_of(Index flat) const {
  if (flat < 0 || flat >= total_) throw Error(Errc::InvalidArgument, "digits_of: index out of range");
  std::vector<Index> digits(dims_.size());
  for (std::size_t s = dims_.size(); s-- > 0;) {
    digits[s] = flat % dims_[s];
    flat /= dims_[s];
  }
  return digits;
}

}  // namespace tricav
