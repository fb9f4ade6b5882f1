#pragma once

#include <array>
#include <string>
#include <string_view>

#include "tricav/core.hpp"

namespace tricav {

/// Physical rates and detunings of the two-resonator/atom system, all in units
/// of the cavity decay rate. Detunings are measured from the drive frequency.
struct SystemParams {
  double delta1 = 0.0;   // resonator 1 detuning
  double delta2 = 0.0;   // resonator 2 detuning
  double delta_a = 0.0;  // atomic detuning
  double J = 0.0;        // photon hopping
  double g = 0.0;        // atom / resonator-1 coupling
  double omega1 = 0.0;   // drive on resonator 1
  double omega2 = 0.0;   // drive on resonator 2
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  double gamma = 0.0;

  /// Equal detunings and equal decay rates for both resonators.
  bool symmetric_cavities() const noexcept { return delta1 == delta2 && kappa1 == kappa2; }

  /// Throws InvalidArgument on negative decay rates or non-finite values.
  void validate() const;

  bool operator==(const SystemParams&) const = default;
};

/// Names accepted by get/set: every field above plus the joint aliases
/// "delta" (delta1 = delta2), "omega" (omega1 = omega2), "kappa" (kappa1 = kappa2).
inline constexpr std::array<std::string_view, 13> kParamNames = {
    "delta1", "delta2", "delta_a", "J", "g", "omega1", "omega2", "kappa1", "kappa2", "gamma", "delta", "omega", "kappa"};

bool is_param_name(std::string_view name) noexcept;
void set_param(SystemParams& p, std::string_view name, double value);
double get_param(const SystemParams& p, std::string_view name);

enum class HamiltonianKind {
  RotatingFrame,
  EffectiveNonHermitian,
  JaynesCummings,
};

/// The embedded ladder operators of a resonator/atom layout.
struct SystemOperators {
  ComplexMatrix a1;
  ComplexMatrix a2;
  ComplexMatrix sigma_minus;
  ComplexMatrix sigma_z;

  explicit SystemOperators(const HilbertLayout& layout);

  ComplexMatrix n1() const { return a1.adjoint() * a1; }
  ComplexMatrix n2() const { return a2.adjoint() * a2; }
  ComplexMatrix atom_excitation() const { return sigma_minus.adjoint() * sigma_minus; }
};

/// Rotating-frame Hamiltonian
///   D1 n1 + D2 n2 + (Da/2) sz + J (a1' a2 + a2' a1) + g (a1' s- + a1 s+)
///   + W1 (a1' + a1) + W2 (a2' + a2).
/// EffectiveNonHermitian subtracts i(k1/2) n1 + i(k2/2) n2 + i(gamma/2) s+ s-.
/// JaynesCummings is the rotating-frame form restricted to J = W2 = 0.
ComplexMatrix build_hamiltonian(const SystemParams& p, const HilbertLayout& layout,
                                HamiltonianKind kind = HamiltonianKind::RotatingFrame);

/// (H - H^dagger) / 2.
ComplexMatrix anti_hermitian_part(const ComplexMatrix& h);

}  // namespace tricav
