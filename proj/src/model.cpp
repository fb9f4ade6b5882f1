#include "tricav/model.hpp"

#include <algorithm>
#include <cmath>

namespace tricav {

void SystemParams::validate() const {
  const std::array<double, 10> all = {delta1, delta2, delta_a, J, g, omega1, omega2, kappa1, kappa2, gamma};
  if (!std::all_of(all.begin(), all.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(Errc::InvalidArgument, "SystemParams: non-finite parameter");
  }
  if (kappa1 < 0 || kappa2 < 0 || gamma < 0) {
    throw Error(Errc::InvalidArgument, "SystemParams: decay rates must be nonnegative");
  }
}

bool is_param_name(std::string_view name) noexcept {
  return std::find(kParamNames.begin(), kParamNames.end(), name) != kParamNames.end();
}

void set_param(SystemParams& p, std::string_view name, double value) {
  if (name == "delta1") p.delta1 = value;
  else if (name == "delta2") p.delta2 = value;
  else if (name == "delta_a") p.delta_a = value;
  else if (name == "J") p.J = value;
  else if (name == "g") p.g = value;
  else if (name == "omega1") p.omega1 = value;
  else if (name == "omega2") p.omega2 = value;
  else if (name == "kappa1") p.kappa1 = value;
  else if (name == "kappa2") p.kappa2 = value;
  else if (name == "gamma") p.gamma = value;
  else if (name == "delta") p.delta1 = p.delta2 = value;
  else if (name == "omega") p.omega1 = p.omega2 = value;
  else if (name == "kappa") p.kappa1 = p.kappa2 = value;
  else throw Error(Errc::InvalidAxis, "unknown parameter name '" + std::string(name) + "'");
}

double get_param(const SystemParams& p, std::string_view name) {
  if (name == "delta1" || name == "delta") return p.delta1;
  if (name == "delta2") return p.delta2;
  if (name == "delta_a") return p.delta_a;
  if (name == "J") return p.J;
  if (name == "g") return p.g;
  if (name == "omega1" || name == "omega") return p.omega1;
  if (name == "omega2") return p.omega2;
  if (name == "kappa1" || name == "kappa") return p.kappa1;
  if (name == "kappa2") return p.kappa2;
  if (name == "gamma") return p.gamma;
  throw Error(Errc::InvalidAxis, "unknown parameter name '" + std::string(name) + "'");
}

SystemOperators::SystemOperators(const HilbertLayout& layout)
    : a1(embed(annihilation(layout.dim(kResonator1)), kResonator1, layout)),
      a2(embed(annihilation(layout.dim(kResonator2)), kResonator2, layout)),
      sigma_minus(embed(tricav::sigma_minus(), kAtom, layout)),
      sigma_z(embed(tricav::sigma_z(), kAtom, layout)) {
  if (!layout.is_resonator_atom()) {
    throw Error(Errc::InvalidDimension, "SystemOperators: layout must be [d, d, 2]");
  }
}

ComplexMatrix build_hamiltonian(const SystemParams& p, const HilbertLayout& layout, HamiltonianKind kind) {
  p.validate();
  if (kind == HamiltonianKind::JaynesCummings && (p.J != 0.0 || p.omega2 != 0.0)) {
    throw Error(Errc::InconsistentParameters, "Jaynes-Cummings Hamiltonian requires J = 0 and omega2 = 0");
  }
  const SystemOperators ops(layout);
  const ComplexMatrix a1d = ops.a1.adjoint();
  const ComplexMatrix a2d = ops.a2.adjoint();
  const ComplexMatrix sp = ops.sigma_minus.adjoint();

  ComplexMatrix h = p.delta1 * (a1d * ops.a1) + p.delta2 * (a2d * ops.a2) + (p.delta_a / 2) * ops.sigma_z;
  h += p.J * (a1d * ops.a2 + a2d * ops.a1);
  h += p.g * (a1d * ops.sigma_minus + ops.a1 * sp);
  h += p.omega1 * (a1d + ops.a1) + p.omega2 * (a2d + ops.a2);

  if (kind == HamiltonianKind::EffectiveNonHermitian) {
    const cdouble i(0, 1);
    h -= i * (p.kappa1 / 2) * (a1d * ops.a1) + i * (p.kappa2 / 2) * (a2d * ops.a2) + i * (p.gamma / 2) * (sp * ops.sigma_minus);
  }
  return h;
}

ComplexMatrix anti_hermitian_part(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw Error(Errc::InvalidDimension, "anti_hermitian_part: matrix is not square");
  return (h - h.adjoint()) / 2.0;
}

}  // namespace tricav
