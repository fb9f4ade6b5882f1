#pragma once

#include <cstddef>

#include "tricav/analytic.hpp"
#include "tricav/core.hpp"
#include "tricav/lindblad.hpp"

namespace tricav {

/// Absolute tolerance on squared edges for the polygon inequality.
inline constexpr double kPolygonTolerance = 1e-9;

/// Edges of the concurrence triangle, one per bipartition i|(jk), and the
/// fill (area measure) built from them.
struct ConcurrenceTriangle {
  double c1_23 = 0.0;  // resonator 1 vs (resonator 2, atom)
  double c2_31 = 0.0;  // resonator 2 vs (atom, resonator 1)
  double c3_12 = 0.0;  // atom vs (resonator 1, resonator 2)
  double fill = 0.0;
  bool polygon_ok = true;
};

/// Two-qubit concurrence max(0, l1 - l2 - l3 - l4), with l the decreasing
/// square roots of the spectrum of rho (sy x sy) rho* (sy x sy).
double wootters_concurrence(const ComplexMatrix& rho);

/// sqrt(2 (1 - tr rho_i^2)) for the reduced state of one subsystem.
double purity_concurrence(const ComplexMatrix& reduced);
double one_vs_rest_concurrence(const DensityMatrix& rho, std::size_t subsystem);

/// Closed-form edges of the single-excitation state; `fill` is left at zero.
ConcurrenceTriangle edge_concurrences(const WeakDriveAmplitudes& a);

/// C_i^2 <= C_j^2 + C_k^2 for every i, within `tolerance` on the squares.
bool polygon_holds(double c1, double c2, double c3, double tolerance = kPolygonTolerance);

struct Fill {
  double fill;
  bool polygon_ok;
};

/// [16/3 (Q - C1^2)(Q - C2^2)(Q - C3^2) Q]^(1/4), Q = (C1^2 + C2^2 + C3^2)/2.
/// Factors in [-1e-9, 0) are roundoff and clamp to zero; anything more
/// negative throws PolygonViolation with the squared edges as payload.
Fill concurrence_fill(double c1, double c2, double c3);

/// Edges plus fill from the closed-form amplitudes.
ConcurrenceTriangle triangle_from_amplitudes(const WeakDriveAmplitudes& a);

/// Triangle of a state on the [2, 2, 2] layout via purity-based edges. For
/// mixed states the edges are the purity-based quantity, not an entanglement
/// monotone. Larger truncations must go through project_two_level first.
ConcurrenceTriangle triangle_from_state(const DensityMatrix& rho);

struct TwoLevelProjection {
  DensityMatrix rho;  // on [2, 2, 2], renormalized
  double weight;      // population kept by the projection
};

/// Restricts each resonator to its {0, 1} Fock states and renormalizes.
TwoLevelProjection project_two_level(const DensityMatrix& rho);

/// Projector onto the eigenvector of largest eigenvalue.
DensityMatrix dominant_pure_component(const DensityMatrix& rho);

}  // namespace tricav
