#pragma once

#include "biphoton/density_matrix.hpp"
#include "biphoton/filters.hpp"
#include "biphoton/spectral.hpp"

namespace biphoton {

/// Traces the biphoton state over frequency. The reduced two-qubit state has
/// support only on the central {HV, VH} block:
///
///   rho_HV,HV = II |f-|^2,  rho_VH,VH = II |f+|^2,  rho_HV,VH = II f- f+*
///
/// (frequency integrals with the grid quadrature weights), normalized to unit
/// trace. Throws DegenerateStateError for a zero-norm JSA.
DensityMatrix reduce_to_polarization(const JointSpectralAmplitude& jsa);

/// Wootters two-qubit concurrence, in [0,1].
double concurrence(const DensityMatrix& rho);

/// <psi|rho|psi> against a normalized pure target. Throws
/// InvalidParameterError when the target norm is off by more than 1e-6.
double fidelity(const DensityMatrix& rho, const Vector4cd& target);

/// trace(rho^2), in [0.25, 1] for two qubits.
double purity(const DensityMatrix& rho);

}  // namespace biphoton
