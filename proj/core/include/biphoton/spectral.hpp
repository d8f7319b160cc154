#pragma once

#include <Eigen/Core>
#include <complex>
#include <utility>
#include <vector>

#include "biphoton/grid.hpp"

namespace biphoton {

/// CW pump diode parameters. Wavelengths are vacuum nm.
struct PumpParams {
  double center_wavelength_nm = 782.90;
  double linewidth_fwhm_nm = 0.05;
  double power_mw = 7.5;

  /// Throws InvalidParameterError naming the violated invariant.
  void validate() const;
};

/// Periodically poled silica fiber parameters.
///
/// The fiber's dispersion is modeled as a second-order expansion of the
/// propagation constants around the effective degeneracy frequency: one
/// common-mode GVD coefficient shared by both polarization modes and one
/// group-birefringence (DGD) coefficient that splits them. The GVD default
/// in the shipped profile is a fitted constant chosen so that the simulated
/// marginal spectrum has a 101 nm FWHM; it is not a measured fiber datum.
struct PpsfParams {
  double length_m = 0.20;
  double degeneracy_wavelength_at_ref_temp_nm = 1565.80;
  double temperature_c = 34.0;
  double ref_temperature_c = 34.0;
  double temp_tuning_coeff_nm_per_c = 0.1;
  double group_birefringence = 0.0;   // |n_g,H - n_g,V|, dimensionless
  double gvd_coeff_ps2_per_km = 9.24; // common-mode GVD at degeneracy

  void validate() const;
};

enum class Branch { plus, minus };

/// Joint spectral amplitude of the biphoton: the two complex amplitudes
/// f-(ws, wi) and f+(ws, wi) sampled on a signal x idler grid.
/// Rows index signal wavelengths, columns idler wavelengths.
struct JointSpectralAmplitude {
  SpectralGrid grid;
  Eigen::ArrayXXcd f_minus;
  Eigen::ArrayXXcd f_plus;

  /// Frequency-measure integral of |f-|^2 + |f+|^2 over the grid.
  double joint_norm() const;
  bool empty(double tol = 0.0) const { return joint_norm() <= tol; }
};

/// Energy degeneracy: twice the pump vacuum wavelength.
double degeneracy_wavelength(const PumpParams& pump);

/// Idler wavelength conjugate to `signal_wavelength_nm` under energy
/// conservation 1/ls + 1/li = 1/lp. Throws DomainError when the implied
/// idler frequency is not positive.
double conjugate_wavelength(const PumpParams& pump, double signal_wavelength_nm);

/// Temperature-shifted phase-matching degeneracy wavelength.
double effective_degeneracy(const PpsfParams& ppsf);

/// Phase mismatch (1/m) of the chosen branch at a (signal, idler) wavelength
/// pair. With detunings W_s, W_i from the effective degeneracy frequency:
///
///   dk(+/-) = g/2 (W_s^2 + W_i^2) +/- (dng/c)/2 (W_s - W_i)
///
/// which on the energy-conservation manifold W_i = -W_s reduces to
/// g W^2 +/- (dng/c) W. Zero at the effective degeneracy by construction.
double phase_mismatch(double signal_wavelength_nm, double idler_wavelength_nm,
                      const PpsfParams& ppsf, const PumpParams& pump, Branch branch);

/// Evaluates f(+/-) = sqrt(P) A_pump(ws+wi) sinc(dk L/2) exp(i dk L/2) on the
/// grid, where A_pump is a Gaussian of FWHM equal to the pump linewidth
/// centered on the pump frequency. Amplitudes are in relative units.
JointSpectralAmplitude compute_jsa(const PpsfParams& ppsf, const PumpParams& pump,
                                   const SpectralGrid& grid);

enum class Axis { signal, idler };

/// Marginal intensity along one axis: sum over the other axis of
/// |f-|^2 + |f+|^2 with quadrature weights, normalized to unit peak.
std::vector<std::pair<double, double>> marginal_spectrum(const JointSpectralAmplitude& jsa,
                                                         Axis axis);

/// Linear-interpolated full width at half maximum of a sampled curve.
/// Throws NotMeasurableError when no half-maximum crossing exists on either
/// side of the peak (flat or monotone data).
double fwhm(const std::vector<std::pair<double, double>>& curve);

}  // namespace biphoton
