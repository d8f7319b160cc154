#pragma once

#include <vector>

namespace biphoton {

/// Discretization of the (signal, idler) frequency plane. Wavelengths are
/// vacuum nm, strictly increasing, at least 8 points per axis.
///
/// The pump ridge (energy conservation) is razor thin compared to any
/// practical grid pitch, so the default grids are built uniform in angular
/// frequency and conjugate-symmetric about half the pump frequency: the
/// exact-energy-conservation locus then coincides with the grid
/// anti-diagonal and every grid sum sees the same pump-envelope sample
/// pattern. See SpectralGrid::conjugate_symmetric.
class SpectralGrid {
 public:
  /// Builds a grid from explicit wavelength arrays. Throws
  /// InvalidParameterError on non-increasing, non-positive or short axes.
  SpectralGrid(std::vector<double> signal_nm, std::vector<double> idler_nm);

  /// n-point grid uniform in angular frequency, symmetric about
  /// `center_nm`'s frequency, with `short_edge_nm` as the lowest wavelength.
  /// Both axes are identical. The long edge is the frequency mirror of the
  /// short edge, i.e. the conjugate wavelength about `center_nm`.
  static SpectralGrid conjugate_symmetric(double center_nm, double short_edge_nm, int points);

  const std::vector<double>& signal_nm() const { return signal_nm_; }
  const std::vector<double>& idler_nm() const { return idler_nm_; }
  /// Angular frequencies matching signal_nm()/idler_nm() order (decreasing).
  const std::vector<double>& signal_omega() const { return signal_omega_; }
  const std::vector<double>& idler_omega() const { return idler_omega_; }

  int n_signal() const { return static_cast<int>(signal_nm_.size()); }
  int n_idler() const { return static_cast<int>(idler_nm_.size()); }

  /// Trapezoidal quadrature weights over the angular-frequency measure,
  /// positive, matching the wavelength array order. Frequency-domain
  /// integrals throughout the library use these weights.
  const std::vector<double>& signal_weights() const { return signal_w_; }
  const std::vector<double>& idler_weights() const { return idler_w_; }

  bool operator==(const SpectralGrid& other) const {
    return signal_nm_ == other.signal_nm_ && idler_nm_ == other.idler_nm_;
  }

 private:
  std::vector<double> signal_nm_, idler_nm_;
  std::vector<double> signal_omega_, idler_omega_;
  std::vector<double> signal_w_, idler_w_;
};

/// Trapezoid weights |domega| for a frequency axis given in nm order.
std::vector<double> trapezoid_weights_omega(const std::vector<double>& omegas);

}  // namespace biphoton
