#pragma once

#include <cmath>

namespace biphoton {

/// Vacuum speed of light, m/s. All wavelength <-> angular frequency
/// conversions in the library go through this constant.
inline constexpr double kSpeedOfLight = 299'792'458.0;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Angular frequency (rad/s) of a vacuum wavelength given in nm.
inline double omega_from_nm(double wavelength_nm) {
  return 2.0 * kPi * kSpeedOfLight / (wavelength_nm * 1e-9);
}

/// Vacuum wavelength (nm) of an angular frequency given in rad/s.
inline double nm_from_omega(double omega) {
  return 2.0 * kPi * kSpeedOfLight / omega * 1e9;
}

/// Linear power/intensity ratio of a loss given in dB (>= 0 dB attenuates).
inline double transmission_from_db(double loss_db) {
  return std::pow(10.0, -loss_db / 10.0);
}

/// sin(x)/x with sinc(0) = 1 (unnormalized convention).
inline double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(x) / x;
}

/// Conversion factor: FWHM of a Gaussian to its sigma.
inline constexpr double kFwhmToSigma = 0.42466090014400952;  // 1/(2 sqrt(2 ln 2))

}  // namespace biphoton
