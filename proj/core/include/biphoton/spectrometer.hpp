#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "biphoton/counting.hpp"
#include "biphoton/spectral.hpp"

namespace biphoton {

/// Long dispersive fiber spool used as a time-of-flight spectrometer.
struct DispersiveFiber {
  double length_km = 20.0;
  double dispersion_ps_per_nm_km = 17.0;       // D at the reference wavelength
  double dispersion_slope_ps_per_nm2_km = 0.056;
  double reference_wavelength_nm = 1550.0;

  void validate() const;
};

/// Relative group delay (seconds) after the spool:
/// tau(l) = L [ D (l - l0) + S/2 (l - l0)^2 ].
double delay_of(double wavelength_nm, const DispersiveFiber& fiber);

struct SpectrometerRunOptions {
  double beamsplitter_ratio = 0.5;  // probability of routing to output arm 1
  double bin_width_s = 500e-12;
  double max_delay_s = 100e-9;
  double pair_rate_hz = 7e5;
  double duration_s = 1.0;
};

/// Samples pairs from the |f-|^2 + |f+|^2 grid density, routes each photon
/// independently at the beamsplitter (coincidence requires opposite outputs),
/// disperses arrival times through the spool, adds jitter, dark counts and
/// dead time, and histograms the arm-2 minus arm-1 delays.
CoincidenceHistogram simulate_spectrometer_run(const JointSpectralAmplitude& jsa,
                                               const DispersiveFiber& fiber,
                                               const std::pair<DetectorParams, DetectorParams>& detectors,
                                               const SpectrometerRunOptions& opts,
                                               std::uint64_t seed);

struct SpectrumPoint {
  double wavelength_nm = 0.0;
  double intensity = 0.0;      // relative, unit peak
  double intensity_err = 0.0;  // Poisson, same scale
};

/// Inverts the delay-difference histogram back to a biphoton spectrum.
/// Each bin delay d is mapped to the wavelength solving
/// tau(l) - tau(conjugate(l)) = d by bisection (1e-4 nm); the accidental
/// floor (mean over bins whose |delay| lies inside `accidental_window_s`)
/// is subtracted, negatives clip to zero, and intensities carry the
/// d(lambda)/d(tau) Jacobian correction. Throws NonInvertibleError when the
/// delay map is not strictly monotone over the band.
std::vector<SpectrumPoint> reconstruct_spectrum(const CoincidenceHistogram& hist,
                                                const DispersiveFiber& fiber,
                                                const PumpParams& pump,
                                                std::pair<double, double> accidental_window_s,
                                                std::pair<double, double> band_nm);

}  // namespace biphoton
