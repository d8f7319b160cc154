#include "biphoton/spectrometer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "biphoton/errors.hpp"
#include "biphoton/random.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

void DispersiveFiber::validate() const {
  if (!(length_km > 0.0)) {
    throw InvalidParameterError("fiber: length > 0 violated");
  }
  if (!std::isfinite(dispersion_ps_per_nm_km) || dispersion_ps_per_nm_km == 0.0) {
    throw InvalidParameterError("fiber: dispersion finite and nonzero violated");
  }
  if (!(reference_wavelength_nm > 0.0)) {
    throw InvalidParameterError("fiber: reference wavelength > 0 violated");
  }
}

double delay_of(double wavelength_nm, const DispersiveFiber& fiber) {
  const double dl = wavelength_nm - fiber.reference_wavelength_nm;
  const double ps = fiber.length_km *
                    (fiber.dispersion_ps_per_nm_km * dl +
                     0.5 * fiber.dispersion_slope_ps_per_nm2_km * dl * dl);
  return ps * 1e-12;
}

CoincidenceHistogram simulate_spectrometer_run(
    const JointSpectralAmplitude& jsa, const DispersiveFiber& fiber,
    const std::pair<DetectorParams, DetectorParams>& detectors, const SpectrometerRunOptions& opts,
    std::uint64_t seed) {
  fiber.validate();
  detectors.first.validate();
  detectors.second.validate();
  if (!(opts.beamsplitter_ratio >= 0.0 && opts.beamsplitter_ratio <= 1.0)) {
    throw InvalidParameterError("spectrometer: beamsplitter_ratio in [0,1] violated");
  }
  if (!(opts.duration_s > 0.0) || !(opts.pair_rate_hz >= 0.0)) {
    throw InvalidParameterError("spectrometer: duration > 0 and pair_rate >= 0 violated");
  }

  const auto& grid = jsa.grid;
  const int ns = grid.n_signal();
  const int ni = grid.n_idler();

  // joint sampling density over grid cells
  std::vector<double> weights(static_cast<std::size_t>(ns) * ni);
  for (int r = 0; r < ns; ++r) {
    const double wr = grid.signal_weights()[r];
    for (int c = 0; c < ni; ++c) {
      weights[static_cast<std::size_t>(r) * ni + c] =
          wr * grid.idler_weights()[c] *
          (std::norm(jsa.f_minus(r, c)) + std::norm(jsa.f_plus(r, c)));
    }
  }
  const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);

  Rng rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<std::int64_t> tags1, tags2;

  if (opts.pair_rate_hz > 0.0 && wsum > 0.0) {
    std::discrete_distribution<std::size_t> cell(weights.begin(), weights.end());
    std::exponential_distribution<double> wait(opts.pair_rate_hz);

    // precompute spool delays per grid wavelength
    std::vector<double> delay_s(ns), delay_i(ni);
    for (int r = 0; r < ns; ++r) delay_s[r] = delay_of(grid.signal_nm()[r], fiber);
    for (int c = 0; c < ni; ++c) delay_i[c] = delay_of(grid.idler_nm()[c], fiber);

    auto record_photon = [&](double arrival_s) {
      const bool to_arm1 = uni(rng) < opts.beamsplitter_ratio;
      const auto& det = to_arm1 ? detectors.first : detectors.second;
      if (uni(rng) < det.efficiency) {
        auto& arm = to_arm1 ? tags1 : tags2;
        arm.push_back(static_cast<std::int64_t>(
            std::llround((arrival_s + det.jitter_sigma_s * gauss(rng)) * 1e12)));
      }
    };

    double t = wait(rng);
    while (t < opts.duration_s) {
      const std::size_t idx = cell(rng);
      const int r = static_cast<int>(idx / ni);
      const int c = static_cast<int>(idx % ni);
      record_photon(t + delay_s[r]);
      record_photon(t + delay_i[c]);
      t += wait(rng);
    }
  }

  // per-arm dark counts
  auto add_darks = [&](std::vector<std::int64_t>& tags, const DetectorParams& det) {
    if (det.dark_rate_hz <= 0.0) return;
    std::exponential_distribution<double> wait(det.dark_rate_hz);
    double t = wait(rng);
    while (t < opts.duration_s) {
      tags.push_back(static_cast<std::int64_t>(std::llround(t * 1e12)));
      t += wait(rng);
    }
  };
  add_darks(tags1, detectors.first);
  add_darks(tags2, detectors.second);

  const TimeTagStream s1 = finalize_stream(1, std::move(tags1), detectors.first);
  const TimeTagStream s2 = finalize_stream(2, std::move(tags2), detectors.second);
  return coincidence_histogram(s1, s2, opts.bin_width_s, opts.max_delay_s);
}

namespace {

// delay difference of the photon at wavelength l relative to its conjugate
double delay_split(double l_nm, const DispersiveFiber& fiber, const PumpParams& pump) {
  return delay_of(l_nm, fiber) - delay_of(conjugate_wavelength(pump, l_nm), fiber);
}

}  // namespace

std::vector<SpectrumPoint> reconstruct_spectrum(const CoincidenceHistogram& hist,
                                                const DispersiveFiber& fiber,
                                                const PumpParams& pump,
                                                std::pair<double, double> accidental_window_s,
                                                std::pair<double, double> band_nm) {
  fiber.validate();
  pump.validate();
  const auto [band_lo, band_hi] = band_nm;
  if (!(band_lo > 0.0) || !(band_lo < band_hi)) {
    throw InvalidParameterError("reconstruct_spectrum: invalid band");
  }

  // strict monotonicity scan of the delay-difference map over the band
  {
    const int n_scan = 2048;
    double prev = delay_split(band_lo, fiber, pump);
    for (int i = 1; i < n_scan; ++i) {
      const double l = band_lo + (band_hi - band_lo) * static_cast<double>(i) / (n_scan - 1);
      const double d = delay_split(l, fiber, pump);
      if (!(d > prev)) {
        throw NonInvertibleError("reconstruct_spectrum: delay map not monotone over band");
      }
      prev = d;
    }
  }

  const double d_lo = delay_split(band_lo, fiber, pump);
  const double d_hi = delay_split(band_hi, fiber, pump);

  // accidental floor per bin
  double acc_sum = 0.0;
  std::size_t acc_bins = 0;
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    const double mag = std::abs(static_cast<double>(hist.delays_ps[i])) * 1e-12;
    if (mag >= accidental_window_s.first && mag <= accidental_window_s.second) {
      acc_sum += static_cast<double>(hist.counts[i]);
      ++acc_bins;
    }
  }
  const double floor_per_bin = acc_bins > 0 ? acc_sum / static_cast<double>(acc_bins) : 0.0;

  auto invert = [&](double d) -> double {
    double lo = band_lo, hi = band_hi;
    while (hi - lo > 1e-4) {
      const double mid = 0.5 * (lo + hi);
      if (delay_split(mid, fiber, pump) < d) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  std::vector<SpectrumPoint> out;
  out.reserve(hist.counts.size());
  const double half_bin_s = 0.5 * static_cast<double>(hist.bin_width_ps) * 1e-12;
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    const double d = static_cast<double>(hist.delays_ps[i]) * 1e-12;
    if (d <= d_lo || d >= d_hi) continue;

    const double l_center = invert(d);
    const double l_minus = invert(std::max(d - half_bin_s, d_lo));
    const double l_plus = invert(std::min(d + half_bin_s, d_hi));
    const double dl = l_plus - l_minus;
    if (!(dl > 0.0)) continue;

    const double signal = static_cast<double>(hist.counts[i]) - floor_per_bin;
    SpectrumPoint p;
    p.wavelength_nm = l_center;
    p.intensity = std::max(signal, 0.0) / dl;
    p.intensity_err = std::sqrt(std::max(static_cast<double>(hist.counts[i]), 1.0)) / dl;
    out.push_back(p);
  }

  std::sort(out.begin(), out.end(),
            [](const SpectrumPoint& a, const SpectrumPoint& b) { return a.wavelength_nm < b.wavelength_nm; });

  double peak = 0.0;
  for (const auto& p : out) peak = std::max(peak, p.intensity);
  if (peak > 0.0) {
    for (auto& p : out) {
      p.intensity /= peak;
      p.intensity_err /= peak;
    }
  }
  return out;
}

}  // namespace biphoton
