#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace biphoton {

/// Single-photon detector model: Bernoulli efficiency, non-paralyzable dead
/// time, independent Poisson dark counts, Gaussian timing jitter.
struct DetectorParams {
  double efficiency = 0.2;
  double dead_time_s = 15e-6;
  double dark_rate_hz = 0.0;
  double jitter_sigma_s = 150e-12;

  void validate() const;
};

/// Time tags of one detector channel, strictly increasing, quantized to
/// integer picoseconds so runs are bitwise reproducible.
struct TimeTagStream {
  std::uint8_t channel = 0;
  std::vector<std::int64_t> tags_ps;

  void validate(double dead_time_s = 0.0) const;
};

/// Histogram of pairwise delays (channel2 - channel1) with uniform bins. The
/// bin count is odd and the central bin is centered on zero delay.
struct CoincidenceHistogram {
  std::int64_t bin_width_ps = 100;
  std::vector<std::int64_t> delays_ps;  // bin centers
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
};

/// Pair-emission and detection Monte Carlo: homogeneous Poisson pair times,
/// per-photon Bernoulli survival of the dB arm loss and detector efficiency,
/// Gaussian jitter, dark counts, dead-time pruning. `background_rates` are
/// additional uncorrelated in-band photons per arm (e.g. fragments of pairs
/// whose partner fails a mismatched filter); they see the same efficiency
/// and jitter as pair photons. Deterministic per seed.
std::pair<TimeTagStream, TimeTagStream> simulate_streams(
    double pair_rate_hz, std::pair<double, double> arm_losses_db,
    const std::pair<DetectorParams, DetectorParams>& detectors, double duration_s,
    std::uint64_t seed, std::pair<double, double> background_rates_hz = {0.0, 0.0});

/// Sorts, de-duplicates and dead-time-prunes raw picosecond tags into a
/// stream that satisfies the TimeTagStream invariants.
TimeTagStream finalize_stream(std::uint8_t channel, std::vector<std::int64_t> tags,
                              const DetectorParams& detector);

/// Counts tag pairs with delay in each bin via a two-pointer merge,
/// O(N1 + N2 + matches). Throws InvalidParameterError for bin_width <= 0.
CoincidenceHistogram coincidence_histogram(const TimeTagStream& s1, const TimeTagStream& s2,
                                           double bin_width_s, double max_delay_s);

/// Coincidence-to-accidental ratio: counts in the window of `window_s` around
/// zero delay divided by counts in an accidental window starting at
/// `accidental_offset_s`, scaled to equal width. `accidental_width_s` <= 0
/// means "from the offset to the histogram edge" (both sides). Returns +inf
/// when the accidental estimate is zero. Windows must not overlap.
double car(const CoincidenceHistogram& hist, double window_s, double accidental_offset_s,
           double accidental_width_s = 0.0);

}  // namespace biphoton
