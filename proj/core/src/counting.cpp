#include "biphoton/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "biphoton/errors.hpp"
#include "biphoton/random.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

void DetectorParams::validate() const {
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
    throw InvalidParameterError("detector: efficiency in [0,1] violated");
  }
  if (!(dead_time_s >= 0.0)) {
    throw InvalidParameterError("detector: dead_time >= 0 violated");
  }
  if (!(dark_rate_hz >= 0.0)) {
    throw InvalidParameterError("detector: dark_rate >= 0 violated");
  }
  if (!(jitter_sigma_s >= 0.0)) {
    throw InvalidParameterError("detector: jitter_sigma >= 0 violated");
  }
}

void TimeTagStream::validate(double dead_time_s) const {
  const auto dead_ps = static_cast<std::int64_t>(std::floor(dead_time_s * 1e12));
  for (std::size_t i = 1; i < tags_ps.size(); ++i) {
    if (tags_ps[i] <= tags_ps[i - 1]) {
      throw InvalidStateError("time tag stream: tags not strictly increasing");
    }
    if (tags_ps[i] - tags_ps[i - 1] < dead_ps) {
      throw InvalidStateError("time tag stream: dead-time gap violated");
    }
  }
}

std::uint64_t CoincidenceHistogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

namespace {

constexpr double kPsPerSecond = 1e12;

std::int64_t quantize_ps(double t_s) {
  return static_cast<std::int64_t>(std::llround(t_s * kPsPerSecond));
}

// Sorted dead-time pruning (non-paralyzable detector).
void prune_dead_time(std::vector<std::int64_t>& tags, double dead_time_s) {
  if (tags.empty()) return;
  const auto dead_ps = static_cast<std::int64_t>(std::ceil(dead_time_s * kPsPerSecond));
  std::size_t out = 1;
  std::int64_t last = tags[0];
  for (std::size_t i = 1; i < tags.size(); ++i) {
    if (tags[i] - last >= dead_ps && tags[i] != last) {
      tags[out++] = tags[i];
      last = tags[i];
    }
  }
  tags.resize(out);
}

void dedup_sorted(std::vector<std::int64_t>& tags) {
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
}

}  // namespace

std::pair<TimeTagStream, TimeTagStream> simulate_streams(
    double pair_rate_hz, std::pair<double, double> arm_losses_db,
    const std::pair<DetectorParams, DetectorParams>& detectors, double duration_s,
    std::uint64_t seed, std::pair<double, double> background_rates_hz) {
  if (!(duration_s > 0.0)) {
    throw InvalidParameterError("simulate_streams: duration > 0 violated");
  }
  if (!(pair_rate_hz >= 0.0)) {
    throw InvalidParameterError("simulate_streams: pair_rate >= 0 violated");
  }
  detectors.first.validate();
  detectors.second.validate();

  Rng rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const double p_survive_1 = transmission_from_db(arm_losses_db.first) * detectors.first.efficiency;
  const double p_survive_2 = transmission_from_db(arm_losses_db.second) * detectors.second.efficiency;

  std::vector<std::int64_t> tags1, tags2;
  const double expected_pairs = pair_rate_hz * duration_s;
  tags1.reserve(static_cast<std::size_t>(expected_pairs * p_survive_1) + 16);
  tags2.reserve(static_cast<std::size_t>(expected_pairs * p_survive_2) + 16);

  // Pair emissions: exponential waiting times keep the draw order stable.
  if (pair_rate_hz > 0.0) {
    std::exponential_distribution<double> wait(pair_rate_hz);
    double t = wait(rng);
    while (t < duration_s) {
      const bool hit1 = uni(rng) < p_survive_1;
      const bool hit2 = uni(rng) < p_survive_2;
      if (hit1) {
        tags1.push_back(quantize_ps(t + detectors.first.jitter_sigma_s * gauss(rng)));
      }
      if (hit2) {
        tags2.push_back(quantize_ps(t + detectors.second.jitter_sigma_s * gauss(rng)));
      }
      t += wait(rng);
    }
  }

  auto add_poisson_events = [&](std::vector<std::int64_t>& tags, double rate_hz,
                                const DetectorParams& det, bool with_efficiency) {
    if (rate_hz <= 0.0) return;
    std::exponential_distribution<double> wait(rate_hz);
    double t = wait(rng);
    while (t < duration_s) {
      if (!with_efficiency || uni(rng) < det.efficiency) {
        tags.push_back(quantize_ps(t + det.jitter_sigma_s * gauss(rng)));
      }
      t += wait(rng);
    }
  };

  // Uncorrelated background photons (same optics path as pair photons).
  add_poisson_events(tags1, background_rates_hz.first * transmission_from_db(arm_losses_db.first),
                     detectors.first, true);
  add_poisson_events(tags2, background_rates_hz.second * transmission_from_db(arm_losses_db.second),
                     detectors.second, true);
  // Dark counts fire regardless of optics.
  add_poisson_events(tags1, detectors.first.dark_rate_hz, detectors.first, false);
  add_poisson_events(tags2, detectors.second.dark_rate_hz, detectors.second, false);

  return {finalize_stream(1, std::move(tags1), detectors.first),
          finalize_stream(2, std::move(tags2), detectors.second)};
}

TimeTagStream finalize_stream(std::uint8_t channel, std::vector<std::int64_t> tags,
                              const DetectorParams& detector) {
  std::sort(tags.begin(), tags.end());
  dedup_sorted(tags);
  prune_dead_time(tags, detector.dead_time_s);
  return TimeTagStream{channel, std::move(tags)};
}

CoincidenceHistogram coincidence_histogram(const TimeTagStream& s1, const TimeTagStream& s2,
                                           double bin_width_s, double max_delay_s) {
  if (!(bin_width_s > 0.0)) {
    throw InvalidParameterError("coincidence_histogram: bin_width > 0 violated");
  }
  if (!(max_delay_s >= bin_width_s)) {
    throw InvalidParameterError("coincidence_histogram: max_delay must cover at least one bin");
  }
  const auto bin_ps = static_cast<std::int64_t>(std::llround(bin_width_s * kPsPerSecond));
  if (bin_ps <= 0) {
    throw InvalidParameterError("coincidence_histogram: bin width below 1 ps");
  }
  const auto half_bins = static_cast<std::int64_t>(std::floor(max_delay_s * kPsPerSecond / bin_ps));
  const std::int64_t n_bins = 2 * half_bins + 1;

  CoincidenceHistogram hist;
  hist.bin_width_ps = bin_ps;
  hist.delays_ps.resize(n_bins);
  hist.counts.assign(n_bins, 0);
  for (std::int64_t i = 0; i < n_bins; ++i) {
    hist.delays_ps[i] = (i - half_bins) * bin_ps;
  }

  const std::int64_t reach = half_bins * bin_ps + bin_ps / 2;
  std::size_t lo = 0;
  for (const std::int64_t t1 : s1.tags_ps) {
    while (lo < s2.tags_ps.size() && s2.tags_ps[lo] < t1 - reach) ++lo;
    for (std::size_t j = lo; j < s2.tags_ps.size(); ++j) {
      const std::int64_t d = s2.tags_ps[j] - t1;
      if (d > reach) break;
      // nearest bin center: floor((d + bin/2) / bin), floor division
      const std::int64_t num = 2 * d + bin_ps;
      const std::int64_t den = 2 * bin_ps;
      const std::int64_t rel = num >= 0 ? num / den : -((-num + den - 1) / den);
      const std::int64_t idx = rel + half_bins;
      if (idx >= 0 && idx < n_bins) ++hist.counts[static_cast<std::size_t>(idx)];
    }
  }
  return hist;
}

double car(const CoincidenceHistogram& hist, double window_s, double accidental_offset_s,
           double accidental_width_s) {
  if (!(window_s > 0.0) || !(accidental_offset_s > 0.0)) {
    throw InvalidParameterError("car: window and offset must be positive");
  }
  const double half_window_ps = 0.5 * window_s * kPsPerSecond;
  const double offset_ps = accidental_offset_s * kPsPerSecond;
  const double span =
      static_cast<double>(hist.delays_ps.back()) + 0.5 * static_cast<double>(hist.bin_width_ps);
  const double acc_hi_ps =
      accidental_width_s > 0.0 ? offset_ps + accidental_width_s * kPsPerSecond : span;
  if (offset_ps - half_window_ps < half_window_ps) {
    throw InvalidParameterError("car: accidental window overlaps the coincidence window");
  }
  if (acc_hi_ps > span + 0.5) {
    throw InvalidParameterError("car: accidental window exceeds the histogram span");
  }

  double peak = 0.0;
  double acc = 0.0;
  std::int64_t peak_bins = 0, acc_bins = 0;
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    const double center = static_cast<double>(hist.delays_ps[i]);
    const double mag = std::abs(center);
    if (mag <= half_window_ps) {
      peak += static_cast<double>(hist.counts[i]);
      ++peak_bins;
    } else if (mag >= offset_ps && mag <= acc_hi_ps) {
      acc += static_cast<double>(hist.counts[i]);
      ++acc_bins;
    }
  }
  if (peak_bins == 0 || acc_bins == 0) {
    throw InvalidParameterError("car: windows select no histogram bins");
  }
  const double acc_scaled = acc * static_cast<double>(peak_bins) / static_cast<double>(acc_bins);
  if (acc_scaled <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return peak / acc_scaled;
}

}  // namespace biphoton
