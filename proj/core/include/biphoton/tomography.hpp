#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "biphoton/counting.hpp"
#include "biphoton/density_matrix.hpp"
#include "biphoton/jones.hpp"

namespace biphoton {

/// Counts for a set of two-arm analyzer settings. Singles are recorded for
/// accidental estimation; the inversion itself is coincidence-only.
struct MeasurementRecord {
  std::vector<std::pair<AnalyzerSetting, AnalyzerSetting>> settings;
  std::vector<double> counts;
  std::vector<double> acquisition_time_s;  // per setting, > 0
  std::vector<double> singles_signal;
  std::vector<double> singles_idler;

  void validate() const;
  std::size_t size() const { return settings.size(); }
};

/// Knobs for the record simulation. The accidental floor per setting is
/// singles_s * singles_i * coincidence_window.
struct RecordSimOptions {
  double coincidence_window_s = 1e-9;
  bool include_accidentals = true;
  double angle_jitter_rad = 0.0;  // analyzer misalignment per setting draw
};

/// Draws Poissonian coincidence and singles counts for `rho` at the given
/// settings: mean = pair_rate * eta_s * eta_i * <P_s x P_i> * time plus the
/// accidental floor. Deterministic for a fixed seed.
MeasurementRecord simulate_record(const DensityMatrix& rho,
                                  const std::vector<std::pair<AnalyzerSetting, AnalyzerSetting>>& settings,
                                  double pair_rate_hz, const DetectorParams& signal_det,
                                  const DetectorParams& idler_det, double acquisition_time_s,
                                  std::uint64_t seed, const RecordSimOptions& opts = {});

/// Least-squares inversion of the Born-rule system. The returned matrix is
/// Hermitized and trace-normalized but may be non-PSD; the flag is honest.
struct LinearInversionResult {
  Matrix4cd rho;
  bool psd = false;
  double min_eigenvalue = 0.0;
};

LinearInversionResult linear_inversion(const MeasurementRecord& record);

/// Maximum-likelihood reconstruction via the triangular parametrization
/// rho = T^dag T / tr(T^dag T), Poisson log-likelihood, gradient ascent with
/// backtracking line search. rho_mle is PSD with unit trace by construction.
struct TomographyResult {
  LinearInversionResult linear;
  DensityMatrix rho_mle;
  double concurrence = 0.0;
  double concurrence_stderr = 0.0;
  double fidelity = 0.0;
  double fidelity_stderr = 0.0;
  double log_likelihood = 0.0;
  std::vector<double> log_likelihood_history;
  int iterations = 0;
  bool converged = false;
};

struct MleOptions {
  double gradient_tolerance = 1e-8;
  int max_iterations = 10000;
  double target_phase_rad = 0.0;  // phase of the |Psi+> fidelity target
};

TomographyResult mle_reconstruct(const MeasurementRecord& record,
                                 const std::optional<Matrix4cd>& initial = std::nullopt,
                                 const MleOptions& opts = {});

/// Parametric bootstrap: Poisson-resamples the record n times (per-resample
/// seed = base seed + index), reruns the MLE and returns the standard
/// deviations of (concurrence, fidelity).
std::pair<double, double> bootstrap_errors(const MeasurementRecord& record, int n_resamples,
                                           std::uint64_t seed, const MleOptions& opts = {});

}  // namespace biphoton
