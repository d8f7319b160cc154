#include "biphoton/tomography.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>

#include "biphoton/errors.hpp"
#include "biphoton/polarization.hpp"
#include "biphoton/random.hpp"

namespace biphoton {

void MeasurementRecord::validate() const {
  const std::size_t n = settings.size();
  if (counts.size() != n || acquisition_time_s.size() != n || singles_signal.size() != n ||
      singles_idler.size() != n) {
    throw InvalidParameterError("record: field lengths differ");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(counts[i] >= 0.0) || !(singles_signal[i] >= 0.0) || !(singles_idler[i] >= 0.0)) {
      throw InvalidParameterError("record: counts >= 0 violated");
    }
    if (!(acquisition_time_s[i] > 0.0)) {
      throw InvalidParameterError("record: acquisition_time > 0 violated");
    }
  }
}

namespace {

Matrix4cd pair_projector(const AnalyzerSetting& s, const AnalyzerSetting& i) {
  const Matrix2cd ps = projector(s);
  const Matrix2cd pi = projector(i);
  Matrix4cd out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      out.block<2, 2>(2 * a, 2 * b) = ps(a, b) * pi;
    }
  }
  return out;
}

std::vector<Matrix4cd> record_projectors(const MeasurementRecord& record) {
  std::vector<Matrix4cd> ops;
  ops.reserve(record.size());
  for (const auto& [s, i] : record.settings) {
    ops.push_back(pair_projector(s, i));
  }
  return ops;
}

}  // namespace

MeasurementRecord simulate_record(
    const DensityMatrix& rho,
    const std::vector<std::pair<AnalyzerSetting, AnalyzerSetting>>& settings, double pair_rate_hz,
    const DetectorParams& signal_det, const DetectorParams& idler_det, double acquisition_time_s,
    std::uint64_t seed, const RecordSimOptions& opts) {
  if (!(acquisition_time_s > 0.0)) {
    throw InvalidParameterError("simulate_record: acquisition time > 0 violated");
  }
  if (!(pair_rate_hz >= 0.0)) {
    throw InvalidParameterError("simulate_record: pair_rate >= 0 violated");
  }
  signal_det.validate();
  idler_det.validate();

  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  MeasurementRecord rec;
  rec.settings = settings;
  rec.counts.reserve(settings.size());
  rec.acquisition_time_s.assign(settings.size(), acquisition_time_s);
  rec.singles_signal.reserve(settings.size());
  rec.singles_idler.reserve(settings.size());

  const double eta2 = signal_det.efficiency * idler_det.efficiency;
  const Matrix2cd id = Matrix2cd::Identity();

  for (const auto& [set_s, set_i] : settings) {
    AnalyzerSetting js = set_s;
    AnalyzerSetting ji = set_i;
    if (opts.angle_jitter_rad > 0.0) {
      js.qwp_rad += opts.angle_jitter_rad * gauss(rng);
      js.hwp_rad += opts.angle_jitter_rad * gauss(rng);
      ji.qwp_rad += opts.angle_jitter_rad * gauss(rng);
      ji.hwp_rad += opts.angle_jitter_rad * gauss(rng);
    }
    const Matrix2cd ps = projector(js);
    const Matrix2cd pi = projector(ji);
    const Matrix4cd both = pair_projector(js, ji);

    // marginal analyzers P x I and I x P for the singles rates
    Matrix4cd psi4 = Matrix4cd::Zero(), ipi4 = Matrix4cd::Zero();
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        psi4.block<2, 2>(2 * a, 2 * b) = ps(a, b) * id;
        ipi4.block<2, 2>(2 * a, 2 * b) = (a == b ? 1.0 : 0.0) * pi;
      }
    }

    const double q_both = std::max(0.0, (rho.matrix() * both).trace().real());
    const double q_s = std::max(0.0, (rho.matrix() * psi4).trace().real());
    const double q_i = std::max(0.0, (rho.matrix() * ipi4).trace().real());

    const double singles_s_rate = pair_rate_hz * signal_det.efficiency * q_s + signal_det.dark_rate_hz;
    const double singles_i_rate = pair_rate_hz * idler_det.efficiency * q_i + idler_det.dark_rate_hz;

    double mean = pair_rate_hz * eta2 * q_both * acquisition_time_s;
    if (opts.include_accidentals) {
      mean += singles_s_rate * singles_i_rate * opts.coincidence_window_s * acquisition_time_s;
    }

    auto draw = [&rng](double mu) -> double {
      if (mu <= 0.0) return 0.0;
      std::poisson_distribution<long long> poisson(mu);
      return static_cast<double>(poisson(rng));
    };
    rec.counts.push_back(draw(mean));
    rec.singles_signal.push_back(draw(singles_s_rate * acquisition_time_s));
    rec.singles_idler.push_back(draw(singles_i_rate * acquisition_time_s));
  }
  return rec;
}

LinearInversionResult linear_inversion(const MeasurementRecord& record) {
  record.validate();
  const std::size_t n = record.size();
  if (n < 16) {
    throw NonInvertibleError("linear_inversion: fewer settings than state parameters");
  }
  const auto ops = record_projectors(record);

  // tr(rho Q) = sum_ij rho_ij Q_ji -> A[k, 4i+j] = Q_k(j, i)
  Eigen::MatrixXcd a(n, 16);
  Eigen::VectorXcd b(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        a(k, 4 * i + j) = ops[k](j, i);
      }
    }
    b(k) = record.counts[k] / record.acquisition_time_s[k];
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0 || sv(sv.size() - 1) / sv(0) < 1e-12) {
    throw NonInvertibleError("linear_inversion: rank-deficient measurement matrix");
  }
  const Eigen::VectorXcd x = svd.solve(b);

  Matrix4cd rho;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      rho(i, j) = x(4 * i + j);
    }
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const double tr = rho.trace().real();
  if (!(std::abs(tr) > 0.0)) {
    throw DegenerateStateError("linear_inversion: zero-trace solution");
  }
  rho /= tr;

  Eigen::SelfAdjointEigenSolver<Matrix4cd> es(rho);
  LinearInversionResult result;
  result.rho = rho;
  result.min_eigenvalue = es.eigenvalues().minCoeff();
  result.psd = result.min_eigenvalue >= -1e-9;
  return result;
}

namespace {

// rho(T) = T^dag T / tr(T^dag T) with T upper triangular (16 real parameters:
// 4 real diagonal entries + 6 complex strictly-upper entries).
struct TriangularParam {
  Matrix4cd t = Matrix4cd::Identity();

  Matrix4cd gram() const { return t.adjoint() * t; }

  Matrix4cd rho() const {
    const Matrix4cd g = gram();
    return g / g.trace().real();
  }

  static TriangularParam from_density(const Matrix4cd& rho_in) {
    // PSD-project, floor the spectrum, Cholesky. Deterministic.
    Matrix4cd h = 0.5 * (rho_in + rho_in.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4cd> es(h);
    Eigen::Vector4d ev = es.eigenvalues().cwiseMax(1e-6);
    h = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    h /= h.trace().real();
    Eigen::LLT<Matrix4cd> llt(h);
    TriangularParam p;
    p.t = llt.matrixL().adjoint();  // upper triangular, h = t^dag t
    return p;
  }

  // Packs the gradient of a scalar function into the triangular layout,
  // given dL/dT entries (complex, matching t).
  static constexpr int n_params = 16;
};

struct Likelihood {
  const std::vector<Matrix4cd>* ops;
  const MeasurementRecord* record;
  double q_floor = 1e-12;

  // Profiled Poisson log-likelihood: the overall scale N is optimal in
  // closed form, N* = sum(n_k) / sum(time_k q_k).
  double eval(const TriangularParam& p, double* scale_out = nullptr) const {
    const Matrix4cd rho = p.rho();
    double sum_n = 0.0, sum_tq = 0.0;
    std::vector<double> qs(record->size());
    for (std::size_t k = 0; k < record->size(); ++k) {
      qs[k] = std::max(((*ops)[k] * rho).trace().real(), q_floor);
      sum_n += record->counts[k];
      sum_tq += record->acquisition_time_s[k] * qs[k];
    }
    const double scale = sum_n > 0.0 ? sum_n / sum_tq : 0.0;
    if (scale_out) *scale_out = scale;
    double ll = 0.0;
    for (std::size_t k = 0; k < record->size(); ++k) {
      const double mu = std::max(scale * record->acquisition_time_s[k] * qs[k], 1e-300);
      ll += record->counts[k] * std::log(mu) - mu;
    }
    return ll;
  }

  // Analytic gradient with respect to T (complex Wirtinger-style layout):
  // dL/dT = sum_k c_k d tr(rho Q_k) / dT with rho = G/tr(G), G = T^dag T.
  Matrix4cd gradient(const TriangularParam& p) const {
    const Matrix4cd g = p.gram();
    const double tau = g.trace().real();
    const Matrix4cd rho = g / tau;

    double scale = 0.0;
    eval(p, &scale);

    Matrix4cd weight = Matrix4cd::Zero();
    double weight_trace_part = 0.0;
    for (std::size_t k = 0; k < record->size(); ++k) {
      const double q = std::max(((*ops)[k] * rho).trace().real(), q_floor);
      const double mu = std::max(scale * record->acquisition_time_s[k] * q, 1e-300);
      const double c_k =
          (record->counts[k] / mu - 1.0) * scale * record->acquisition_time_s[k];
      weight += c_k * (*ops)[k];
      weight_trace_part += c_k * q;
    }
    // d tr(G Q)/dT* = T Q ; d tau/dT* = T ; chain rule through the quotient.
    const Matrix4cd grad = 2.0 / tau * (p.t * weight - weight_trace_part * p.t);
    // keep the parametrization triangular
    Matrix4cd masked = grad;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < r; ++c) masked(r, c) = 0.0;
      masked(r, r) = std::complex<double>(masked(r, r).real(), 0.0);
    }
    return masked;
  }
};

}  // namespace

TomographyResult mle_reconstruct(const MeasurementRecord& record,
                                 const std::optional<Matrix4cd>& initial, const MleOptions& opts) {
  record.validate();
  if (record.size() == 0) {
    throw InvalidParameterError("mle_reconstruct: empty record");
  }
  double total = 0.0;
  for (double c : record.counts) total += c;
  if (total <= 0.0) {
    throw DegenerateStateError("mle_reconstruct: all-zero counts");
  }

  TomographyResult result;
  result.linear = linear_inversion(record);

  const auto ops = record_projectors(record);
  Likelihood like{&ops, &record};

  TriangularParam p = TriangularParam::from_density(initial.value_or(result.linear.rho));

  double ll = like.eval(p);
  result.log_likelihood_history.push_back(ll);

  const double grad_scale = std::max(total, 1.0);
  double step = 1.0;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    const Matrix4cd grad = like.gradient(p);
    const double gnorm = grad.norm();
    if (gnorm / grad_scale < opts.gradient_tolerance) {
      result.converged = true;
      break;
    }
    // Armijo backtracking on the ascent direction grad / |grad|.
    const Matrix4cd dir = grad / gnorm;
    bool improved = false;
    for (int bt = 0; bt < 60; ++bt) {
      TriangularParam trial = p;
      trial.t += step * dir;
      const double trial_ll = like.eval(trial);
      if (trial_ll >= ll + 1e-4 * step * gnorm) {
        p = trial;
        ll = trial_ll;
        improved = true;
        step *= 1.3;
        break;
      }
      step *= 0.5;
    }
    result.log_likelihood_history.push_back(ll);
    if (!improved) {
      result.converged = true;  // step underflow: at numerical optimum
      break;
    }
  }
  result.iterations = iter;
  result.log_likelihood = ll;

  result.rho_mle = DensityMatrix::from_matrix(p.rho());
  result.concurrence = concurrence(result.rho_mle);
  result.fidelity = fidelity(result.rho_mle, psi_plus(opts.target_phase_rad));
  return result;
}

std::pair<double, double> bootstrap_errors(const MeasurementRecord& record, int n_resamples,
                                           std::uint64_t seed, const MleOptions& opts) {
  if (n_resamples < 2) {
    throw InvalidParameterError("bootstrap_errors: n_resamples >= 2 violated");
  }
  record.validate();

  std::vector<double> cs, fs;
  cs.reserve(n_resamples);
  fs.reserve(n_resamples);
  for (int i = 0; i < n_resamples; ++i) {
    Rng rng(seed + static_cast<std::uint64_t>(i));  // base seed + index
    MeasurementRecord resampled = record;
    for (std::size_t k = 0; k < record.size(); ++k) {
      auto draw = [&rng](double mu) -> double {
        if (mu <= 0.0) return 0.0;
        std::poisson_distribution<long long> poisson(mu);
        return static_cast<double>(poisson(rng));
      };
      resampled.counts[k] = draw(record.counts[k]);
      resampled.singles_signal[k] = draw(record.singles_signal[k]);
      resampled.singles_idler[k] = draw(record.singles_idler[k]);
    }
    const TomographyResult r = mle_reconstruct(resampled, std::nullopt, opts);
    cs.push_back(r.concurrence);
    fs.push_back(r.fidelity);
  }

  auto stddev = [](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);
    return std::sqrt(var);
  };
  return {stddev(cs), stddev(fs)};
}

}  // namespace biphoton
