#include "biphoton/spectral.hpp"

#include <cmath>
#include <limits>

#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

void PumpParams::validate() const {
  if (!(center_wavelength_nm > 0.0)) {
    throw InvalidParameterError("pump: center_wavelength > 0 violated");
  }
  if (!(linewidth_fwhm_nm >= 0.0)) {
    throw InvalidParameterError("pump: linewidth_fwhm >= 0 violated");
  }
  if (!(power_mw >= 0.0)) {
    throw InvalidParameterError("pump: power >= 0 violated");
  }
}

void PpsfParams::validate() const {
  if (!(length_m > 0.0)) {
    throw InvalidParameterError("ppsf: length > 0 violated");
  }
  if (!std::isfinite(gvd_coeff_ps2_per_km)) {
    throw InvalidParameterError("ppsf: gvd_coeff finite violated");
  }
  if (!(group_birefringence >= 0.0)) {
    throw InvalidParameterError("ppsf: group_birefringence >= 0 violated");
  }
  if (!(degeneracy_wavelength_at_ref_temp_nm > 0.0)) {
    throw InvalidParameterError("ppsf: degeneracy_wavelength > 0 violated");
  }
}

double degeneracy_wavelength(const PumpParams& pump) {
  if (!(pump.center_wavelength_nm > 0.0)) {
    throw InvalidParameterError("pump: center_wavelength > 0 violated");
  }
  return 2.0 * pump.center_wavelength_nm;
}

double conjugate_wavelength(const PumpParams& pump, double signal_wavelength_nm) {
  pump.validate();
  if (!(signal_wavelength_nm > 0.0)) {
    throw DomainError("conjugate_wavelength: signal wavelength must be positive");
  }
  const double inv_idler = 1.0 / pump.center_wavelength_nm - 1.0 / signal_wavelength_nm;
  if (!(inv_idler > 0.0)) {
    throw DomainError("conjugate_wavelength: signal too short, idler frequency nonpositive");
  }
  return 1.0 / inv_idler;
}

double effective_degeneracy(const PpsfParams& ppsf) {
  return ppsf.degeneracy_wavelength_at_ref_temp_nm +
         ppsf.temp_tuning_coeff_nm_per_c * (ppsf.temperature_c - ppsf.ref_temperature_c);
}

namespace {

// ps^2/km -> s^2/m
constexpr double kGvdToSi = 1e-27;

struct MismatchModel {
  double omega_deg;   // effective degeneracy angular frequency
  double gvd_si;      // s^2/m
  double walkoff_si;  // dng/c, s/m

  double eval(double omega_s, double omega_i, Branch branch) const {
    const double ws = omega_s - omega_deg;
    const double wi = omega_i - omega_deg;
    const double common = 0.5 * gvd_si * (ws * ws + wi * wi);
    const double split = 0.5 * walkoff_si * (ws - wi);
    return branch == Branch::plus ? common + split : common - split;
  }
};

MismatchModel make_model(const PpsfParams& ppsf) {
  return MismatchModel{
      omega_from_nm(effective_degeneracy(ppsf)),
      ppsf.gvd_coeff_ps2_per_km * kGvdToSi,
      ppsf.group_birefringence / kSpeedOfLight,
  };
}

}  // namespace

double phase_mismatch(double signal_wavelength_nm, double idler_wavelength_nm,
                      const PpsfParams& ppsf, const PumpParams& pump, Branch branch) {
  pump.validate();
  ppsf.validate();
  if (!(signal_wavelength_nm > 0.0) || !(idler_wavelength_nm > 0.0)) {
    throw InvalidParameterError("phase_mismatch: wavelengths must be positive");
  }
  const MismatchModel model = make_model(ppsf);
  return model.eval(omega_from_nm(signal_wavelength_nm), omega_from_nm(idler_wavelength_nm),
                    branch);
}

JointSpectralAmplitude compute_jsa(const PpsfParams& ppsf, const PumpParams& pump,
                                   const SpectralGrid& grid) {
  pump.validate();
  ppsf.validate();
  if (grid.n_signal() == 0 || grid.n_idler() == 0) {
    throw InvalidParameterError("compute_jsa: empty grid");
  }

  const MismatchModel model = make_model(ppsf);
  const double omega_pump = omega_from_nm(pump.center_wavelength_nm);
  // Gaussian pump amplitude with the stated FWHM, converted to angular
  // frequency at the pump wavelength.
  const double lw_omega =
      pump.linewidth_fwhm_nm * 2.0 * kPi * kSpeedOfLight /
      (pump.center_wavelength_nm * pump.center_wavelength_nm) * 1e9;
  const double amp = std::sqrt(pump.power_mw);
  const double half_length = 0.5 * ppsf.length_m;
  const double gauss_coeff = lw_omega > 0.0 ? 4.0 * std::log(2.0) / (lw_omega * lw_omega)
                                            : std::numeric_limits<double>::infinity();

  const int ns = grid.n_signal();
  const int ni = grid.n_idler();
  Eigen::ArrayXXcd fm(ns, ni), fp(ns, ni);
  const auto& wsv = grid.signal_omega();
  const auto& wiv = grid.idler_omega();

  for (int r = 0; r < ns; ++r) {
    const double ws = wsv[r];
    for (int c = 0; c < ni; ++c) {
      const double wi = wiv[c];
      const double detune = ws + wi - omega_pump;
      double envelope;
      if (lw_omega > 0.0) {
        envelope = std::exp(-gauss_coeff * detune * detune);
      } else {
        envelope = detune == 0.0 ? 1.0 : 0.0;  // monochromatic pump limit
      }
      const double a = amp * envelope;
      const double dkm = model.eval(ws, wi, Branch::minus) * half_length;
      const double dkp = model.eval(ws, wi, Branch::plus) * half_length;
      fm(r, c) = a * sinc(dkm) * std::complex<double>(std::cos(dkm), std::sin(dkm));
      fp(r, c) = a * sinc(dkp) * std::complex<double>(std::cos(dkp), std::sin(dkp));
    }
  }
  return JointSpectralAmplitude{grid, std::move(fm), std::move(fp)};
}

double JointSpectralAmplitude::joint_norm() const {
  const auto& ws = grid.signal_weights();
  const auto& wi = grid.idler_weights();
  double total = 0.0;
  for (int r = 0; r < grid.n_signal(); ++r) {
    double row = 0.0;
    for (int c = 0; c < grid.n_idler(); ++c) {
      row += wi[c] * (std::norm(f_minus(r, c)) + std::norm(f_plus(r, c)));
    }
    total += ws[r] * row;
  }
  return total;
}

std::vector<std::pair<double, double>> marginal_spectrum(const JointSpectralAmplitude& jsa,
                                                         Axis axis) {
  const auto& grid = jsa.grid;
  const bool along_signal = axis == Axis::signal;
  const int n = along_signal ? grid.n_signal() : grid.n_idler();
  const int m = along_signal ? grid.n_idler() : grid.n_signal();
  const auto& other_w = along_signal ? grid.idler_weights() : grid.signal_weights();
  const auto& nm = along_signal ? grid.signal_nm() : grid.idler_nm();

  std::vector<std::pair<double, double>> out(n);
  double peak = 0.0;
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      const int r = along_signal ? i : j;
      const int c = along_signal ? j : i;
      acc += other_w[j] * (std::norm(jsa.f_minus(r, c)) + std::norm(jsa.f_plus(r, c)));
    }
    out[i] = {nm[i], acc};
    peak = std::max(peak, acc);
  }
  if (peak > 0.0) {
    for (auto& p : out) p.second /= peak;
  }
  return out;
}

double fwhm(const std::vector<std::pair<double, double>>& curve) {
  if (curve.size() < 3) {
    throw NotMeasurableError("fwhm: need at least 3 samples");
  }
  std::size_t peak = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].second > curve[peak].second) peak = i;
  }
  const double half = 0.5 * curve[peak].second;
  if (!(curve[peak].second > 0.0)) {
    throw NotMeasurableError("fwhm: curve has no positive peak");
  }

  auto cross = [&](bool left) -> double {
    if (left) {
      for (std::size_t i = peak; i > 0; --i) {
        const auto& a = curve[i - 1];
        const auto& b = curve[i];
        if (a.second < half && b.second >= half) {
          const double t = (half - a.second) / (b.second - a.second);
          return a.first + t * (b.first - a.first);
        }
      }
    } else {
      for (std::size_t i = peak; i + 1 < curve.size(); ++i) {
        const auto& a = curve[i];
        const auto& b = curve[i + 1];
        if (a.second >= half && b.second < half) {
          const double t = (a.second - half) / (a.second - b.second);
          return a.first + t * (b.first - a.first);
        }
      }
    }
    throw NotMeasurableError("fwhm: no half-maximum crossing found");
  };

  const double lo = cross(true);
  const double hi = cross(false);
  return hi - lo;
}

}  // namespace biphoton
