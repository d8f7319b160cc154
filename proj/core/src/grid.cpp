#include "biphoton/grid.hpp"

#include <algorithm>
#include <cmath>

#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

void check_axis(const std::vector<double>& nm, const char* name) {
  if (nm.size() < 8) {
    throw InvalidParameterError(std::string(name) + " axis needs >= 8 points");
  }
  double prev = 0.0;
  for (double v : nm) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidParameterError(std::string(name) + " wavelengths must be positive and finite");
    }
    if (v <= prev) {
      throw InvalidParameterError(std::string(name) + " wavelengths must be strictly increasing");
    }
    prev = v;
  }
}

std::vector<double> to_omega(const std::vector<double>& nm) {
  std::vector<double> w(nm.size());
  std::transform(nm.begin(), nm.end(), w.begin(), omega_from_nm);
  return w;
}

}  // namespace

std::vector<double> trapezoid_weights_omega(const std::vector<double>& omegas) {
  const std::size_t n = omegas.size();
  std::vector<double> w(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = std::abs(omegas[i + 1] - omegas[i]);
    w[i] += 0.5 * h;
    w[i + 1] += 0.5 * h;
  }
  return w;
}

SpectralGrid::SpectralGrid(std::vector<double> signal_nm, std::vector<double> idler_nm)
    : signal_nm_(std::move(signal_nm)), idler_nm_(std::move(idler_nm)) {
  check_axis(signal_nm_, "signal");
  check_axis(idler_nm_, "idler");
  signal_omega_ = to_omega(signal_nm_);
  idler_omega_ = to_omega(idler_nm_);
  signal_w_ = trapezoid_weights_omega(signal_omega_);
  idler_w_ = trapezoid_weights_omega(idler_omega_);
}

SpectralGrid SpectralGrid::conjugate_symmetric(double center_nm, double short_edge_nm, int points) {
  if (!(center_nm > 0.0) || !(short_edge_nm > 0.0)) {
    throw InvalidParameterError("grid wavelengths must be positive");
  }
  if (short_edge_nm >= center_nm) {
    throw InvalidParameterError("grid short edge must be below the center wavelength");
  }
  if (points < 8) {
    throw InvalidParameterError("grid needs >= 8 points");
  }
  const double w0 = omega_from_nm(center_nm);
  const double w_hi = omega_from_nm(short_edge_nm);
  const double w_lo = 2.0 * w0 - w_hi;  // frequency mirror of the short edge
  std::vector<double> nm(points);
  for (int i = 0; i < points; ++i) {
    // descending frequency -> ascending wavelength
    const double w = w_hi + (w_lo - w_hi) * static_cast<double>(i) / (points - 1);
    nm[i] = nm_from_omega(w);
  }
  std::vector<double> idler = nm;
  return SpectralGrid(std::move(nm), std::move(idler));
}

}  // namespace biphoton
