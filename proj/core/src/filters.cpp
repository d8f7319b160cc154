#include "biphoton/filters.hpp"

#include <cmath>

#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

void FilterSpec::validate() const {
  for (const auto& pb : passbands) {
    if (!(pb.low_nm < pb.high_nm)) {
      throw InvalidParameterError("filter: passband low < high violated");
    }
    if (!(pb.transmittance >= 0.0 && pb.transmittance <= 1.0)) {
      throw InvalidParameterError("filter: transmittance in [0,1] violated");
    }
  }
  if (!(insertion_loss_db >= 0.0)) {
    throw InvalidParameterError("filter: insertion_loss_db >= 0 violated");
  }
  if (!(edge_width_nm >= 0.0)) {
    throw InvalidParameterError("filter: edge_width >= 0 violated");
  }
}

namespace {

// Raised-cosine step: 0 below -w/2, 1 above +w/2, smooth in between.
double rc_step(double x, double w) {
  if (w <= 0.0) return x >= 0.0 ? 1.0 : 0.0;
  const double u = x / w;
  if (u <= -0.5) return 0.0;
  if (u >= 0.5) return 1.0;
  return 0.5 * (1.0 + std::sin(kPi * u));
}

}  // namespace

double FilterSpec::transmission(double wavelength_nm) const {
  double t = 0.0;
  for (const auto& pb : passbands) {
    t += pb.transmittance * rc_step(wavelength_nm - pb.low_nm, edge_width_nm) *
         rc_step(pb.high_nm - wavelength_nm, edge_width_nm);
  }
  if (t > 1.0) t = 1.0;  // overlapping passbands saturate
  return t * transmission_from_db(insertion_loss_db);
}

FilteredJsa apply_filters(const JointSpectralAmplitude& jsa, const FilterSpec& signal_filter,
                          const FilterSpec& idler_filter) {
  signal_filter.validate();
  idler_filter.validate();

  const auto& grid = jsa.grid;
  const int ns = grid.n_signal();
  const int ni = grid.n_idler();

  std::vector<double> amp_s(ns), amp_i(ni);
  for (int r = 0; r < ns; ++r) amp_s[r] = std::sqrt(signal_filter.transmission(grid.signal_nm()[r]));
  for (int c = 0; c < ni; ++c) amp_i[c] = std::sqrt(idler_filter.transmission(grid.idler_nm()[c]));

  JointSpectralAmplitude out{grid, jsa.f_minus, jsa.f_plus};
  for (int r = 0; r < ns; ++r) {
    for (int c = 0; c < ni; ++c) {
      const double a = amp_s[r] * amp_i[c];
      out.f_minus(r, c) *= a;
      out.f_plus(r, c) *= a;
    }
  }

  const double before = jsa.joint_norm();
  const double after = out.joint_norm();
  FilteredJsa result{std::move(out), before > 0.0 ? after / before : 0.0, after <= 0.0};
  return result;
}

}  // namespace biphoton
