#pragma once

#include <vector>

#include "biphoton/spectral.hpp"

namespace biphoton {

/// One passband of a spectral filter, vacuum nm.
struct Passband {
  double low_nm = 0.0;
  double high_nm = 0.0;
  double transmittance = 1.0;  // in-band peak power transmittance, [0,1]
};

/// Spectral filter: a union of passbands with raised-cosine edges plus a
/// flat insertion loss. Power transmission at a wavelength is
/// sum of passband responses times 10^(-insertion_loss_db/10).
struct FilterSpec {
  std::vector<Passband> passbands;
  double insertion_loss_db = 0.0;
  double edge_width_nm = 0.5;  // raised-cosine roll-off width, centered on the edge

  void validate() const;

  /// Power transmission in [0,1] at a vacuum wavelength.
  double transmission(double wavelength_nm) const;
};

/// Result of filtering a JSA. `retained_fraction` is the joint-norm ratio to
/// the input; an all-zero output is flagged, never silent.
struct FilteredJsa {
  JointSpectralAmplitude jsa;
  double retained_fraction = 0.0;
  bool empty = true;
};

/// Multiplies f+/- by the amplitude transmission sqrt(Ts(ls) Ti(li)) of the
/// per-arm filters (insertion loss included). Throws InvalidParameterError
/// when a filter is malformed; a zero-overlap result comes back flagged.
FilteredJsa apply_filters(const JointSpectralAmplitude& jsa, const FilterSpec& signal_filter,
                          const FilterSpec& idler_filter);

}  // namespace biphoton
