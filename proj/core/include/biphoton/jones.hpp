#pragma once

#include <Eigen/Core>
#include <array>
#include <string>

namespace biphoton {

using Matrix2cd = Eigen::Matrix2cd;
using Vector2cd = Eigen::Vector2cd;

/// One polarization analyzer: a half- and a quarter-wave plate in front of a
/// fixed polarizer transmitting H. Angles are plate fast-axis angles from the
/// H axis, radians. Light traverses HWP, then QWP, then the polarizer, so the
/// forward Jones operator is QWP(q) * HWP(h); the analyzed state is the
/// pullback of |H> through it.
struct AnalyzerSetting {
  double qwp_rad = 0.0;
  double hwp_rad = 0.0;
};

/// Waveplate Jones matrices: rotation conjugation of diag(1, e^{i phi}) with
/// retardance phi = pi (HWP) and pi/2 (QWP).
Matrix2cd hwp_jones(double angle_rad);
Matrix2cd qwp_jones(double angle_rad);

/// Rank-one projector onto the analyzed state |v> = (QWP(q) HWP(h))^dag |H>.
/// Idempotent with unit trace for any setting.
Matrix2cd projector(const AnalyzerSetting& setting);

/// Canonical single-arm settings, in the documented order H, V, D, R, where
/// D = (|H>+|V>)/sqrt2 and R = (|H>-i|V>)/sqrt2.
std::array<AnalyzerSetting, 4> canonical_settings();

/// The 16 analyzer pairs {H,V,D,R} x {H,V,D,R} in signal-major order; the
/// first entry is (H, H). Informationally complete.
std::array<std::pair<AnalyzerSetting, AnalyzerSetting>, 16> standard_16_settings();

/// "H"/"V"/"D"/"R" when the setting matches a canonical one (1e-9 rad),
/// otherwise "q<deg>h<deg>".
std::string setting_label(const AnalyzerSetting& s);

/// Inverse of setting_label. Throws InvalidParameterError on unknown labels.
AnalyzerSetting setting_from_label(const std::string& label);

}  // namespace biphoton
