#include "biphoton/jones.hpp"

#include <cmath>
#include <cstdio>

#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

Matrix2cd rotation(double a) {
  Matrix2cd r;
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return r;
}

Matrix2cd waveplate(double angle_rad, double retardance) {
  Matrix2cd d = Matrix2cd::Zero();
  d(0, 0) = 1.0;
  d(1, 1) = std::complex<double>(std::cos(retardance), std::sin(retardance));
  return rotation(angle_rad) * d * rotation(-angle_rad);
}

}  // namespace

Matrix2cd hwp_jones(double angle_rad) { return waveplate(angle_rad, kPi); }

Matrix2cd qwp_jones(double angle_rad) { return waveplate(angle_rad, kPi / 2.0); }

Matrix2cd projector(const AnalyzerSetting& setting) {
  const Matrix2cd forward = qwp_jones(setting.qwp_rad) * hwp_jones(setting.hwp_rad);
  Vector2cd h;
  h << 1.0, 0.0;
  const Vector2cd v = forward.adjoint() * h;
  return v * v.adjoint();
}

std::array<AnalyzerSetting, 4> canonical_settings() {
  return {{
      {0.0, 0.0},               // H
      {0.0, kPi / 4.0},         // V
      {0.0, kPi / 8.0},         // D
      {kPi / 4.0, kPi / 8.0},   // R
  }};
}

std::array<std::pair<AnalyzerSetting, AnalyzerSetting>, 16> standard_16_settings() {
  const auto single = canonical_settings();
  std::array<std::pair<AnalyzerSetting, AnalyzerSetting>, 16> out;
  int k = 0;
  for (int s = 0; s < 4; ++s) {
    for (int i = 0; i < 4; ++i) {
      out[k++] = {single[s], single[i]};
    }
  }
  return out;
}

std::string setting_label(const AnalyzerSetting& s) {
  static const char* names[4] = {"H", "V", "D", "R"};
  const auto canon = canonical_settings();
  for (int i = 0; i < 4; ++i) {
    if (std::abs(s.qwp_rad - canon[i].qwp_rad) < 1e-9 &&
        std::abs(s.hwp_rad - canon[i].hwp_rad) < 1e-9) {
      return names[i];
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "q%.6gh%.6g", s.qwp_rad * 180.0 / kPi, s.hwp_rad * 180.0 / kPi);
  return buf;
}

AnalyzerSetting setting_from_label(const std::string& label) {
  static const char* names[4] = {"H", "V", "D", "R"};
  const auto canon = canonical_settings();
  for (int i = 0; i < 4; ++i) {
    if (label == names[i]) return canon[i];
  }
  double q = 0.0, h = 0.0;
  if (std::sscanf(label.c_str(), "q%lfh%lf", &q, &h) == 2) {
    return {q * kPi / 180.0, h * kPi / 180.0};
  }
  throw InvalidParameterError("unknown analyzer setting label: " + label);
}

}  // namespace biphoton
