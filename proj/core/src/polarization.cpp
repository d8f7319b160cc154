#include "biphoton/polarization.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "biphoton/errors.hpp"

namespace biphoton {

DensityMatrix reduce_to_polarization(const JointSpectralAmplitude& jsa) {
  const auto& grid = jsa.grid;
  const auto& ws = grid.signal_weights();
  const auto& wi = grid.idler_weights();

  double mm = 0.0, pp = 0.0;
  std::complex<double> mp = 0.0;
  for (int r = 0; r < grid.n_signal(); ++r) {
    double row_mm = 0.0, row_pp = 0.0;
    std::complex<double> row_mp = 0.0;
    for (int c = 0; c < grid.n_idler(); ++c) {
      const std::complex<double> fm = jsa.f_minus(r, c);
      const std::complex<double> fp = jsa.f_plus(r, c);
      row_mm += wi[c] * std::norm(fm);
      row_pp += wi[c] * std::norm(fp);
      row_mp += wi[c] * fm * std::conj(fp);
    }
    mm += ws[r] * row_mm;
    pp += ws[r] * row_pp;
    mp += ws[r] * row_mp;
  }

  const double norm = mm + pp;
  if (!(norm > 0.0)) {
    throw DegenerateStateError("reduce_to_polarization: zero-norm JSA");
  }

  Matrix4cd rho = Matrix4cd::Zero();
  rho(1, 1) = mm / norm;
  rho(2, 2) = pp / norm;
  rho(1, 2) = mp / norm;
  rho(2, 1) = std::conj(mp) / norm;
  return DensityMatrix::from_matrix(rho);
}

double concurrence(const DensityMatrix& rho) {
  // spin-flip: (sigma_y x sigma_y) rho* (sigma_y x sigma_y)
  Matrix4cd yy = Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;

  const Matrix4cd& m = rho.matrix();
  const Matrix4cd r = m * yy * m.conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix4cd> es(r);

  std::array<double, 4> lambdas{};
  for (int i = 0; i < 4; ++i) {
    lambdas[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  }
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  const double c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
  return std::clamp(c, 0.0, 1.0);
}

double fidelity(const DensityMatrix& rho, const Vector4cd& target) {
  if (std::abs(target.norm() - 1.0) > 1e-6) {
    throw InvalidParameterError("fidelity: target not normalized");
  }
  const std::complex<double> f = target.adjoint() * rho.matrix() * target;
  return std::clamp(f.real(), 0.0, 1.0);
}

double purity(const DensityMatrix& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

}  // namespace biphoton
