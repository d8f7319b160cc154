#include "biphoton/density_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {
constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-9;
}  // namespace

DensityMatrix DensityMatrix::from_matrix(const Matrix4cd& m) {
  if (!m.allFinite()) {
    throw InvalidStateError("density matrix: non-finite entries");
  }
  const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermitianTol) {
    throw InvalidStateError("density matrix: Hermiticity violated beyond 1e-10");
  }
  const double trace_dev = std::abs(m.trace() - std::complex<double>(1.0, 0.0));
  if (trace_dev > kTraceTol) {
    throw InvalidStateError("density matrix: trace != 1 beyond 1e-10");
  }

  Matrix4cd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4cd> es(h);
  const Eigen::Vector4d evals = es.eigenvalues();
  if (evals.minCoeff() < -kPsdTol) {
    throw InvalidStateError("density matrix: negative eigenvalue beyond -1e-9");
  }
  if (evals.minCoeff() < 0.0) {
    // quadrature noise: clip and renormalize
    Eigen::Vector4d clipped = evals.cwiseMax(0.0);
    h = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
    const double tr = h.trace().real();
    if (!(tr > 0.0)) {
      throw InvalidStateError("density matrix: zero trace after clipping");
    }
    h /= tr;
  }
  return DensityMatrix(h);
}

DensityMatrix DensityMatrix::pure(const Vector4cd& psi) {
  const double n = psi.norm();
  if (std::abs(n - 1.0) > 1e-6) {
    throw InvalidParameterError("pure state: vector not normalized");
  }
  Vector4cd v = psi / n;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidParameterError("werner: p in [0,1] violated");
  }
  const Vector4cd psi = psi_plus();
  Matrix4cd m = p * (psi * psi.adjoint()) + (1.0 - p) * 0.25 * Matrix4cd::Identity();
  return DensityMatrix(m);
}

Vector4cd psi_plus(double phase_rad) {
  Vector4cd v = Vector4cd::Zero();
  const double s = 1.0 / std::sqrt(2.0);
  v(1) = s;
  v(2) = s * std::complex<double>(std::cos(phase_rad), std::sin(phase_rad));
  return v;
}

}  // namespace biphoton
