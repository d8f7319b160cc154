#pragma once

#include <Eigen/Core>
#include <complex>

namespace biphoton {

using Matrix4cd = Eigen::Matrix4cd;
using Vector4cd = Eigen::Vector4cd;

/// Two-qubit polarization density matrix in the ordered basis
/// {HH, HV, VH, VV}. Construction validates Hermiticity (1e-10), unit trace
/// (1e-10) and positivity; eigenvalues down to -1e-9 are clipped to zero with
/// renormalization, anything worse throws InvalidStateError.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const Matrix4cd& m);

  /// Pure-state projector |psi><psi| from a normalized 4-vector.
  static DensityMatrix pure(const Vector4cd& psi);

  /// Werner state p |Psi+><Psi+| + (1-p) I/4.
  static DensityMatrix werner(double p);

  const Matrix4cd& matrix() const { return m_; }
  std::complex<double> operator()(int r, int c) const { return m_(r, c); }

 private:
  explicit DensityMatrix(Matrix4cd m) : m_(std::move(m)) {}
  Matrix4cd m_;
};

/// |Psi+> = (|HV> + e^{i phase} |VH>)/sqrt(2).
Vector4cd psi_plus(double phase_rad = 0.0);

}  // namespace biphoton
