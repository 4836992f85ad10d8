#include "qgm2/pauli.hpp"

#include <cmath>

namespace qgm2 {

PauliBasisKind pauli_kind(const QuantumSet& qs) {
  return qs.is_tracial() ? PauliBasisKind::Standard : PauliBasisKind::QAdjusted;
}

std::array<Matrix2, 4> pauli_basis(PauliBasisKind kind, double q) {
  std::array<Matrix2, 4> s;
  s[0] << 1.0, 0.0, 0.0, 1.0;
  s[1] << 0.0, 1.0, 1.0, 0.0;
  s[2] << 0.0, -I_UNIT, I_UNIT, 0.0;
  if (kind == PauliBasisKind::Standard)
    s[3] << 1.0, 0.0, 0.0, -1.0;
  else
    s[3] << 1.0 / (q * q), 0.0, 0.0, -1.0;
  return s;
}

Matrix4 pauli_change_of_basis(PauliBasisKind kind, double q) {
  const auto s = pauli_basis(kind, q);
  Matrix4 b;
  for (int k = 0; k < 4; ++k) b.col(k) = vec(s[k]);
  return b;
}

Vector4 pauli_coordinates(const QuantumSet& qs, const Matrix2& x) {
  return pauli_change_of_basis(pauli_kind(qs), qs.q()).partialPivLu().solve(vec(x));
}

Matrix2 from_pauli_coordinates(const QuantumSet& qs, const Vector4& v) {
  return unvec(pauli_change_of_basis(pauli_kind(qs), qs.q()) * v);
}

PauliSpace to_pauli(const QuantumSet& qs, const std::vector<Matrix2>& s_basis) {
  std::vector<VectorX> coords;
  coords.reserve(s_basis.size());
  for (const Matrix2& x : s_basis) coords.push_back(pauli_coordinates(qs, x));
  return PauliSpace{pauli_kind(qs), qs.q(), subspace_from_spanners(4, coords)};
}

std::vector<Matrix2> from_pauli(const QuantumSet& qs, const PauliSpace& v) {
  if (v.kind != pauli_kind(qs) || (v.kind == PauliBasisKind::QAdjusted && std::abs(v.q - qs.q()) > TOL_Q))
    throw KindMismatch("Pauli space does not belong to this quantum set");
  std::vector<Matrix2> out;
  for (const VectorX& b : v.space.basis()) out.push_back(from_pauli_coordinates(qs, Vector4(b)));
  return out;
}

Eigen::Matrix2d rotation2(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

namespace {

template <typename M>
void check_special_orthogonal(const M& r) {
  const double ortho = (r.transpose() * r - M::Identity()).norm();
  if (ortho > TOL_ORTHO) throw NotOrthogonal("R^t R differs from the identity");
  if (std::abs(r.determinant() - 1.0) > TOL_ORTHO) throw NotOrthogonal("det R differs from 1");
}

}  // namespace

Matrix4 automorphism_action(const QuantumSet& qs, const Eigen::Matrix3d& r) {
  if (!qs.is_tracial()) throw KindMismatch("SO(3) acts only on the tracial quantum set");
  check_special_orthogonal(r);
  Matrix4 a = Matrix4::Identity();
  a.block<3, 3>(1, 1) = r.cast<cplx>();
  return a;
}

Matrix4 automorphism_action(const QuantumSet& qs, const Eigen::Matrix2d& r) {
  if (qs.is_tracial()) throw KindMismatch("the tracial quantum set has SO(3) symmetry");
  check_special_orthogonal(r);
  Matrix4 a = Matrix4::Identity();
  a.block<2, 2>(1, 1) = r.cast<cplx>();
  return a;
}

Matrix4 induced_map(const QuantumSet& qs, const Matrix4& action) {
  const Matrix4 b = pauli_change_of_basis(pauli_kind(qs), qs.q());
  return b * action * b.inverse();
}

PauliSpace apply_action(const Matrix4& action, const PauliSpace& v) {
  return PauliSpace{v.kind, v.q, v.space.mapped(action)};
}

std::vector<Matrix2> unitary_conjugation_oracle(const QuantumSet& qs, const Matrix2& u,
                                                const std::vector<Matrix2>& s_basis) {
  if ((u.adjoint() * u - Matrix2::Identity()).norm() >= TOL_ORTHO) throw NotUnitary("u^* u differs from I");
  if (!qs.is_tracial() && (std::abs(u(0, 1)) + std::abs(u(1, 0))) >= TOL_ORTHO)
    throw NotUnitary("automorphisms of a nontracial quantum set are implemented by diagonal unitaries");
  for (int p = 0; p < 4; ++p) {
    const Matrix2 e = matrix_unit(p / 2, p % 2);
    if (std::abs(qs.functional(u * e * u.adjoint()) - qs.functional(e)) > TOL_ORTHO * 10.0)
      throw NotFunctionalPreserving("psi(u x u^*) differs from psi(x)");
  }
  std::vector<Matrix2> out;
  out.reserve(s_basis.size());
  for (const Matrix2& x : s_basis) out.push_back(u * x * u.adjoint());
  return out;
}

Eigen::Matrix3d induced_rotation(const Matrix2& u) {
  const auto s = pauli_basis(PauliBasisKind::Standard, 1.0);
  Eigen::Matrix3d r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) r(a, b) = 0.5 * (s[a + 1] * u * s[b + 1] * u.adjoint()).trace().real();
  return r;
}

}  // namespace qgm2
