#pragma once

#include "qgm2/cmatrix.hpp"
#include "qgm2/qset.hpp"

#include <array>
#include <vector>

namespace qgm2 {

class KindMismatch : public Error {
 public:
  explicit KindMismatch(const std::string& what) : Error("kind mismatch: " + what) {}
};

class NotOrthogonal : public Error {
 public:
  explicit NotOrthogonal(const std::string& what) : Error("not special orthogonal: " + what) {}
};

class NotUnitary : public Error {
 public:
  explicit NotUnitary(const std::string& what) : Error("not unitary: " + what) {}
};

class NotFunctionalPreserving : public Error {
 public:
  explicit NotFunctionalPreserving(const std::string& what)
      : Error("map does not preserve the functional: " + what) {}
};

/// Standard: sigma_0..sigma_3. QAdjusted: sigma_3 replaced by diag(q^-2, -1).
enum class PauliBasisKind { Standard, QAdjusted };

struct PauliSpace {
  PauliBasisKind kind = PauliBasisKind::Standard;
  double q = 1.0;
  Subspace space{4};
};

/// The basis kind a quantum set uses for its Pauli spaces.
PauliBasisKind pauli_kind(const QuantumSet& qs);

std::array<Matrix2, 4> pauli_basis(PauliBasisKind kind, double q);

/// Columns are vec(sigma_k) of the chosen basis.
Matrix4 pauli_change_of_basis(PauliBasisKind kind, double q);

/// Coefficients (x0, x1, x2, x3) of x in the basis used by qs.
Vector4 pauli_coordinates(const QuantumSet& qs, const Matrix2& x);
Matrix2 from_pauli_coordinates(const QuantumSet& qs, const Vector4& v);

PauliSpace to_pauli(const QuantumSet& qs, const std::vector<Matrix2>& s_basis);

/// Inverse of to_pauli; returns one matrix per orthonormal basis vector of V.
std::vector<Matrix2> from_pauli(const QuantumSet& qs, const PauliSpace& v);

/// Rotation by theta acting on (x, y).
Eigen::Matrix2d rotation2(double theta);

/// block-diag(1, R) for tracial qs; throws KindMismatch for nontracial qs.
Matrix4 automorphism_action(const QuantumSet& qs, const Eigen::Matrix3d& r);

/// block-diag(1, R, 1) for nontracial qs; throws KindMismatch for tracial qs.
Matrix4 automorphism_action(const QuantumSet& qs, const Eigen::Matrix2d& r);

/// The linear map on M2 (vec form) realizing a Pauli-coordinate action.
Matrix4 induced_map(const QuantumSet& qs, const Matrix4& action);

PauliSpace apply_action(const Matrix4& action, const PauliSpace& v);

/// x -> u x u^* on each basis element, after checking that u is unitary,
/// diagonal for nontracial qs, and that psi_q is preserved.
std::vector<Matrix2> unitary_conjugation_oracle(const QuantumSet& qs, const Matrix2& u,
                                                const std::vector<Matrix2>& s_basis);

/// Real 3x3 matrix of x -> u x u^* on span{sigma_1, sigma_2, sigma_3}.
Eigen::Matrix3d induced_rotation(const Matrix2& u);

}  // namespace qgm2
