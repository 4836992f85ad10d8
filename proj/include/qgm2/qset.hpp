#pragma once

#include "qgm2/cmatrix.hpp"

namespace qgm2 {

inline constexpr double TOL_Q = 1e-12;

class InvalidQ : public Error {
 public:
  explicit InvalidQ(const std::string& what) : Error("invalid q: " + what) {}
};

enum class InnerProductKind { GNS_psi, KMS_psi, KMS_psi_inverse };

/// Element of M2 (x) M2. Entry (p, r) is the coefficient of E_p (x) E_r where
/// E_p is the matrix unit with vec index p. Operators F (x) G act as F T G^t.
using Tensor = Matrix4;

/// The quantum set (M2, psi_q) with rho_q = (1 + q^2) diag(q^-2, 1).
class QuantumSet {
 public:
  /// Throws InvalidQ unless q lies in (0, 1]; values within TOL_Q of 1 snap to 1.
  explicit QuantumSet(double q);

  double q() const { return q_; }
  bool is_tracial() const { return tracial_; }
  const Matrix2& rho() const { return rho_; }

  /// Diagonal entries of rho.
  double rho_entry(int i) const { return rho_(i, i).real(); }

  /// rho^z on the principal branch (rho is diagonal and positive).
  Matrix2 rho_power(cplx z) const;

  /// psi_q(x) = Tr(rho x).
  cplx functional(const Matrix2& x) const;

  /// Sesquilinear, conjugate-linear in x.
  cplx inner(InnerProductKind kind, const Matrix2& x, const Matrix2& y) const;

  /// Gram matrix G with inner(x, y) = vec(x)^* G vec(y).
  Matrix4 gram(InnerProductKind kind) const;

  /// sigma_z(x) = rho^{iz} x rho^{-iz}.
  Matrix2 modular_map(cplx z, const Matrix2& x) const;

  /// m^*(x), the adjoint of multiplication for the GNS inner product.
  Tensor comultiplication(const Matrix2& x) const;

  bool operator==(const QuantumSet& other) const { return q_ == other.q_; }

 private:
  double q_;
  bool tracial_;
  Matrix2 rho_;
};

/// vec(a) vec(b)^t, the carrier of a (x) b.
Tensor elementary_tensor(const Matrix2& a, const Matrix2& b);

/// m(sum a_i (x) b_i) = sum a_i b_i.
Matrix2 multiplication(const Tensor& t);

/// (F (x) G)(t) for operators F, G on M2 given in vec form.
Tensor apply_legs(const Matrix4& f, const Matrix4& g, const Tensor& t);

/// Operator x -> a x b in vec form.
Matrix4 sandwich_operator(const Matrix2& a, const Matrix2& b);

inline Matrix2 apply_operator(const Matrix4& op, const Matrix2& x) { return unvec(op * vec(x)); }

/// The operator x -> m (F (x) G) m^*(x) in vec form.
Matrix4 convolve(const QuantumSet& qs, const Matrix4& f, const Matrix4& g);

}  // namespace qgm2
