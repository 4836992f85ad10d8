#include "qgm2/qset.hpp"

#include <cmath>

namespace qgm2 {

QuantumSet::QuantumSet(double q) {
  if (!std::isfinite(q) || q <= 0.0 || q > 1.0 + TOL_Q) throw InvalidQ("q must lie in (0, 1]");
  if (std::abs(q - 1.0) <= TOL_Q) q = 1.0;
  q_ = q;
  tracial_ = q == 1.0;
  rho_ = Matrix2::Zero();
  rho_(0, 0) = (1.0 + q * q) / (q * q);
  rho_(1, 1) = 1.0 + q * q;
}

Matrix2 QuantumSet::rho_power(cplx z) const {
  Matrix2 r = Matrix2::Zero();
  for (int i = 0; i < 2; ++i) r(i, i) = std::exp(z * std::log(rho_entry(i)));
  return r;
}

cplx QuantumSet::functional(const Matrix2& x) const { return (rho_ * x).trace(); }

cplx QuantumSet::inner(InnerProductKind kind, const Matrix2& x, const Matrix2& y) const {
  switch (kind) {
    case InnerProductKind::GNS_psi:
      return (rho_ * x.adjoint() * y).trace();
    case InnerProductKind::KMS_psi: {
      const Matrix2 h = rho_power(0.5);
      return (x.adjoint() * h * y * h).trace();
    }
    case InnerProductKind::KMS_psi_inverse: {
      const Matrix2 h = rho_power(-0.5);
      return (x.adjoint() * h * y * h).trace();
    }
  }
  return 0.0;
}

Matrix4 QuantumSet::gram(InnerProductKind kind) const {
  Matrix4 g;
  for (int p = 0; p < 4; ++p)
    for (int r = 0; r < 4; ++r)
      g(p, r) = inner(kind, matrix_unit(p / 2, p % 2), matrix_unit(r / 2, r % 2));
  return g;
}

Matrix2 QuantumSet::modular_map(cplx z, const Matrix2& x) const {
  return rho_power(I_UNIT * z) * x * rho_power(-I_UNIT * z);
}

Tensor QuantumSet::comultiplication(const Matrix2& x) const {
  // m^*(e_ij rho^-1) = sum_k e_ik rho^-1 (x) e_kj rho^-1, extended linearly
  // through x = sum_ij (x rho)_ij e_ij rho^-1.
  const Matrix2 rinv = rho_power(-1.0);
  const Matrix2 coeff = x * rho_;
  Tensor t = Tensor::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (coeff(i, j) == cplx(0.0)) continue;
      for (int k = 0; k < 2; ++k)
        t += coeff(i, j) * elementary_tensor(matrix_unit(i, k) * rinv, matrix_unit(k, j) * rinv);
    }
  return t;
}

Tensor elementary_tensor(const Matrix2& a, const Matrix2& b) { return vec(a) * vec(b).transpose(); }

Matrix2 multiplication(const Tensor& t) {
  Matrix2 out = Matrix2::Zero();
  for (int i = 0; i < 2; ++i)
    for (int r = 0; r < 2; ++r)
      for (int k = 0; k < 2; ++k) out(i, r) += t(2 * i + k, 2 * k + r);
  return out;
}

Tensor apply_legs(const Matrix4& f, const Matrix4& g, const Tensor& t) { return f * t * g.transpose(); }

Matrix4 sandwich_operator(const Matrix2& a, const Matrix2& b) { return kron(a, b.transpose()); }

Matrix4 convolve(const QuantumSet& qs, const Matrix4& f, const Matrix4& g) {
  Matrix4 out;
  for (int p = 0; p < 4; ++p) {
    const Matrix2 e = matrix_unit(p / 2, p % 2);
    out.col(p) = vec(multiplication(apply_legs(f, g, qs.comultiplication(e))));
  }
  return out;
}

}  // namespace qgm2
