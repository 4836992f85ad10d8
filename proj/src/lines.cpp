#include "qgm2/lines.hpp"

#include <cmath>
#include <limits>

namespace qgm2 {

double snap(double x, std::initializer_list<double> anchors) {
  for (double a : anchors)
    if (std::abs(x - a) <= TOL_CANON) return a;
  return x;
}

MobiusPoint mobius_apply(const Matrix2& m, const MobiusPoint& z) {
  if (std::abs(m.determinant()) <= TOL_RANK) throw SingularMatrix("Mobius transformation needs det != 0");
  const cplx a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  if (z.infinite) {
    if (c == cplx(0.0)) return MobiusPoint::infinity();
    return MobiusPoint::finite(a / c);
  }
  const cplx den = c * z.value + d;
  if (den == cplx(0.0)) return MobiusPoint::infinity();
  return MobiusPoint::finite((a * z.value + b) / den);
}

MobiusPoint phi(const Vector2& u) {
  if (u(1) == cplx(0.0)) return MobiusPoint::infinity();
  return MobiusPoint::finite(u(0) / u(1));
}

Matrix2 circle_transform() {
  Matrix2 p;
  p << 1.0, -I_UNIT, 1.0, I_UNIT;
  return p;
}

CanonicalLineC2 canonical_beta_c2(const Vector2& v_in, LineGroup group) {
  const double n = v_in.norm();
  if (!(n > 0.0)) throw ZeroVector("a line needs a nonzero spanning vector");
  Vector2 v = v_in / n;

  // beta from the modulus of P . phi(v); rho = infinity gives beta = 1.
  const MobiusPoint w = mobius_apply(circle_transform(), phi(v));
  double beta = 1.0;
  if (!w.infinite) {
    const double rho = std::abs(w.value);
    beta = std::isfinite(rho) ? (rho - 1.0) / (rho + 1.0) : 1.0;
  }

  Eigen::Matrix2d reflect = Eigen::Matrix2d::Identity();
  if (group == LineGroup::O2 && beta < 0.0) {
    // diag(1, -1) acts as z -> 1/z on the circle picture and swaps the half spheres.
    reflect(1, 1) = -1.0;
    beta = -beta;
    v = reflect.cast<cplx>() * v;
  }
  beta = snap(beta, {-1.0, 0.0, 1.0});

  // v = a (1, -i) + b (1, i); a rotation by theta scales these by e^{+i theta}, e^{-i theta}.
  const cplx a = (v(0) + I_UNIT * v(1)) / 2.0;
  const cplx b = (v(0) - I_UNIT * v(1)) / 2.0;
  const double a0 = (1.0 - beta) / 2.0;
  double theta = 0.0;
  cplx lambda;
  if (beta == 1.0) {
    lambda = 1.0 / b;
  } else if (beta == -1.0) {
    lambda = 1.0 / a;
  } else {
    theta = (std::arg(b) - std::arg(a)) / 2.0;
    lambda = a0 / (a * std::polar(1.0, theta));
  }
  Eigen::Matrix2d rot;
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);

  CanonicalLineC2 out;
  out.beta = beta;
  out.group = group;
  out.rotation = rot * reflect;
  out.scalar = lambda / n;
  return out;
}

CanonicalLineC3 canonical_beta_c3(const Vector3& v_in) {
  const double n = v_in.norm();
  if (!(n > 0.0)) throw ZeroVector("a line needs a nonzero spanning vector");
  // A phase that makes the real part dominant keeps the first alignment well conditioned.
  const cplx bilinear = v_in.transpose() * v_in;
  const cplx s0 = bilinear == cplx(0.0) ? cplx(1.0) : std::polar(1.0 / n, -std::arg(bilinear) / 2.0);
  const Vector3 v = s0 * v_in;
  const Eigen::Vector3d x = v.real();

  // Stage 1: R1 sends Re(v) to a multiple of e1.
  Eigen::Matrix3d r1 = Eigen::Matrix3d::Identity();
  if (x.norm() > 0.0) {
    const Eigen::Vector3d u1 = x.normalized();
    Eigen::Vector3d helper = Eigen::Vector3d::UnitX();
    if (std::abs(u1.dot(helper)) > 0.9) helper = Eigen::Vector3d::UnitY();
    const Eigen::Vector3d u2 = (helper - helper.dot(u1) * u1).normalized();
    const Eigen::Vector3d u3 = u1.cross(u2);
    r1.row(0) = u1;
    r1.row(1) = u2;
    r1.row(2) = u3;
  }
  const Vector3 w = r1.cast<cplx>() * v;

  // Stage 2: a rotation of the last two axes moves Im(w2, w3) onto the first of them.
  Eigen::Matrix3d r2 = Eigen::Matrix3d::Identity();
  const double t2 = w(1).imag(), t3 = w(2).imag();
  const double c = std::hypot(t2, t3);
  if (c > 0.0) {
    r2(1, 1) = t2 / c;
    r2(1, 2) = t3 / c;
    r2(2, 1) = -t3 / c;
    r2(2, 2) = t2 / c;
  }
  const Vector3 u = r2.cast<cplx>() * w;

  // Stage 3: the remaining line in C^2 under O(2), extended to SO(3) by kappa = det.
  const CanonicalLineC2 plane = canonical_beta_c2(Vector2(u(0), u(1)), LineGroup::O2);
  Eigen::Matrix3d r3 = Eigen::Matrix3d::Identity();
  r3.block<2, 2>(0, 0) = plane.rotation;
  r3(2, 2) = plane.rotation.determinant() > 0.0 ? 1.0 : -1.0;

  CanonicalLineC3 out;
  out.beta = plane.beta;
  out.rotation = r3 * r2 * r1;
  out.scalar = plane.scalar * s0;
  return out;
}

bool stabilizer_check_c3(double beta, cplx lambda, const Eigen::Matrix3d& r) {
  const double tol = TOL_CANON;
  if (std::abs(beta - 1.0) <= tol) {
    if (std::abs(std::abs(lambda) - 1.0) > tol) return false;
    Eigen::Matrix3d expect;
    expect << lambda.real(), -lambda.imag(), 0.0, lambda.imag(), lambda.real(), 0.0, 0.0, 0.0, 1.0;
    return (r - expect).norm() <= tol;
  }
  const bool sign = std::abs(lambda - 1.0) <= tol || std::abs(lambda + 1.0) <= tol;
  if (!sign) return false;
  const double l = lambda.real() > 0.0 ? 1.0 : -1.0;
  if (beta > tol) {
    const Eigen::Matrix3d expect = Eigen::Vector3d(l, l, 1.0).asDiagonal();
    return (r - expect).norm() <= tol;
  }
  // beta = 0: R = lambda (+) Q with Q in O(2), det Q = lambda.
  if (std::abs(r(0, 0) - l) > tol) return false;
  if (std::abs(r(0, 1)) + std::abs(r(0, 2)) + std::abs(r(1, 0)) + std::abs(r(2, 0)) > tol) return false;
  const Eigen::Matrix2d qb = r.block<2, 2>(1, 1);
  if ((qb.transpose() * qb - Eigen::Matrix2d::Identity()).norm() > tol) return false;
  return std::abs(qb.determinant() - l) <= tol;
}

bool stabilizer_check_c2(double beta, cplx lambda, const Eigen::Matrix2d& r) {
  const double tol = TOL_CANON;
  if (std::abs(std::abs(beta) - 1.0) <= tol) {
    if (std::abs(std::abs(lambda) - 1.0) > tol) return false;
    const double b = beta > 0.0 ? 1.0 : -1.0;
    Eigen::Matrix2d expect;
    expect << lambda.real(), -b * lambda.imag(), b * lambda.imag(), lambda.real();
    return (r - expect).norm() <= tol;
  }
  const bool sign = std::abs(lambda - 1.0) <= tol || std::abs(lambda + 1.0) <= tol;
  if (!sign) return false;
  const double l = lambda.real() > 0.0 ? 1.0 : -1.0;
  return (r - l * Eigen::Matrix2d::Identity()).norm() <= tol;
}

}  // namespace qgm2
