#pragma once

#include "qgm2/cmatrix.hpp"

namespace qgm2 {

inline constexpr double TOL_CANON = 1e-9;

class SingularMatrix : public Error {
 public:
  explicit SingularMatrix(const std::string& what) : Error("singular matrix: " + what) {}
};

class ZeroVector : public Error {
 public:
  explicit ZeroVector(const std::string& what) : Error("zero vector: " + what) {}
};

/// A point of the extended complex plane.
struct MobiusPoint {
  bool infinite = false;
  cplx value = 0.0;

  static MobiusPoint finite(cplx z) { return MobiusPoint{false, z}; }
  static MobiusPoint infinity() { return MobiusPoint{true, 0.0}; }
};

/// (a b; c d) . z = (az + b) / (cz + d). Throws SingularMatrix if |det| <= TOL_RANK.
MobiusPoint mobius_apply(const Matrix2& m, const MobiusPoint& z);

/// phi(u) = u1 / u2, with phi(u1, 0) = infinity.
MobiusPoint phi(const Vector2& u);

/// The matrix (1 -i; 1 i) that turns SO(2) orbits into circles |z| = r.
Matrix2 circle_transform();

enum class LineGroup { SO2, O2 };

struct CanonicalLineC2 {
  double beta = 0.0;
  LineGroup group = LineGroup::SO2;
  Eigen::Matrix2d rotation = Eigen::Matrix2d::Identity();  // orthogonal, det 1 for SO2
  cplx scalar = 1.0;                                       // scalar * rotation * v = (1, i beta)
};

/// Canonical beta of span{v} under SO(2) (beta in [-1, 1]) or O(2) (beta in [0, 1]).
CanonicalLineC2 canonical_beta_c2(const Vector2& v, LineGroup group);

struct CanonicalLineC3 {
  double beta = 0.0;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  cplx scalar = 1.0;  // scalar * rotation * v = (1, i beta, 0)
};

/// Canonical beta in [0, 1] of span{v} under SO(3) with a witness.
CanonicalLineC3 canonical_beta_c3(const Vector3& v);

/// Whether (lambda, R) fixes (1, i beta, 0): the three stabilizer cases.
bool stabilizer_check_c3(double beta, cplx lambda, const Eigen::Matrix3d& r);

/// Whether (lambda, R) fixes (1, i beta): the two stabilizer cases.
bool stabilizer_check_c2(double beta, cplx lambda, const Eigen::Matrix2d& r);

/// Snaps x to the nearest of the given anchors when within TOL_CANON.
double snap(double x, std::initializer_list<double> anchors);

}  // namespace qgm2
