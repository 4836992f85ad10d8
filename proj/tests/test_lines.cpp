#include "doctest.h"
#include "support.hpp"

#include <numbers>

using namespace qgm2;
using qgm2::testing::Rng;

namespace {

constexpr double PI = std::numbers::pi;

Vector2 rand2(Rng& rng) { return Vector2(rng.cnormal(), rng.cnormal()); }
Vector3 rand3(Rng& rng) { return Vector3(rng.cnormal(), rng.cnormal(), rng.cnormal()); }

// Distance between the lines spanned by a and b in C^n.
template <typename V>
double line_distance(const V& a, const V& b) {
  const V ua = a.normalized(), ub = b.normalized();
  return (ua * ua.adjoint() - ub * ub.adjoint()).norm();
}

// Brute-force minimum of the line distance between span{R v} and span{w} over
// a grid of SO(2) angles, optionally including reflections.
double grid_min_c2(const Vector2& v, const Vector2& w, bool reflections, int n = 10000) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const Eigen::Matrix2d r = rotation2(2.0 * PI * k / n);
    best = std::min(best, line_distance(Vector2(r.cast<cplx>() * v), w));
    if (reflections) {
      const Eigen::Matrix2d f = r * Eigen::Vector2d(1.0, -1.0).asDiagonal();
      best = std::min(best, line_distance(Vector2(f.cast<cplx>() * v), w));
    }
  }
  return best;
}

Vector2 canon2(double beta) { return Vector2(1.0, I_UNIT * beta); }
Vector3 canon3(double beta) { return Vector3(1.0, I_UNIT * beta, 0.0); }

Eigen::Matrix3d block_rotation(double theta) {
  Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  r.block<2, 2>(0, 0) = rotation2(theta);
  return r;
}

}  // namespace

TEST_CASE("mobius_apply conventions") {
  Rng rng(51);
  const cplx z = rng.cnormal();
  CHECK(std::abs(mobius_apply(Matrix2::Identity(), MobiusPoint::finite(z)).value - z) < 1e-15);
  for (double beta : {0.25, 0.5, -0.3}) {
    const MobiusPoint w = mobius_apply(circle_transform(), MobiusPoint::finite(-I_UNIT / beta));
    CHECK_FALSE(w.infinite);
    CHECK(std::abs(w.value - (1.0 + beta) / (1.0 - beta)) < 1e-12);
  }
  Matrix2 m;
  m << 1.0, 2.0, 1.0, 1.0;
  CHECK(mobius_apply(m, MobiusPoint::finite(-1.0)).infinite);
  CHECK(std::abs(mobius_apply(m, MobiusPoint::infinity()).value - 1.0) < 1e-15);
  Matrix2 affine;
  affine << 2.0, 1.0, 0.0, 1.0;
  CHECK(mobius_apply(affine, MobiusPoint::infinity()).infinite);
  Matrix2 singular;
  singular << 1.0, 2.0, 2.0, 4.0;
  CHECK_THROWS_AS(mobius_apply(singular, MobiusPoint::finite(0.0)), SingularMatrix);
  CHECK(phi(Vector2(1.0, 0.0)).infinite);
  CHECK(std::abs(phi(Vector2(0.0, 3.0)).value) == 0.0);
}

TEST_CASE("phi is equivariant") {
  Rng rng(52);
  for (int t = 0; t < 200; ++t) {
    const Matrix2 x = rng.matrix();
    const Vector2 u = rand2(rng);
    const MobiusPoint lhs = phi(x * u);
    const MobiusPoint rhs = mobius_apply(x, phi(u));
    REQUIRE_FALSE(lhs.infinite);
    REQUIRE_FALSE(rhs.infinite);
    CHECK(std::abs(lhs.value - rhs.value) < 1e-9 * (1.0 + std::abs(lhs.value)));
  }
}

TEST_CASE("canonical_beta_c2 examples") {
  CHECK(canonical_beta_c2(Vector2(1.0, 0.0), LineGroup::SO2).beta == 0.0);
  CHECK(canonical_beta_c2(Vector2(1.0, I_UNIT), LineGroup::SO2).beta == 1.0);
  const Vector2 v(cplx(1.0, 1.0), cplx(1.0, -1.0));
  CHECK(canonical_beta_c2(v, LineGroup::SO2).beta == -1.0);
  CHECK(canonical_beta_c2(v, LineGroup::O2).beta == 1.0);
  CHECK(grid_min_c2(v, canon2(-1.0), false) < 1e-6);
  CHECK_THROWS_AS(canonical_beta_c2(Vector2::Zero(), LineGroup::SO2), ZeroVector);
}

TEST_CASE("canonical_beta_c3 examples") {
  CHECK(canonical_beta_c3(Vector3(1.0, 0.0, 0.0)).beta == 0.0);
  CHECK(canonical_beta_c3(Vector3(1.0, I_UNIT, 0.0)).beta == 1.0);
  CHECK(canonical_beta_c3(Vector3(0.0, cplx(1.0, 1.0), cplx(1.0, -1.0))).beta == 1.0);
  CHECK_THROWS_AS(canonical_beta_c3(Vector3::Zero()), ZeroVector);
}

TEST_CASE("witnesses carry the input onto the canonical vector") {
  Rng rng(53);
  for (int t = 0; t < 500; ++t) {
    const Vector2 v = rand2(rng);
    for (LineGroup g : {LineGroup::SO2, LineGroup::O2}) {
      const CanonicalLineC2 c = canonical_beta_c2(v, g);
      CHECK(std::abs(std::abs(c.rotation.determinant()) - 1.0) < 1e-12);
      if (g == LineGroup::SO2) CHECK(c.rotation.determinant() > 0.0);
      const Vector2 image = c.scalar * (c.rotation.cast<cplx>() * v);
      CHECK((image - canon2(c.beta)).norm() < TOL_CANON);
    }
    const Vector3 v3 = rand3(rng);
    const CanonicalLineC3 c3 = canonical_beta_c3(v3);
    CHECK((c3.rotation.transpose() * c3.rotation - Eigen::Matrix3d::Identity()).norm() < 1e-12);
    CHECK(std::abs(c3.rotation.determinant() - 1.0) < 1e-12);
    CHECK(c3.beta >= 0.0);
    CHECK(c3.beta <= 1.0);
    const Vector3 image = c3.scalar * (c3.rotation.cast<cplx>() * v3);
    CHECK((image - canon3(c3.beta)).norm() < TOL_CANON);
  }
  // Degenerate inputs: real vectors, purely imaginary vectors, and isotropic ones.
  const std::vector<Vector3> special = {Vector3(1.0, 2.0, -1.0), Vector3(I_UNIT, 0.0, 2.0 * I_UNIT),
                                        Vector3(0.0, 1.0, I_UNIT), Vector3(1.0, I_UNIT, 0.0),
                                        Vector3(0.0, 0.0, cplx(1.0, 1.0))};
  for (const Vector3& v : special) {
    const CanonicalLineC3 c3 = canonical_beta_c3(v);
    CHECK((c3.scalar * (c3.rotation.cast<cplx>() * v) - canon3(c3.beta)).norm() < TOL_CANON);
  }
}

TEST_CASE("beta is an orbit invariant") {
  Rng rng(54);
  for (int t = 0; t < 500; ++t) {
    const Vector2 v = rand2(rng);
    const Eigen::Matrix2d r = rng.so2();
    const cplx lambda = rng.cnormal();
    const double b = canonical_beta_c2(v, LineGroup::SO2).beta;
    CHECK(std::abs(canonical_beta_c2(Vector2(lambda * (r.cast<cplx>() * v)), LineGroup::SO2).beta - b) < 1e-9);
    const Eigen::Matrix2d f = r * Eigen::Vector2d(1.0, -1.0).asDiagonal();
    const double bo = canonical_beta_c2(v, LineGroup::O2).beta;
    CHECK(std::abs(canonical_beta_c2(Vector2(f.cast<cplx>() * v), LineGroup::O2).beta - bo) < 1e-9);
    CHECK(std::abs(canonical_beta_c2(Vector2(f.cast<cplx>() * v), LineGroup::SO2).beta + b) < 1e-9);

    const Vector3 v3 = rand3(rng);
    const Eigen::Matrix3d r3 = rng.so3();
    CHECK(std::abs(canonical_beta_c3(Vector3(lambda * (r3.cast<cplx>() * v3))).beta - canonical_beta_c3(v3).beta) <
          1e-9);
  }
}

TEST_CASE("O2 beta is the folded SO2 beta") {
  Rng rng(55);
  for (int t = 0; t < 500; ++t) {
    const Vector2 v = rand2(rng);
    const double b = canonical_beta_c2(v, LineGroup::SO2).beta;
    // rho -> max(rho, 1/rho) maps beta = (rho-1)/(rho+1) to |beta|.
    const double rho = (1.0 + b) / (1.0 - b);
    const double folded = std::max(rho, 1.0 / rho);
    CHECK(std::abs(canonical_beta_c2(v, LineGroup::O2).beta - (folded - 1.0) / (folded + 1.0)) < 1e-9);
    CHECK(std::abs(canonical_beta_c2(v, LineGroup::O2).beta - std::abs(b)) < 1e-9);
  }
}

TEST_CASE("distinct betas are not related by any rotation") {
  Rng rng(56);
  for (int t = 0; t < 40; ++t) {
    const Vector2 v = rand2(rng), w = rand2(rng);
    const double bv = canonical_beta_c2(v, LineGroup::SO2).beta;
    const double bw = canonical_beta_c2(w, LineGroup::SO2).beta;
    const double gap = grid_min_c2(v, w, false, 4000);
    if (std::abs(bv - bw) > 10.0 * TOL_CANON) CHECK(gap > 1e-4 * std::abs(bv - bw));
    // The grid does find the rotation between a vector and its canonical form.
    CHECK(grid_min_c2(v, canon2(bv), false, 4000) < 5e-3);
  }
}

TEST_CASE("stabilizer examples") {
  CHECK(stabilizer_check_c3(0.5, -1.0, Eigen::Vector3d(-1.0, -1.0, 1.0).asDiagonal()));
  for (double theta : {0.3, 1.7, -2.5}) CHECK(stabilizer_check_c3(1.0, std::polar(1.0, theta), block_rotation(theta)));
  CHECK_FALSE(stabilizer_check_c3(0.5, 1.0, block_rotation(0.1)));
  CHECK(stabilizer_check_c2(0.0, -1.0, -Eigen::Matrix2d::Identity()));
  for (double theta : {0.3, 1.7}) {
    const cplx l = std::polar(1.0, theta);
    Eigen::Matrix2d r;
    r << l.real(), -l.imag(), l.imag(), l.real();
    CHECK(stabilizer_check_c2(1.0, l, r));
  }
  CHECK_FALSE(stabilizer_check_c2(0.3, I_UNIT, Eigen::Matrix2d::Identity()));
  CHECK_FALSE(stabilizer_check_c2(0.3, I_UNIT, -Eigen::Matrix2d::Identity()));
}

TEST_CASE("stabilizer checks agree with direct evaluation") {
  Rng rng(57);
  const std::vector<double> betas3 = {0.0, 0.4, 1.0};
  for (double beta : betas3) {
    for (int t = 0; t < 200; ++t) {
      // Half the draws are built from the known stabilizer shapes, half are random.
      cplx lambda;
      Eigen::Matrix3d r;
      if (rng.chance(0.5)) {
        const double theta = rng.uniform(0.0, 2.0 * PI);
        if (beta == 1.0) {
          lambda = std::polar(1.0, theta);
          r = block_rotation(theta);
        } else if (beta > 0.0) {
          lambda = rng.chance(0.5) ? 1.0 : -1.0;
          r = Eigen::Vector3d(lambda.real(), lambda.real(), 1.0).asDiagonal();
        } else {
          lambda = rng.chance(0.5) ? 1.0 : -1.0;
          Eigen::Matrix2d q = rotation2(theta);
          if (lambda.real() < 0.0) q = q * Eigen::Vector2d(1.0, -1.0).asDiagonal();
          r = Eigen::Matrix3d::Zero();
          r(0, 0) = lambda.real();
          r.block<2, 2>(1, 1) = q;
        }
      } else {
        lambda = std::polar(1.0, rng.uniform(0.0, 2.0 * PI));
        r = rng.so3();
      }
      const bool direct = (lambda * (r.cast<cplx>() * canon3(beta)) - canon3(beta)).norm() < 1e-9;
      CHECK(stabilizer_check_c3(beta, lambda, r) == direct);
    }
  }
  for (double beta : {-1.0, -0.5, 0.0, 0.7, 1.0}) {
    for (int t = 0; t < 200; ++t) {
      cplx lambda;
      Eigen::Matrix2d r;
      const double theta = rng.uniform(0.0, 2.0 * PI);
      if (rng.chance(0.5)) {
        if (std::abs(beta) == 1.0) {
          lambda = std::polar(1.0, theta);
          r = rotation2(beta * theta);
        } else {
          lambda = rng.chance(0.5) ? 1.0 : -1.0;
          r = lambda.real() * Eigen::Matrix2d::Identity();
        }
      } else {
        lambda = std::polar(1.0, rng.uniform(0.0, 2.0 * PI));
        r = rotation2(theta);
      }
      const bool direct = (lambda * (r.cast<cplx>() * canon2(beta)) - canon2(beta)).norm() < 1e-9;
      CHECK(stabilizer_check_c2(beta, lambda, r) == direct);
    }
  }
}

TEST_CASE("snap") {
  CHECK(snap(1.0 - 1e-11, {0.0, 1.0}) == 1.0);
  CHECK(snap(0.5, {0.0, 1.0}) == 0.5);
  CHECK(snap(-1e-12, {0.0}) == 0.0);
}
