#include "qgm2/cmatrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

namespace qgm2 {

Matrix2 matrix_unit(int i, int j) {
  Matrix2 e = Matrix2::Zero();
  e(i, j) = 1.0;
  return e;
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + j, 2 * k + l) = a(i, k) * b(j, l);
  return out;
}

Vector4 vec(const Matrix2& x) {
  return Vector4(x(0, 0), x(0, 1), x(1, 0), x(1, 1));
}

Matrix2 unvec(const Vector4& v) {
  Matrix2 x;
  x << v(0), v(1), v(2), v(3);
  return x;
}

std::vector<Matrix2> gram_schmidt(const std::vector<Matrix2>& vectors, const InnerForm& inner) {
  std::vector<Matrix2> out;
  for (const Matrix2& v : vectors) {
    if (v.norm() > 0.0) {
      const double self = inner(v, v).real();
      if (!(self > 0.0)) throw DegenerateForm("inner(x, x) <= 0 for a nonzero x");
    }
    Matrix2 w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const Matrix2& u : out) w -= inner(u, w) * u;
    const double n2 = inner(w, w).real();
    const double n = n2 > 0.0 ? std::sqrt(n2) : 0.0;
    if (n < TOL_RANK) continue;
    out.push_back(w / n);
  }
  return out;
}

bool lex_less(const cplx& a, const cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

std::array<cplx, 2> eigenvalues2(const Matrix2& a) {
  const cplx tr = a.trace();
  const cplx det = a.determinant();
  const cplx disc = std::sqrt(tr * tr / 4.0 - det);
  std::array<cplx, 2> out{tr / 2.0 - disc, tr / 2.0 + disc};
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::array<cplx, 5> characteristic_polynomial4(const Matrix4& a) {
  // det(zI - A) = z^4 + c3 z^3 + c2 z^2 + c1 z + c0
  std::array<cplx, 5> c{};
  c[4] = 1.0;
  Matrix4 m = Matrix4::Zero();
  for (int k = 1; k <= 4; ++k) {
    m = a * m + c[5 - k] * Matrix4::Identity();
    c[4 - k] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

namespace {

cplx horner(const std::array<cplx, 5>& c, const cplx& z) {
  cplx r = c[4];
  for (int k = 3; k >= 0; --k) r = r * z + c[k];
  return r;
}

// Residual relative to the coefficient size, with |z| floored at 1 so that a
// root at 0 of z^4 is not judged by a vanishing scale.
double backward_error(const std::array<cplx, 5>& c, const cplx& z) {
  double scale = 0.0;
  const double az = std::max(1.0, std::abs(z));
  double p = 1.0;
  for (int k = 0; k <= 4; ++k) {
    scale += std::abs(c[k]) * p;
    p *= az;
  }
  return std::abs(horner(c, z)) / scale;
}

// Coefficients of the d-th derivative, padded with zeros.
std::array<cplx, 5> derivative(const std::array<cplx, 5>& c, int d) {
  std::array<cplx, 5> out = c;
  for (int n = 0; n < d; ++n) {
    for (int k = 0; k < 4; ++k) out[k] = out[k + 1] * static_cast<double>(k + 1);
    out[4] = 0.0;
  }
  return out;
}

// A root of multiplicity m is a simple root of p^(m-1); Newton on that
// derivative recovers it to full precision.
cplx polish_multiple_root(const std::array<cplx, 5>& c, cplx z, int m) {
  const std::array<cplx, 5> f = derivative(c, m - 1);
  const std::array<cplx, 5> df = derivative(c, m);
  for (int it = 0; it < 20; ++it) {
    const cplx d = horner(df, z);
    if (d == cplx(0.0)) break;
    const cplx step = horner(f, z) / d;
    z -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

// Merges roots that belong to one numerically split multiple root. A root of
// multiplicity m splits by about eps^(1/m), so candidate subsets are taken
// loosely, largest first, and kept only if p and its first m-1 derivatives
// vanish at the polished root up to the rounding error that Faddeev-LeVerrier
// leaves in the coefficients, about eps * |A|^(4-k) in c_k.
void merge_clusters(const std::array<cplx, 5>& c, double norm, std::array<cplx, 4>& z) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double scale = 1.0;
  for (const cplx& r : z) scale = std::max(scale, std::abs(r));
  const double radius = 1e-3 * scale;

  std::vector<unsigned> subsets;
  for (unsigned mask = 1; mask < 16; ++mask)
    if (std::popcount(mask) >= 2) subsets.push_back(mask);
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](unsigned a, unsigned b) { return std::popcount(a) > std::popcount(b); });

  unsigned used = 0;
  std::array<cplx, 4> merged = z;
  for (unsigned mask : subsets) {
    if (mask & used) continue;
    const int m = std::popcount(mask);
    cplx mean = 0.0;
    double diameter = 0.0;
    for (int i = 0; i < 4; ++i) {
      if (!(mask >> i & 1u)) continue;
      mean += z[i];
      for (int j = 0; j < 4; ++j)
        if (mask >> j & 1u) diameter = std::max(diameter, std::abs(z[i] - z[j]));
    }
    if (diameter >= radius) continue;
    mean /= static_cast<double>(m);
    const cplx root = polish_multiple_root(c, mean, m);
    bool ok = std::abs(root - mean) < radius;
    const double size = norm + std::abs(root);
    double falling = 1.0;  // 4! / (4 - d)!
    for (int d = 0; d < m && ok; ++d) {
      ok = std::abs(horner(derivative(c, d), root)) <= 100.0 * eps * falling * std::pow(size, 4 - d);
      falling *= 4 - d;
    }
    if (!ok) continue;
    used |= mask;
    for (int i = 0; i < 4; ++i)
      if (mask >> i & 1u) merged[i] = root;
  }
  z = merged;
}

}  // namespace

std::array<cplx, 4> eigenvalues4(const Matrix4& a) {
  const std::array<cplx, 5> c = characteristic_polynomial4(a);
  double radius = 0.0;
  for (int k = 0; k < 4; ++k) radius = std::max(radius, std::abs(c[k]));
  radius += 1.0;

  const double offset = 0.4 + std::numbers::sqrt2 / 10.0;
  std::array<cplx, 4> z;
  for (int k = 0; k < 4; ++k) z[k] = std::polar(radius, offset + k * std::numbers::pi / 2.0);

  bool converged = false;
  for (int it = 0; it < MAX_ITER && !converged; ++it) {
    double step = 0.0;
    double size = 0.0;
    for (int i = 0; i < 4; ++i) {
      cplx denom = 1.0;
      for (int j = 0; j < 4; ++j)
        if (j != i) denom *= z[i] - z[j];
      if (denom == cplx(0.0)) denom = 1e-300;
      const cplx dz = horner(c, z[i]) / denom;
      z[i] -= dz;
      step = std::max(step, std::abs(dz));
      size = std::max(size, std::abs(z[i]));
    }
    converged = step <= 1e-15 * std::max(1.0, size);
  }
  for (const cplx& r : z)
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()) || backward_error(c, r) > TOL_EIG)
      throw NoConvergence("Durand-Kerner iteration did not reach the residual bound");

  merge_clusters(c, std::max(1.0, a.norm()), z);
  std::sort(z.begin(), z.end(), lex_less);
  return z;
}

Subspace::Subspace(int ambient_dim)
    : ambient_dim_(ambient_dim), projector_(MatrixX::Zero(ambient_dim, ambient_dim)) {}

MatrixX Subspace::basis_matrix() const {
  MatrixX b(ambient_dim_, rank());
  for (int k = 0; k < rank(); ++k) b.col(k) = basis_[k];
  return b;
}

Subspace Subspace::mapped(const MatrixX& m) const {
  std::vector<VectorX> images;
  images.reserve(basis_.size());
  for (const VectorX& v : basis_) images.push_back(m * v);
  return subspace_from_spanners(ambient_dim_, images);
}

Subspace subspace_from_spanners(int ambient_dim, const std::vector<VectorX>& spanners) {
  Subspace s(ambient_dim);
  for (const VectorX& v : spanners) {
    if (v.size() != ambient_dim) throw DimensionMismatch("spanner of wrong length");
    VectorX w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const VectorX& u : s.basis_) w -= u.dot(w) * u;
    const double n = w.norm();
    if (n < TOL_RANK) continue;
    s.basis_.push_back(w / n);
  }
  for (const VectorX& u : s.basis_) s.projector_ += u * u.adjoint();
  return s;
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("subspaces live in different spaces");
  return (a.projector() - b.projector()).norm();
}

}  // namespace qgm2
