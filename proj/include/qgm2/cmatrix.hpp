#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgm2 {

using cplx = std::complex<double>;

using Matrix2 = Eigen::Matrix<cplx, 2, 2>;
using Matrix3 = Eigen::Matrix<cplx, 3, 3>;
using Matrix4 = Eigen::Matrix<cplx, 4, 4>;
using Vector2 = Eigen::Matrix<cplx, 2, 1>;
using Vector3 = Eigen::Matrix<cplx, 3, 1>;
using Vector4 = Eigen::Matrix<cplx, 4, 1>;
using VectorX = Eigen::VectorXcd;
using MatrixX = Eigen::MatrixXcd;

inline constexpr double TOL_ORTHO = 1e-9;
inline constexpr double TOL_RANK = 1e-8;
inline constexpr double TOL_EIG = 1e-9;
inline constexpr int MAX_ITER = 500;

inline const cplx I_UNIT{0.0, 1.0};

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DegenerateForm : public Error {
 public:
  explicit DegenerateForm(const std::string& what) : Error("degenerate form: " + what) {}
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(const std::string& what) : Error("no convergence: " + what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

/// Matrix unit e_ij (0-based indices).
Matrix2 matrix_unit(int i, int j);

/// kron(a, b)[2i+j, 2k+l] = a(i,k) * b(j,l).
Matrix4 kron(const Matrix2& a, const Matrix2& b);

/// Row-major vectorization: e_ij -> f_{2i+j}.
Vector4 vec(const Matrix2& x);
Matrix2 unvec(const Vector4& v);

/// A sesquilinear form on M2, conjugate-linear in the first argument.
using InnerForm = std::function<cplx(const Matrix2&, const Matrix2&)>;

/// Modified Gram-Schmidt with one re-orthogonalization pass. Vectors whose
/// norm after projection is below TOL_RANK are dropped; input order is kept.
std::vector<Matrix2> gram_schmidt(const std::vector<Matrix2>& vectors, const InnerForm& inner);

/// Roots of the characteristic polynomial, sorted by (re, im).
std::array<cplx, 2> eigenvalues2(const Matrix2& a);

/// Characteristic polynomial coefficients c0..c4 (c4 = 1) of a 4x4 matrix,
/// computed by the Faddeev-LeVerrier recursion.
std::array<cplx, 5> characteristic_polynomial4(const Matrix4& a);

/// Eigenvalues of a 4x4 matrix: Faddeev-LeVerrier coefficients, Durand-Kerner
/// roots, sorted by (re, im). Throws NoConvergence after MAX_ITER sweeps.
std::array<cplx, 4> eigenvalues4(const Matrix4& a);

/// Lexicographic (re, im) order with exact comparison.
bool lex_less(const cplx& a, const cplx& b);

/// A subspace of C^n (n in {2,3,4}) with an orthonormal basis and projector.
class Subspace {
 public:
  Subspace() : Subspace(0) {}
  explicit Subspace(int ambient_dim);

  int ambient_dim() const { return ambient_dim_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<VectorX>& basis() const { return basis_; }
  const MatrixX& projector() const { return projector_; }

  /// Orthonormal basis as the columns of an ambient_dim x rank matrix.
  MatrixX basis_matrix() const;

  /// Image under an invertible linear map of the ambient space.
  Subspace mapped(const MatrixX& m) const;

 private:
  friend Subspace subspace_from_spanners(int, const std::vector<VectorX>&);
  int ambient_dim_;
  std::vector<VectorX> basis_;
  MatrixX projector_;
};

Subspace subspace_from_spanners(int ambient_dim, const std::vector<VectorX>& spanners);

/// Frobenius norm of the projector difference.
double subspace_distance(const Subspace& a, const Subspace& b);

}  // namespace qgm2
