#pragma once

#include "qgm2/cmatrix.hpp"
#include "qgm2/qset.hpp"

#include <array>
#include <vector>

namespace qgm2 {

inline constexpr double TOL_PROP = 1e-8;

class CharacterizationDisagreement : public Error {
 public:
  explicit CharacterizationDisagreement(const std::string& what)
      : Error("equivalent characterizations disagree: " + what) {}
};

class NotLoopfree : public Error {
 public:
  explicit NotLoopfree(const std::string& what) : Error("graph is not loopfree: " + what) {}
};

class FamilyMismatch : public Error {
 public:
  explicit FamilyMismatch(const std::string& what) : Error("family mismatch: " + what) {}
};

/// A quantum graph on (M2, psi_q), stored as a KMS(psi^-1)-orthonormal basis
/// of its edge space.
class QuantumGraph {
 public:
  explicit QuantumGraph(const QuantumSet& qs) : qs_(qs) {}

  const QuantumSet& qset() const { return qs_; }
  const std::vector<Matrix2>& basis() const { return basis_; }
  int edge_count() const { return static_cast<int>(basis_.size()); }

  /// The edge space as a subspace of C^4 through vec.
  Subspace edge_subspace() const;

 private:
  friend QuantumGraph graph_from_spanners(const QuantumSet&, const std::vector<Matrix2>&);
  QuantumSet qs_;
  std::vector<Matrix2> basis_;
};

QuantumGraph graph_from_spanners(const QuantumSet& qs, const std::vector<Matrix2>& spanners);

QuantumGraph empty_graph(const QuantumSet& qs);
QuantumGraph trivial_graph(const QuantumSet& qs);
QuantumGraph complete_graph(const QuantumSet& qs);

/// Image of the edge space under a linear map of M2 given in vec form.
QuantumGraph transform(const QuantumGraph& g, const Matrix4& map);

/// A = sum_i kron(Y_i, conj(Y_i)), Y_i = rho^-1/4 X_i rho^1/4.
Matrix4 adjacency(const QuantumGraph& g);

/// P = sum_{i,k,l} rho^-1/4 X_i e_kl rho^-1/4 (x) (rho^-1/4 X_i^* e_lk rho^-1/4)^op.
/// The second leg lives in the opposite algebra; see op_product.
Tensor edge_projection(const QuantumGraph& g);

/// Product in M2 (x) M2^op: (a (x) b)(c (x) d) = ac (x) db.
Tensor op_product(const Tensor& s, const Tensor& t);

/// Involution of M2 (x) M2^op: (a (x) b)^* = a^* (x) b^*.
Tensor op_adjoint(const Tensor& t);

/// Flip a (x) b -> b (x) a.
Tensor flip(const Tensor& t);

/// Adjoint of an operator on M2 with respect to one of the inner products.
Matrix4 operator_adjoint(const QuantumSet& qs, InnerProductKind kind, const Matrix4& op);

/// Operator x -> A(x^*)^*.
Matrix4 real_conjugate(const Matrix4& op);

struct PropertyReport {
  int edge_count = 0;
  bool reflexive = false;
  bool loopfree = false;
  bool gns_undirected = false;
  bool kms_undirected = false;
  bool characterization_agreement = true;

  // Residuals of each characterization; small means the property holds.
  double reflexive_s = 0.0;       // distance of I from S
  double reflexive_a = 0.0;       // |m(A (x) Id)m^* - Id|
  double reflexive_p = 0.0;       // |m((Id (x) sigma_{i/2})P) - I|
  double loopfree_s = 0.0;        // max |<I, X_i>|
  double loopfree_a = 0.0;        // |m(A (x) Id)m^*|
  double loopfree_p = 0.0;        // |m((Id (x) sigma_{i/2})P)|
  double self_adjoint_s = 0.0;    // d(S, S^*)
  double modular_s = 0.0;         // d(S, rho S rho^-1)
  double flip_p = 0.0;            // |sigma(P) - P|
  double modular_p = 0.0;         // |(sigma_z (x) sigma_z)P - P|
  double gns_a = 0.0;             // |A - A^*_GNS|
  double kms_a = 0.0;             // |A - A^*_KMS|
};

/// Evaluates every characterization and throws CharacterizationDisagreement
/// if equivalent tests disagree.
PropertyReport properties(const QuantumGraph& g, double tol = TOL_PROP);

/// Orthogonal complement of S for the KMS(psi^-1) form.
QuantumGraph complement(const QuantumGraph& g);

/// S^perp minus C I; requires a loopfree graph.
QuantumGraph loopfree_complement(const QuantumGraph& g, double tol = TOL_PROP);

/// eigenvalues4 of the adjacency matrix.
std::array<cplx, 4> spectrum(const Matrix4& a);

enum class OneEdgeFamily { T1B, NT1B, NT1C };

/// Closed-form spectrum of a one-edge graph family, sorted by (re, im).
/// T1B uses (alpha, beta); NT1B uses alpha; NT1C uses (alpha, beta, gamma).
std::array<cplx, 4> closed_form_spectrum_1edge(const QuantumSet& qs, OneEdgeFamily family, cplx alpha,
                                               double beta = 0.0, cplx gamma = 0.0);

}  // namespace qgm2
