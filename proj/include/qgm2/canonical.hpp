#pragma once

#include "qgm2/lines.hpp"
#include "qgm2/pauli.hpp"
#include "qgm2/qgraph.hpp"

#include <string>
#include <vector>

namespace qgm2 {

class RankMismatch : public Error {
 public:
  explicit RankMismatch(const std::string& what) : Error("rank mismatch: " + what) {}
};

class IsLoopfree : public Error {
 public:
  explicit IsLoopfree(const std::string& what) : Error("space is loopfree: " + what) {}
};

class InvalidParameters : public Error {
 public:
  explicit InvalidParameters(const std::string& what) : Error("invalid parameters: " + what) {}
};

/// Isomorphism classes of quantum graphs on (M2, psi_q). The T* families live
/// on the tracial set (q = 1), the NT* families on q < 1. *LC_* are loopfree
/// complements and *3C_* complements of the named one-edge family.
enum class Family {
  Empty,
  T1A,
  T1B,
  T2,
  T2LC,
  T3C_A,
  T3C_B,
  NT1A,
  NT1B,
  NT1C,
  NT2,
  NT2LC_B,
  NT2LC_C,
  NT3C_A,
  NT3C_B,
  NT3C_C,
  Complete
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Names of the parameters a family carries, from {"alpha", "beta", "gamma", "delta"}.
std::vector<std::string> parameter_names(Family f);

/// Number of edges of every graph in the family.
int family_edge_count(Family f);

struct CanonicalForm {
  Family family = Family::Empty;
  double q = 1.0;
  int edge_count = 0;
  cplx alpha = 0.0;
  double beta = 0.0;
  cplx gamma = 0.0;
  cplx delta = 0.0;
};

/// Largest deviation between the parameters of two forms; infinity when the
/// families or quantum sets differ.
double canonical_distance(const CanonicalForm& a, const CanonicalForm& b);

/// Whether the parameters lie in the index set of the family.
bool in_index_set(const CanonicalForm& cf, double tol = TOL_CANON);

CanonicalForm canonicalize_line_tracial(const PauliSpace& v);
CanonicalForm canonicalize_plane_tracial(const PauliSpace& v);
CanonicalForm canonicalize_line_nontracial(const PauliSpace& v);
CanonicalForm canonicalize_plane_nontracial(const PauliSpace& v);

CanonicalForm canonicalize(const QuantumGraph& g);

struct IsomorphismVerdict {
  bool isomorphic = false;
  CanonicalForm first;
  CanonicalForm second;
};

IsomorphismVerdict is_isomorphic(const QuantumGraph& g1, const QuantumGraph& g2, double tol = TOL_CANON);

/// Representative graph of a canonical form. Throws InvalidParameters when
/// the parameters violate the index set.
QuantumGraph realize(const CanonicalForm& cf);

/// Edge-space spanners of the representative (before orthonormalization).
std::vector<Matrix2> representative_spanners(const CanonicalForm& cf);

}  // namespace qgm2
