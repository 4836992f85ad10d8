#include "qgm2/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qgm2 {

namespace {

constexpr double PI = std::numbers::pi;

bool is_zero(cplx z) { return std::abs(z) <= TOL_CANON; }

// arg z in [0, pi) up to the tolerance; zero counts as inside.
bool in_half_plane(cplx z, double tol = TOL_CANON) {
  if (std::abs(z) <= tol) return true;
  const double t = std::arg(z);
  return t >= -tol && t < PI - tol;
}

bool is_nonneg_real(cplx z, double tol = TOL_CANON) { return std::abs(z.imag()) <= tol && z.real() >= -tol; }

cplx unit_phase(cplx z) { return std::conj(z) / std::abs(z); }

cplx clean(cplx z) { return is_zero(z) ? cplx(0.0) : z; }

// The O(2) orbit normal form (gamma, delta) = gamma (1, i eta), eta in [0, 1],
// arg gamma in [0, pi), and gamma >= 0 when eta = 1.
void normalize_o2_pair(cplx& gamma, cplx& delta) {
  if (std::hypot(std::abs(gamma), std::abs(delta)) <= TOL_CANON) {
    gamma = delta = 0.0;
    return;
  }
  const CanonicalLineC2 c = canonical_beta_c2(Vector2(gamma, delta), LineGroup::O2);
  cplx g = 1.0 / c.scalar;
  if (c.beta == 1.0) {
    g = std::abs(g);
  } else if (!in_half_plane(g)) {
    g = -g;
  }
  gamma = g;
  delta = I_UNIT * c.beta * g;
}

bool o2_pair_in_index_set(cplx gamma, cplx delta, double tol) {
  if (std::abs(gamma) <= tol) return std::abs(delta) <= tol;
  const cplx eta_i = delta / gamma;
  const double eta = eta_i.imag();
  if (std::abs(eta_i.real()) > tol || eta < -tol || eta > 1.0 + tol) return false;
  if (!in_half_plane(gamma, tol)) return false;
  if (std::abs(eta - 1.0) <= tol) return is_nonneg_real(gamma, tol);
  return true;
}

void check_rank(const PauliSpace& v, int rank, const char* who) {
  if (v.space.rank() != rank) throw RankMismatch(std::string(who) + " expects rank " + std::to_string(rank));
}

void check_kind(const PauliSpace& v, bool tracial, const char* who) {
  const bool is_tracial = v.kind == PauliBasisKind::Standard;
  if (is_tracial != tracial) throw KindMismatch(who);
}

// For a plane V not contained in e1^perp: v spans V cap e1^perp and w = P_V e1 / (P_V e1)_0.
void plane_vectors(const PauliSpace& space, Vector4& v, Vector4& w) {
  const MatrixX b = space.space.basis_matrix();
  const Vector4 pe = b * b.adjoint().col(0);
  if (std::abs(pe(0)) <= TOL_PROP) throw IsLoopfree("the plane lies in the orthogonal complement of e1");
  Vector4 best = Vector4::Zero();
  for (int k = 0; k < 2; ++k) {
    const Vector4 col = b.col(k);
    const Vector4 cand = col - (pe.dot(col) / pe.squaredNorm()) * pe;
    if (cand.norm() > best.norm()) best = cand;
  }
  v = best / best.norm();
  w = pe / pe(0);
}

CanonicalForm make(Family f, double q) {
  CanonicalForm cf;
  cf.family = f;
  cf.q = q;
  cf.edge_count = family_edge_count(f);
  return cf;
}

bool is_tracial_family(Family f) {
  switch (f) {
    case Family::T1A:
    case Family::T1B:
    case Family::T2:
    case Family::T2LC:
    case Family::T3C_A:
    case Family::T3C_B:
      return true;
    default:
      return false;
  }
}

bool is_nontracial_family(Family f) {
  switch (f) {
    case Family::NT1A:
    case Family::NT1B:
    case Family::NT1C:
    case Family::NT2:
    case Family::NT2LC_B:
    case Family::NT2LC_C:
    case Family::NT3C_A:
    case Family::NT3C_B:
    case Family::NT3C_C:
      return true;
    default:
      return false;
  }
}

bool t1b_in_index_set(cplx alpha, double beta, double tol) {
  if (beta < -tol || beta > 1.0 + tol) return false;
  if (std::abs(beta - 1.0) <= tol) return is_nonneg_real(alpha, tol);
  return in_half_plane(alpha, tol);
}

bool nt1c_in_index_set(cplx alpha, double beta, cplx gamma, double tol) {
  if (beta < -1.0 - tol || beta > 1.0 + tol) return false;
  if (std::abs(std::abs(beta) - 1.0) <= tol) {
    if (std::abs(alpha) > tol) return is_nonneg_real(alpha, tol);
    return is_nonneg_real(gamma, tol);
  }
  return in_half_plane(std::abs(alpha) > tol ? alpha : gamma, tol);
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Empty: return "Empty";
    case Family::T1A: return "T1A";
    case Family::T1B: return "T1B";
    case Family::T2: return "T2";
    case Family::T2LC: return "T2LC";
    case Family::T3C_A: return "T3C_A";
    case Family::T3C_B: return "T3C_B";
    case Family::NT1A: return "NT1A";
    case Family::NT1B: return "NT1B";
    case Family::NT1C: return "NT1C";
    case Family::NT2: return "NT2";
    case Family::NT2LC_B: return "NT2LC_B";
    case Family::NT2LC_C: return "NT2LC_C";
    case Family::NT3C_A: return "NT3C_A";
    case Family::NT3C_B: return "NT3C_B";
    case Family::NT3C_C: return "NT3C_C";
    case Family::Complete: return "Complete";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(Family::Complete); ++i) {
    const Family f = static_cast<Family>(i);
    if (family_name(f) == name) return f;
  }
  throw InvalidParameters("unknown family " + name);
}

std::vector<std::string> parameter_names(Family f) {
  switch (f) {
    case Family::T1B:
    case Family::T3C_B: return {"alpha", "beta"};
    case Family::T2: return {"beta", "gamma", "delta"};
    case Family::T2LC: return {"beta"};
    case Family::NT1B:
    case Family::NT3C_B: return {"alpha"};
    case Family::NT1C:
    case Family::NT3C_C: return {"alpha", "beta", "gamma"};
    case Family::NT2: return {"alpha", "beta", "gamma", "delta"};
    case Family::NT2LC_C: return {"beta", "gamma"};
    default: return {};
  }
}

int family_edge_count(Family f) {
  switch (f) {
    case Family::Empty: return 0;
    case Family::T1A:
    case Family::T1B:
    case Family::NT1A:
    case Family::NT1B:
    case Family::NT1C: return 1;
    case Family::T2:
    case Family::T2LC:
    case Family::NT2:
    case Family::NT2LC_B:
    case Family::NT2LC_C: return 2;
    case Family::T3C_A:
    case Family::T3C_B:
    case Family::NT3C_A:
    case Family::NT3C_B:
    case Family::NT3C_C: return 3;
    case Family::Complete: return 4;
  }
  return -1;
}

double canonical_distance(const CanonicalForm& a, const CanonicalForm& b) {
  if (a.family != b.family || std::abs(a.q - b.q) > TOL_Q) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (const std::string& p : parameter_names(a.family)) {
    if (p == "alpha") d = std::max(d, std::abs(a.alpha - b.alpha));
    if (p == "beta") d = std::max(d, std::abs(a.beta - b.beta));
    if (p == "gamma") d = std::max(d, std::abs(a.gamma - b.gamma));
    if (p == "delta") d = std::max(d, std::abs(a.delta - b.delta));
  }
  return d;
}

bool in_index_set(const CanonicalForm& cf, double tol) {
  if (!(cf.q > 0.0) || cf.q > 1.0) return false;
  const bool tracial = std::abs(cf.q - 1.0) <= TOL_Q;
  if (is_tracial_family(cf.family) && !tracial) return false;
  if (is_nontracial_family(cf.family) && tracial) return false;
  if (cf.edge_count != family_edge_count(cf.family)) return false;
  switch (cf.family) {
    case Family::T1B:
    case Family::T3C_B:
      return t1b_in_index_set(cf.alpha, cf.beta, tol);
    case Family::T2:
      if (cf.beta < -tol || cf.beta > 1.0 + tol) return false;
      if (std::abs(cf.beta - 1.0) <= tol) return is_nonneg_real(cf.gamma, tol);
      if (cf.beta > tol) return in_half_plane(cf.gamma, tol);
      return o2_pair_in_index_set(cf.gamma, cf.delta, tol);
    case Family::T2LC:
      return cf.beta >= -tol && cf.beta <= 1.0 + tol;
    case Family::NT1C:
    case Family::NT3C_C:
      return nt1c_in_index_set(cf.alpha, cf.beta, cf.gamma, tol);
    case Family::NT2LC_C:
      return nt1c_in_index_set(0.0, cf.beta, cf.gamma, tol);
    case Family::NT2:
      if (cf.beta < -1.0 - tol || cf.beta > 1.0 + tol) return false;
      if (std::abs(std::abs(cf.beta) - 1.0) <= tol) {
        if (std::abs(cf.delta) > tol) return is_nonneg_real(cf.delta, tol);
        return is_nonneg_real(cf.alpha, tol);
      }
      return in_half_plane(std::abs(cf.delta) > tol ? cf.delta : cf.alpha, tol);
    default:
      return true;
  }
}

CanonicalForm canonicalize_line_tracial(const PauliSpace& space) {
  check_rank(space, 1, "canonicalize_line_tracial");
  check_kind(space, true, "canonicalize_line_tracial needs the standard Pauli basis");
  const Vector4 v = space.space.basis()[0];
  const Vector3 tail = v.tail<3>();
  if (tail.norm() <= TOL_CANON * v.norm()) return make(Family::T1A, space.q);

  const CanonicalLineC3 c = canonical_beta_c3(tail);
  CanonicalForm cf = make(Family::T1B, space.q);
  cf.beta = c.beta;
  cplx alpha = clean(c.scalar * v(0));
  // Residual stabilizer: a phase when beta = 1, a sign otherwise.
  if (c.beta == 1.0) {
    alpha = std::abs(alpha);
  } else if (!in_half_plane(alpha)) {
    alpha = -alpha;
  }
  cf.alpha = alpha;
  return cf;
}

CanonicalForm canonicalize_plane_tracial(const PauliSpace& space) {
  check_rank(space, 2, "canonicalize_plane_tracial");
  check_kind(space, true, "canonicalize_plane_tracial needs the standard Pauli basis");
  Vector4 v, w;
  plane_vectors(space, v, w);
  const CanonicalLineC3 c = canonical_beta_c3(v.tail<3>());
  const Vector3 rw = c.rotation.cast<cplx>() * w.tail<3>();

  CanonicalForm cf = make(Family::T2, space.q);
  cf.beta = c.beta;
  cplx gamma = clean(rw(1));
  cplx delta = clean(rw(2));
  if (c.beta == 1.0) {
    gamma = std::abs(gamma);
  } else if (c.beta > 0.0) {
    if (!in_half_plane(gamma)) gamma = -gamma;
  } else {
    normalize_o2_pair(gamma, delta);
  }
  cf.gamma = gamma;
  cf.delta = delta;
  return cf;
}

CanonicalForm canonicalize_line_nontracial(const PauliSpace& space) {
  check_rank(space, 1, "canonicalize_line_nontracial");
  check_kind(space, false, "canonicalize_line_nontracial needs the q-adjusted Pauli basis");
  const Vector4 v = space.space.basis()[0];
  const double n = v.norm();
  const Vector2 mid(v(1), v(2));
  if (mid.norm() <= TOL_CANON * n) {
    if (std::abs(v(3)) <= TOL_CANON * n) return make(Family::NT1A, space.q);
    CanonicalForm cf = make(Family::NT1B, space.q);
    cf.alpha = clean(v(0) / v(3));
    return cf;
  }

  const CanonicalLineC2 c = canonical_beta_c2(mid, LineGroup::SO2);
  CanonicalForm cf = make(Family::NT1C, space.q);
  cf.beta = c.beta;
  cplx alpha = clean(c.scalar * v(0));
  cplx gamma = clean(c.scalar * v(3));
  if (std::abs(c.beta) == 1.0) {
    const cplx key = alpha != cplx(0.0) ? alpha : gamma;
    if (key != cplx(0.0)) {
      const cplx ph = unit_phase(key);
      alpha *= ph;
      gamma *= ph;
    }
  } else {
    const cplx key = alpha != cplx(0.0) ? alpha : gamma;
    if (!in_half_plane(key)) {
      alpha = -alpha;
      gamma = -gamma;
    }
  }
  if (alpha != cplx(0.0) && std::abs(c.beta) == 1.0) alpha = alpha.real();
  cf.alpha = clean(alpha);
  cf.gamma = clean(gamma);
  return cf;
}

CanonicalForm canonicalize_plane_nontracial(const PauliSpace& space) {
  check_rank(space, 2, "canonicalize_plane_nontracial");
  check_kind(space, false, "canonicalize_plane_nontracial needs the q-adjusted Pauli basis");
  Vector4 v, w;
  plane_vectors(space, v, w);
  const CanonicalLineC2 c = canonical_beta_c2(Vector2(v(1), v(2)), LineGroup::SO2);
  const Vector2 rw = c.rotation.cast<cplx>() * Vector2(w(1), w(2));

  CanonicalForm cf = make(Family::NT2, space.q);
  cf.beta = c.beta;
  cplx alpha = clean(rw(1));
  cplx delta = clean(c.scalar * v(3));
  const cplx gamma = clean(w(3));

  if (std::abs(c.beta) == 1.0) {
    // The stabilizer is a phase lambda with a matching rotation; apply it to
    // the normal-form vectors and read the parameters back.
    const cplx key = delta != cplx(0.0) ? delta : alpha;
    if (key != cplx(0.0)) {
      const cplx lam = unit_phase(key);
      Eigen::Matrix2d r;
      r << lam.real(), -c.beta * lam.imag(), c.beta * lam.imag(), lam.real();
      const Vector2 ww = r.cast<cplx>() * Vector2(I_UNIT * alpha * c.beta - gamma * std::conj(delta), alpha);
      alpha = ww(1);
      delta = lam * delta;
    }
    if (delta != cplx(0.0)) delta = std::abs(delta);
    else alpha = std::abs(alpha);
  } else {
    const cplx key = delta != cplx(0.0) ? delta : alpha;
    if (!in_half_plane(key)) {
      alpha = -alpha;
      delta = -delta;
    }
  }
  cf.alpha = clean(alpha);
  cf.gamma = gamma;
  cf.delta = clean(delta);
  return cf;
}

namespace {

CanonicalForm canonicalize_line(const QuantumSet& qs, const QuantumGraph& g) {
  const PauliSpace v = to_pauli(qs, g.basis());
  return qs.is_tracial() ? canonicalize_line_tracial(v) : canonicalize_line_nontracial(v);
}

bool loopfree_edge_space(const QuantumGraph& g) {
  double overlap = 0.0;
  for (const Matrix2& x : g.basis())
    overlap = std::max(overlap, std::abs(g.qset().inner(InnerProductKind::KMS_psi_inverse, x, Matrix2::Identity())));
  return overlap < TOL_PROP;
}

}  // namespace

CanonicalForm canonicalize(const QuantumGraph& g) {
  const QuantumSet& qs = g.qset();
  switch (g.edge_count()) {
    case 0: return make(Family::Empty, qs.q());
    case 4: return make(Family::Complete, qs.q());
    case 1: return canonicalize_line(qs, g);
    case 2: {
      if (!loopfree_edge_space(g)) {
        const PauliSpace v = to_pauli(qs, g.basis());
        return qs.is_tracial() ? canonicalize_plane_tracial(v) : canonicalize_plane_nontracial(v);
      }
      const CanonicalForm line = canonicalize_line(qs, loopfree_complement(g));
      CanonicalForm cf = line;
      cf.edge_count = 2;
      cf.alpha = 0.0;
      switch (line.family) {
        case Family::T1B: cf.family = Family::T2LC; break;
        case Family::NT1B: cf.family = Family::NT2LC_B; break;
        case Family::NT1C: cf.family = Family::NT2LC_C; break;
        default: throw FamilyMismatch("loopfree complement of a loopfree plane must be loopfree");
      }
      return cf;
    }
    case 3: {
      const CanonicalForm line = canonicalize_line(qs, complement(g));
      CanonicalForm cf = line;
      cf.edge_count = 3;
      switch (line.family) {
        case Family::T1A: cf.family = Family::T3C_A; break;
        case Family::T1B: cf.family = Family::T3C_B; break;
        case Family::NT1A: cf.family = Family::NT3C_A; break;
        case Family::NT1B: cf.family = Family::NT3C_B; break;
        case Family::NT1C: cf.family = Family::NT3C_C; break;
        default: throw FamilyMismatch("unexpected family for a one-edge complement");
      }
      return cf;
    }
    default: throw RankMismatch("edge count out of range");
  }
}

IsomorphismVerdict is_isomorphic(const QuantumGraph& g1, const QuantumGraph& g2, double tol) {
  IsomorphismVerdict out;
  out.first = canonicalize(g1);
  out.second = canonicalize(g2);
  out.isomorphic = canonical_distance(out.first, out.second) <= tol;
  return out;
}

std::vector<Matrix2> representative_spanners(const CanonicalForm& cf) {
  if (!in_index_set(cf)) throw InvalidParameters(family_name(cf.family) + " parameters outside the index set");
  const double q2inv = 1.0 / (cf.q * cf.q);
  const double bp = 1.0 + cf.beta, bm = 1.0 - cf.beta;
  const cplx a = cf.alpha, g = cf.gamma, d = cf.delta;
  auto m = [](cplx x00, cplx x01, cplx x10, cplx x11) {
    Matrix2 r;
    r << x00, x01, x10, x11;
    return r;
  };
  auto spanners_of = [](const QuantumGraph& gr) { return gr.basis(); };
  CanonicalForm sub = cf;
  switch (cf.family) {
    case Family::Empty: return {};
    case Family::Complete:
      return {matrix_unit(0, 0), matrix_unit(0, 1), matrix_unit(1, 0), matrix_unit(1, 1)};
    case Family::T1A:
    case Family::NT1A: return {Matrix2::Identity()};
    case Family::T1B: return {m(a, bp, bm, a)};
    case Family::T2:
      return {m(0.0, bp, bm, 0.0), m(1.0 + d, -I_UNIT * g * bm, I_UNIT * g * bp, 1.0 - d)};
    case Family::NT1B: return {m(a + q2inv, 0.0, 0.0, a - 1.0)};
    case Family::NT1C: return {m(a + q2inv * g, bp, bm, a - g)};
    case Family::NT2:
      return {m(q2inv * d, bp, bm, -d),
              m(1.0 + q2inv * g, -I_UNIT * a * bm - g * std::conj(d), I_UNIT * a * bp - g * std::conj(d), 1.0 - g)};
    case Family::T2LC:
      sub.family = Family::T1B;
      sub.edge_count = 1;
      sub.alpha = 0.0;
      return spanners_of(loopfree_complement(realize(sub)));
    case Family::NT2LC_B:
      sub.family = Family::NT1B;
      sub.edge_count = 1;
      sub.alpha = 0.0;
      return spanners_of(loopfree_complement(realize(sub)));
    case Family::NT2LC_C:
      sub.family = Family::NT1C;
      sub.edge_count = 1;
      sub.alpha = 0.0;
      return spanners_of(loopfree_complement(realize(sub)));
    case Family::T3C_A: sub.family = Family::T1A; break;
    case Family::T3C_B: sub.family = Family::T1B; break;
    case Family::NT3C_A: sub.family = Family::NT1A; break;
    case Family::NT3C_B: sub.family = Family::NT1B; break;
    case Family::NT3C_C: sub.family = Family::NT1C; break;
  }
  sub.edge_count = 1;
  return spanners_of(complement(realize(sub)));
}

QuantumGraph realize(const CanonicalForm& cf) {
  const std::vector<Matrix2> s = representative_spanners(cf);
  const QuantumGraph g = graph_from_spanners(QuantumSet(cf.q), s);
  if (g.edge_count() != cf.edge_count) throw InvalidParameters("representative has the wrong number of edges");
  return g;
}

}  // namespace qgm2
