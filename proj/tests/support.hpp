#pragma once

#include "qgm2/canonical.hpp"
#include "qgm2/oracle.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace qgm2::testing {

struct Rng {
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen); }
  double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(gen); }
  bool chance(double p) { return uniform() < p; }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
  cplx cnormal() { return {normal(), normal()}; }

  Matrix2 matrix() {
    Matrix2 m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = cnormal();
    return m;
  }

  Vector4 vector4() {
    Vector4 v;
    for (int i = 0; i < 4; ++i) v(i) = cnormal();
    return v;
  }

  Eigen::Matrix3d so3() {
    Eigen::Quaterniond quat(normal(), normal(), normal(), normal());
    return quat.normalized().toRotationMatrix();
  }

  Eigen::Matrix2d so2() { return rotation2(uniform(0.0, 2.0 * std::numbers::pi)); }

  std::mt19937_64 gen;
};

/// Graph with k edges spanned by Gaussian random matrices.
inline QuantumGraph random_graph(Rng& rng, double q, int k) {
  std::vector<Matrix2> s;
  for (int i = 0; i < k; ++i) s.push_back(rng.matrix());
  return graph_from_spanners(QuantumSet(q), s);
}

/// Vec-form map of a random automorphism of (M2, psi_q).
inline Matrix4 random_automorphism(Rng& rng, const QuantumSet& qs) {
  if (qs.is_tracial()) return induced_map(qs, automorphism_action(qs, rng.so3()));
  return induced_map(qs, automorphism_action(qs, rng.so2()));
}

inline cplx upper_half(cplx z) {
  const double t = std::arg(z);
  return (t >= 0.0 && t < std::numbers::pi) ? z : -z;
}

/// A random complex number that is zero or real with some probability.
inline cplx random_param(Rng& rng, double p_zero = 0.15, double p_real = 0.2) {
  const double u = rng.uniform();
  if (u < p_zero) return 0.0;
  if (u < p_zero + p_real) return rng.normal();
  return rng.cnormal();
}

inline double random_beta(Rng& rng, bool signed_range) {
  const double u = rng.uniform();
  if (u < 0.2) return 0.0;
  if (u < 0.35) return 1.0;
  if (signed_range && u < 0.5) return -1.0;
  return signed_range ? rng.uniform(-1.0, 1.0) : rng.uniform(0.0, 1.0);
}

/// Random parameters inside the index set of the family, with boundary cases
/// drawn with positive probability.
inline CanonicalForm random_form(Rng& rng, Family f, double q) {
  CanonicalForm cf;
  cf.family = f;
  cf.q = q;
  cf.edge_count = family_edge_count(f);
  switch (f) {
    case Family::T1B:
    case Family::T3C_B: {
      cf.beta = random_beta(rng, false);
      const cplx a = random_param(rng);
      cf.alpha = cf.beta == 1.0 ? cplx(std::abs(a)) : upper_half(a);
      break;
    }
    case Family::T2: {
      cf.beta = random_beta(rng, false);
      cplx g = random_param(rng, 0.1);
      if (cf.beta == 1.0) {
        cf.gamma = std::abs(g);
        cf.delta = random_param(rng);
      } else if (cf.beta > 0.0) {
        cf.gamma = upper_half(g);
        cf.delta = random_param(rng);
      } else {
        const double u = rng.uniform();
        const double eta = u < 0.2 ? 0.0 : (u < 0.4 ? 1.0 : rng.uniform());
        g = eta == 1.0 ? cplx(std::abs(g)) : upper_half(g);
        cf.gamma = g;
        cf.delta = I_UNIT * eta * g;
      }
      break;
    }
    case Family::T2LC: cf.beta = random_beta(rng, false); break;
    case Family::NT1B:
    case Family::NT3C_B: cf.alpha = random_param(rng); break;
    case Family::NT1C:
    case Family::NT3C_C:
    case Family::NT2LC_C: {
      cf.beta = random_beta(rng, true);
      const cplx a = f == Family::NT2LC_C ? cplx(0.0) : random_param(rng, 0.3);
      const cplx g = random_param(rng);
      if (std::abs(cf.beta) == 1.0) {
        if (a != cplx(0.0)) {
          cf.alpha = std::abs(a);
          cf.gamma = g;
        } else {
          cf.gamma = std::abs(g);
        }
      } else {
        cf.alpha = upper_half(a);
        cf.gamma = a != cplx(0.0) ? g : upper_half(g);
      }
      break;
    }
    case Family::NT2: {
      cf.beta = random_beta(rng, true);
      const cplx a = random_param(rng);
      const cplx d = random_param(rng, 0.3);
      cf.gamma = random_param(rng);
      if (std::abs(cf.beta) == 1.0) {
        if (d != cplx(0.0)) {
          cf.delta = std::abs(d);
          cf.alpha = a;
        } else {
          cf.alpha = std::abs(a);
        }
      } else if (d != cplx(0.0)) {
        cf.delta = upper_half(d);
        cf.alpha = a;
      } else {
        cf.alpha = upper_half(a);
      }
      break;
    }
    default: break;
  }
  return cf;
}

inline std::vector<Family> families_for(double q, int edges) {
  const bool tracial = std::abs(q - 1.0) <= TOL_Q;
  std::vector<Family> out;
  for (int i = 0; i <= static_cast<int>(Family::Complete); ++i) {
    const Family f = static_cast<Family>(i);
    if (family_edge_count(f) != edges) continue;
    const std::string name = family_name(f);
    const bool nt = name.rfind("NT", 0) == 0;
    const bool t = name[0] == 'T';
    if ((tracial && nt) || (!tracial && t)) continue;
    out.push_back(f);
  }
  return out;
}

/// Smallest over permutations of the largest entrywise gap between two 4-multisets.
inline double multiset_distance(const std::array<cplx, 4>& a, const std::array<cplx, 4>& b) {
  std::array<int, 4> p{0, 1, 2, 3};
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a[i] - b[p[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

}  // namespace qgm2::testing
