#pragma once

#include "qgm2/pauli.hpp"
#include "qgm2/qgraph.hpp"

#include <cstdint>

namespace qgm2 {

inline constexpr int GRID_N = 4096;
inline constexpr int QUASI_N = 20000;
inline constexpr int REFINE_SEEDS = 8;
inline constexpr double ORACLE_THRESHOLD = 1e-6;

struct SearchReport {
  double min_distance = 0.0;
  Eigen::MatrixXd best_rotation;  // 2x2 for nontracial sets, 3x3 for tracial ones
  long evaluations = 0;
  bool converged = false;
};

/// Brute-force search over the automorphism group for the rotation that moves
/// v1 closest to v2. Deterministic for a fixed seed.
SearchReport rotation_search(const QuantumSet& qs, const PauliSpace& v1, const PauliSpace& v2,
                             std::uint64_t seed = 0);

/// Isomorphism test that uses rotation_search only, never canonical forms.
bool oracle_is_isomorphic(const QuantumGraph& g1, const QuantumGraph& g2, double threshold = ORACLE_THRESHOLD,
                          std::uint64_t seed = 0, SearchReport* report = nullptr);

}  // namespace qgm2
