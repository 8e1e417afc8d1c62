#pragma once

#include "pcc/matching.hpp"
#include "pcc/model.hpp"

namespace pcc {

// Exhaustive reference solvers. Deliberately naive; used by tests and for
// certifying small instances.

inline constexpr int kOracleMaxNodes = 24;
inline constexpr int kOracleMaxMatchVertices = 12;

struct OracleResult {
  LabelAssignment assignment;
  double energy = 0.0;
};

/// Minimum energy over all 2^N assignments. Among optima the
/// lexicographically smallest assignment is returned.
OracleResult brute_force_map(const BinaryMRF& model);

/// Same enumeration for a unary-free model, with node 0 fixed to label 0.
OracleResult brute_force_ground_state(const SymmetricIsing& model);

/// Minimum-weight perfect matching by enumerating every perfect matching.
Matching brute_force_mwpm(const WeightedMatchGraph& graph);

}  // namespace pcc
