#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace pcc {

using Weight = std::int64_t;

struct MatchEdge {
  int u = 0;
  int v = 0;
  Weight w = 0;
};

/// Simple undirected graph with integer edge weights.
class WeightedMatchGraph {
 public:
  WeightedMatchGraph() = default;
  WeightedMatchGraph(int num_vertices, std::vector<MatchEdge> edges);

  int num_vertices() const { return num_vertices_; }
  const std::vector<MatchEdge>& edges() const { return edges_; }

  /// Replaces every weight, keeping the topology.
  void set_weights(std::span<const Weight> weights);

  /// True when both graphs have the same vertex count and edge endpoints in
  /// the same order.
  bool same_topology(const WeightedMatchGraph& other) const;

 private:
  int num_vertices_ = 0;
  std::vector<MatchEdge> edges_;
};

struct Matching {
  std::vector<std::pair<int, int>> pairs;  ///< (u, v) with u < v, sorted
  Weight total_weight = 0;
  std::vector<int> matched_edge;           ///< edge index per vertex
};

/// Weights above this magnitude could overflow the dual arithmetic.
inline constexpr Weight kMaxMatchWeight = Weight{1} << 52;

/// Minimum-weight perfect matching by Edmonds' blossom algorithm.
/// Throws NoPerfectMatching when none exists.
Matching min_weight_perfect_matching(const WeightedMatchGraph& graph);

/// Blossom solver that keeps its dual solution between calls so that a
/// graph whose weights changed can be re-solved from a warm start.
///
/// Not thread-safe; use one instance per thread.
class MatchingSolver {
 public:
  MatchingSolver();
  ~MatchingSolver();
  MatchingSolver(MatchingSolver&&) noexcept;
  MatchingSolver& operator=(MatchingSolver&&) noexcept;

  Matching solve(const WeightedMatchGraph& graph);

  /// Re-solves `graph`, which must have the topology of the previous solve.
  /// `changed_edges` lists the edges whose weight differs from the previous
  /// call; with an empty list the cached result is returned after checking
  /// that no weight changed. Throws InvalidRewarm on a topology mismatch.
  Matching rewarm_solve(const WeightedMatchGraph& graph,
                        std::span<const int> changed_edges);

  /// Same as above for callers that keep the topology and update all
  /// weights in one go.
  Matching rewarm_solve(std::span<const Weight> weights);

  bool has_state() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Debug dump: `p edge V E` followed by one `e u v w` line per edge.
void write_dimacs(std::ostream& out, const WeightedMatchGraph& graph);

}  // namespace pcc
