#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pcc/embedding.hpp"
#include "pcc/matching.hpp"
#include "pcc/model.hpp"

namespace pcc {

/// Expanded dual of an embedded planar graph: every face with d non-bridge
/// boundary darts becomes a gadget in which perfect matchings select exactly
/// the even subsets of the face's dual edges.
///
///  - d = 2: two port vertices joined by one edge.
///  - d >= 3: a chain of d - 2 triangles. The first triangle carries ports
///    for darts 0 and 1, the last one for darts d - 2 and d - 1, every
///    middle triangle for one dart. Consecutive triangles are linked by a
///    connector edge.
///
/// Every non-bridge original edge becomes one external edge joining the
/// ports of its two darts, weighted -theta. A matched external edge means
/// the original edge is uncut, so
///
///   E_1(cut) = matching weight + sum of non-bridge theta.
///
/// Bridges never constrain parity and are decided by sign alone; their
/// contribution min(0, theta) is folded into the offset.
struct ExpandedDual {
  WeightedMatchGraph match_graph;
  Weight offset = 0;

  int num_nodes = 0;
  /// Original undirected edges (i < j), sorted; all indices below refer to
  /// this order.
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<Weight> weights;
  /// External match edge per original edge, -1 for bridges.
  std::vector<int> edge_map;
  /// Port vertex of each dart of the embedding, -1 on bridges.
  std::vector<int> dart_port;
  /// Gadget vertices per face, ports and connectors in creation order.
  std::vector<std::vector<int>> gadget_map;
  std::vector<int> component;  ///< component id per original node

  /// Loads new original-edge weights, updating match weights and offset.
  void reweight(std::span<const Weight> edge_weights);
};

struct GroundState {
  LabelAssignment labels;
  Weight energy = 0;
};

/// Builds the expanded dual of `ising` drawn as `embedding`. The embedding
/// must contain every model edge; embedding edges absent from the model
/// carry weight 0. All weights must be integers.
ExpandedDual build_expanded_dual(const SymmetricIsing& ising,
                                 const PlanarEmbedding& embedding);

/// Decodes a perfect matching of `dual.match_graph` into a labeling. Each
/// connected component is rooted at its smallest node, which gets label 0.
GroundState decode_ground_state(const ExpandedDual& dual,
                                const Matching& matching);

/// Exact minimizer of the unary-free energy, labels normalized so that
/// node 0 has label 0.
GroundState ground_state(const SymmetricIsing& ising,
                         const PlanarEmbedding& embedding);

/// Repeated ground states on a fixed embedding with changing weights; each
/// solve after the first rewarms the matching solver.
class PlanarIsingSolver {
 public:
  explicit PlanarIsingSolver(const PlanarEmbedding& embedding);

  const ExpandedDual& dual() const { return dual_; }
  const std::vector<std::pair<NodeId, NodeId>>& edges() const {
    return dual_.edges;
  }

  /// Weights are indexed like edges().
  GroundState solve(std::span<const Weight> edge_weights);

 private:
  ExpandedDual dual_;
  MatchingSolver matcher_;
  bool warm_ = false;
};

}  // namespace pcc
