#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "pcc/embedding.hpp"
#include "pcc/model.hpp"
#include "pcc/planar_ising.hpp"

namespace pcc {

/// One (node, face) adjacency of the cycle-covering graph.
struct Incidence {
  NodeId node = 0;
  int face = 0;
};

/// Planar graph augmented with one auxiliary node per face. Face f becomes
/// node num_base_nodes + f and is joined once to every distinct vertex on
/// its boundary, so the augmented graph stays planar. Nodes of degree zero
/// have no face; their unary term is minimized in closed form.
struct PCCGraph {
  int num_base_nodes = 0;
  int num_faces = 0;
  std::vector<std::pair<NodeId, NodeId>> base_edges;
  std::vector<Incidence> incidences;
  /// N_i as incidence indices, per base node.
  std::vector<std::vector<int>> node_incidences;
  std::vector<char> isolated;
  std::vector<int> component;       ///< per base node
  std::vector<int> face_component;  ///< per face
  PlanarEmbedding embedding;        ///< embedding of the augmented graph

  int num_vertices() const { return num_base_nodes + num_faces; }
  int num_edges() const {
    return static_cast<int>(base_edges.size() + incidences.size());
  }
  NodeId face_node(int face) const { return num_base_nodes + face; }
};

/// Per-incidence split of the unary weights, theta_i^f.
struct VariationalParams {
  Eigen::VectorXd theta_split;
};

struct LowerBound {
  double value = 0.0;
  /// Labels of the base nodes followed by the face nodes.
  LabelAssignment config;
};

struct UpperBound {
  LabelAssignment assignment;
  double energy = 0.0;
};

struct TraceRecord {
  int iter = 0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double best_upper = 0.0;
  double step_size = 0.0;
  double subgrad_norm2 = 0.0;
  double elapsed_ms = 0.0;
};

using BoundTrace = std::vector<TraceRecord>;

struct Certificate {
  bool optimal = false;
  double gap = 0.0;
};

enum class StopReason { kGapClosed, kZeroSubgradient, kIterationLimit };

struct SolveResult {
  LabelAssignment best_assignment;
  double best_upper = 0.0;
  double best_lower = 0.0;
  Certificate certificate;
  BoundTrace trace;
  int iterations = 0;
  StopReason stop = StopReason::kIterationLimit;
  bool integral_model = false;
};

struct OptimizeOptions {
  int max_iters = 1000;
  double tol = 1.0;
  /// Recorded with results; the iteration itself is deterministic.
  std::uint64_t seed = 0;
  /// Incidence weights are multiplied by this and rounded before matching.
  double matching_scale = 1e6;
  bool record_time = true;
  /// Called after every iteration with the parameters the bound used.
  std::function<void(const TraceRecord&, const VariationalParams&)>
      on_iteration;
};

PCCGraph build_pcc(const BinaryMRF& model, const PlanarEmbedding& embedding);

/// Uniform split theta_i / |N_i|.
VariationalParams init_params(const BinaryMRF& model, const PCCGraph& pcc);

/// Largest |sum_f theta_i^f - theta_i| / max(1, |theta_i|) over nodes.
double max_sum_violation(const BinaryMRF& model, const PCCGraph& pcc,
                         const VariationalParams& params);

/// Exact minimum of the relaxed energy. Weights are quantized to integers
/// at `matching_scale`; the returned value subtracts the worst-case
/// rounding loss, so it never exceeds the true relaxed minimum.
LowerBound lower_bound(const BinaryMRF& model, const PCCGraph& pcc,
                       const VariationalParams& params,
                       double matching_scale = 1e6);

/// Projected subgradient: [X_i != X_f] minus its mean over N_i.
Eigen::VectorXd subgradient(const PCCGraph& pcc,
                            const LabelAssignment& config);

/// Polyak step 0.5 * (best_upper - lower) / |g|^2, or nullopt when the
/// subgradient vanishes.
std::optional<double> polyak_step(double best_upper, double lower,
                                  double grad_sq_norm);

/// Best of X and its complement, chosen independently per connected
/// component, where X is the base-node part of `config` oriented so that
/// most face nodes are 0.
UpperBound decode_upper(const BinaryMRF& model, const PCCGraph& pcc,
                        const LabelAssignment& config);

/// Stateful lower-bound evaluator that reuses the expanded dual and warm
/// starts the matching between calls.
class CycleCoverBound {
 public:
  CycleCoverBound(const BinaryMRF& model, const PCCGraph& pcc,
                  double matching_scale = 1e6);
  LowerBound evaluate(const VariationalParams& params);

 private:
  const BinaryMRF* model_;
  const PCCGraph* pcc_;
  double scale_;
  PlanarIsingSolver solver_;
  std::vector<int> base_slot_;       ///< augmented edge of each base edge
  std::vector<double> base_weight_;  ///< model weight of each base edge
  std::vector<int> incidence_slot_;
};

SolveResult optimize(const BinaryMRF& model, const PlanarEmbedding& embedding,
                     const OptimizeOptions& options = {});

}  // namespace pcc
