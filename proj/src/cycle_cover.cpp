#include "pcc/cycle_cover.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "pcc/error.hpp"

namespace pcc {
namespace {

int find_edge(const std::vector<std::pair<NodeId, NodeId>>& edges, NodeId a,
              NodeId b) {
  const std::pair<NodeId, NodeId> key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || *it != key) return -1;
  return static_cast<int>(it - edges.begin());
}

void check_model_fits(const BinaryMRF& model,
                      const PlanarEmbedding& embedding) {
  if (model.num_nodes() != embedding.num_vertices()) {
    throw DimensionError("model has " + std::to_string(model.num_nodes()) +
                         " nodes, embedding has " +
                         std::to_string(embedding.num_vertices()));
  }
}

// Model weight of every embedding edge, 0 where the model has none.
std::vector<double> base_weights(const BinaryMRF& model,
                                 const std::vector<std::pair<NodeId, NodeId>>&
                                     base_edges) {
  std::vector<double> w(base_edges.size(), 0.0);
  for (const Edge& e : model.edges()) {
    const int k = find_edge(base_edges, e.i, e.j);
    if (k < 0) {
      throw NotPlanarEmbedding("model edge (" + std::to_string(e.i) + ", " +
                               std::to_string(e.j) +
                               ") is missing from the embedding");
    }
    w[k] = e.weight;
  }
  return w;
}

double isolated_fold(const BinaryMRF& model, const PCCGraph& pcc) {
  double acc = 0.0;
  for (int i = 0; i < pcc.num_base_nodes; ++i) {
    if (pcc.isolated[i]) acc += std::min(0.0, model.unary()[i]);
  }
  return acc;
}

}  // namespace

PCCGraph build_pcc(const BinaryMRF& model, const PlanarEmbedding& embedding) {
  check_model_fits(model, embedding);
  const FaceSet fs = trace_faces(embedding);
  const int n = embedding.num_vertices();

  PCCGraph pcc;
  pcc.num_base_nodes = n;
  pcc.num_faces = static_cast<int>(fs.faces.size());
  pcc.base_edges = embedding.edges();
  pcc.component = fs.component;
  pcc.face_component = fs.face_component;
  pcc.isolated.assign(n, 0);
  pcc.node_incidences.resize(n);
  for (int v = 0; v < n; ++v) pcc.isolated[v] = embedding.degree(v) == 0;
  base_weights(model, pcc.base_edges);  // validates edge coverage

  // The corner used to attach a face node to v is the first dart leaving v
  // along that face's boundary.
  std::vector<char> corner(embedding.num_darts(), 0);
  std::vector<std::vector<NodeId>> face_rot(pcc.num_faces);
  for (int f = 0; f < pcc.num_faces; ++f) {
    for (int d : fs.face_darts[f]) {
      const NodeId v = embedding.tail(d);
      if (std::find(face_rot[f].begin(), face_rot[f].end(), v) !=
          face_rot[f].end()) {
        continue;
      }
      corner[d] = 1;
      face_rot[f].push_back(v);
      pcc.node_incidences[v].push_back(static_cast<int>(pcc.incidences.size()));
      pcc.incidences.push_back({v, f});
    }
  }

  // The face of dart v -> n_k lies between n_k and n_{k+1} in the
  // counterclockwise rotation of v.
  std::vector<std::vector<NodeId>> rot(n + pcc.num_faces);
  for (int v = 0; v < n; ++v) {
    for (int k = 0; k < embedding.degree(v); ++k) {
      const int d = embedding.first_dart(v) + k;
      rot[v].push_back(embedding.head(d));
      if (corner[d]) rot[v].push_back(pcc.face_node(fs.dart_face[d]));
    }
  }
  for (int f = 0; f < pcc.num_faces; ++f) {
    rot[pcc.face_node(f)] = std::move(face_rot[f]);
  }
  pcc.embedding = PlanarEmbedding(std::move(rot));
  return pcc;
}

VariationalParams init_params(const BinaryMRF& model, const PCCGraph& pcc) {
  VariationalParams params;
  params.theta_split = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(pcc.incidences.size()));
  for (int i = 0; i < pcc.num_base_nodes; ++i) {
    const auto& inc = pcc.node_incidences[i];
    if (inc.empty()) continue;
    const double share = model.unary()[i] / static_cast<double>(inc.size());
    for (int k : inc) params.theta_split[k] = share;
  }
  return params;
}

double max_sum_violation(const BinaryMRF& model, const PCCGraph& pcc,
                         const VariationalParams& params) {
  double worst = 0.0;
  for (int i = 0; i < pcc.num_base_nodes; ++i) {
    const auto& inc = pcc.node_incidences[i];
    if (inc.empty()) continue;
    double sum = 0.0;
    for (int k : inc) sum += params.theta_split[k];
    const double theta = model.unary()[i];
    worst = std::max(worst,
                     std::abs(sum - theta) / std::max(1.0, std::abs(theta)));
  }
  return worst;
}

CycleCoverBound::CycleCoverBound(const BinaryMRF& model, const PCCGraph& pcc,
                                 double matching_scale)
    : model_(&model),
      pcc_(&pcc),
      scale_(matching_scale),
      solver_(pcc.embedding) {
  if (!(matching_scale > 0.0)) {
    throw RangeError("matching scale must be positive");
  }
  base_weight_ = base_weights(model, pcc.base_edges);
  const auto& aug = solver_.edges();
  for (const auto& [a, b] : pcc.base_edges) {
    base_slot_.push_back(find_edge(aug, a, b));
  }
  for (const Incidence& inc : pcc.incidences) {
    incidence_slot_.push_back(find_edge(aug, inc.node, pcc.face_node(inc.face)));
  }
}

LowerBound CycleCoverBound::evaluate(const VariationalParams& params) {
  const PCCGraph& pcc = *pcc_;
  if (params.theta_split.size() !=
      static_cast<Eigen::Index>(pcc.incidences.size())) {
    throw DimensionError("parameter vector does not match incidence count");
  }
  std::vector<Weight> w(solver_.edges().size(), 0);
  // Sum of negative rounding residuals: the quantized energy of any
  // configuration exceeds the exact one by at most -loss.
  double loss = 0.0;
  auto put = [&](int slot, double value) {
    const double scaled = value * scale_;
    const double rounded = std::round(scaled);
    if (!std::isfinite(rounded) ||
        std::abs(rounded) > static_cast<double>(kMaxMatchWeight) / 4096.0) {
      throw RangeError("quantized weight out of range; lower matching_scale");
    }
    w[slot] = static_cast<Weight>(rounded);
    loss += std::min(0.0, scaled - rounded);
  };
  for (std::size_t e = 0; e < base_slot_.size(); ++e) {
    put(base_slot_[e], base_weight_[e]);
  }
  for (std::size_t k = 0; k < incidence_slot_.size(); ++k) {
    put(incidence_slot_[k], params.theta_split[static_cast<Eigen::Index>(k)]);
  }

  GroundState gs = solver_.solve(w);
  LowerBound lb;
  lb.value = (static_cast<double>(gs.energy) + loss) / scale_ +
             model_->constant() + isolated_fold(*model_, pcc);
  lb.config = std::move(gs.labels);
  for (int i = 0; i < pcc.num_base_nodes; ++i) {
    if (pcc.isolated[i]) lb.config[i] = model_->unary()[i] < 0.0 ? 1 : 0;
  }
  return lb;
}

LowerBound lower_bound(const BinaryMRF& model, const PCCGraph& pcc,
                       const VariationalParams& params,
                       double matching_scale) {
  CycleCoverBound bound(model, pcc, matching_scale);
  return bound.evaluate(params);
}

Eigen::VectorXd subgradient(const PCCGraph& pcc,
                            const LabelAssignment& config) {
  if (static_cast<int>(config.size()) != pcc.num_vertices()) {
    throw DimensionError("configuration does not cover the augmented graph");
  }
  Eigen::VectorXd g = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(pcc.incidences.size()));
  for (int i = 0; i < pcc.num_base_nodes; ++i) {
    const auto& inc = pcc.node_incidences[i];
    if (inc.empty()) continue;
    double mean = 0.0;
    for (int k : inc) {
      const Incidence& in = pcc.incidences[k];
      g[k] = config[i] != config[pcc.face_node(in.face)] ? 1.0 : 0.0;
      mean += g[k];
    }
    mean /= static_cast<double>(inc.size());
    for (int k : inc) g[k] -= mean;
  }
  return g;
}

std::optional<double> polyak_step(double best_upper, double lower,
                                  double grad_sq_norm) {
  if (!(grad_sq_norm > 0.0)) return std::nullopt;
  return 0.5 * std::max(0.0, best_upper - lower) / grad_sq_norm;
}

UpperBound decode_upper(const BinaryMRF& model, const PCCGraph& pcc,
                        const LabelAssignment& config) {
  if (static_cast<int>(config.size()) != pcc.num_vertices()) {
    throw DimensionError("configuration does not cover the augmented graph");
  }
  const int n = pcc.num_base_nodes;
  const int ncomp =
      n == 0 ? 0 : *std::max_element(pcc.component.begin(), pcc.component.end()) + 1;

  // Orient each component so that the majority of its face nodes read 0.
  std::vector<int> ones(ncomp, 0), total(ncomp, 0);
  for (int f = 0; f < pcc.num_faces; ++f) {
    const int c = pcc.face_component[f];
    ++total[c];
    if (config[pcc.face_node(f)] != 0) ++ones[c];
  }
  UpperBound ub;
  ub.assignment.assign(config.begin(), config.begin() + n);
  std::vector<double> flip_gain(ncomp, 0.0);
  for (int i = 0; i < n; ++i) {
    const int c = pcc.component[i];
    if (2 * ones[c] > total[c]) ub.assignment[i] ^= 1;
  }
  // Flipping a whole component leaves its pairwise terms unchanged.
  for (int i = 0; i < n; ++i) {
    const double theta = model.unary()[i];
    flip_gain[pcc.component[i]] += ub.assignment[i] == 0 ? theta : -theta;
  }
  for (int i = 0; i < n; ++i) {
    if (flip_gain[pcc.component[i]] < 0.0) ub.assignment[i] ^= 1;
  }
  ub.energy = energy(model, ub.assignment);
  return ub;
}

SolveResult optimize(const BinaryMRF& model, const PlanarEmbedding& embedding,
                     const OptimizeOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const PCCGraph pcc = build_pcc(model, embedding);
  VariationalParams params = init_params(model, pcc);
  CycleCoverBound bound(model, pcc, options.matching_scale);

  SolveResult result;
  result.integral_model = model.is_integral();
  result.best_upper = std::numeric_limits<double>::infinity();
  result.best_lower = -std::numeric_limits<double>::infinity();
  const int budget = std::max(1, options.max_iters);

  for (int t = 0;; ++t) {
    LowerBound lb = bound.evaluate(params);
    UpperBound ub = decode_upper(model, pcc, lb.config);
    if (ub.energy < result.best_upper) {
      result.best_upper = ub.energy;
      result.best_assignment = std::move(ub.assignment);
    }
    result.best_lower = std::max(result.best_lower, lb.value);

    const Eigen::VectorXd g = subgradient(pcc, lb.config);
    const double norm2 = g.squaredNorm();
    const double gap = result.best_upper - result.best_lower;

    TraceRecord rec;
    rec.iter = t;
    rec.lower_bound = lb.value;
    rec.upper_bound = ub.energy;
    rec.best_upper = result.best_upper;
    rec.subgrad_norm2 = norm2;

    bool done = true;
    if (gap < options.tol) {
      result.stop = StopReason::kGapClosed;
    } else if (!(norm2 > 0.0)) {
      result.stop = StopReason::kZeroSubgradient;
    } else if (t + 1 >= budget) {
      result.stop = StopReason::kIterationLimit;
    } else {
      done = false;
      rec.step_size = *polyak_step(result.best_upper, lb.value, norm2);
    }
    if (options.record_time) {
      rec.elapsed_ms =
          std::chrono::duration<double, std::milli>(Clock::now() - start)
              .count();
    }
    result.trace.push_back(rec);
    if (options.on_iteration) options.on_iteration(rec, params);
    if (done) break;

    params.theta_split += rec.step_size * g;
    // Put back the floating-point drift of the sum constraint.
    for (int i = 0; i < pcc.num_base_nodes; ++i) {
      const auto& inc = pcc.node_incidences[i];
      if (inc.empty()) continue;
      double sum = 0.0;
      for (int k : inc) sum += params.theta_split[k];
      const double fix =
          (model.unary()[i] - sum) / static_cast<double>(inc.size());
      for (int k : inc) params.theta_split[k] += fix;
    }
  }

  result.iterations = options.max_iters == 0
                          ? 0
                          : static_cast<int>(result.trace.size());
  result.certificate.gap = result.best_upper - result.best_lower;
  result.certificate.optimal = options.max_iters > 0 &&
                               result.integral_model &&
                               result.certificate.gap < 1.0;
  return result;
}

}  // namespace pcc
