#include "pcc/planar_ising.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pcc/error.hpp"

namespace pcc {
namespace {

int edge_index(const std::vector<std::pair<NodeId, NodeId>>& edges, NodeId a,
               NodeId b) {
  const std::pair<NodeId, NodeId> key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || *it != key) return -1;
  return static_cast<int>(it - edges.begin());
}

// Topology only; weights are loaded by reweight().
ExpandedDual build_topology(const PlanarEmbedding& embedding) {
  const FaceSet fs = trace_faces(embedding);
  ExpandedDual dual;
  dual.num_nodes = embedding.num_vertices();
  dual.edges = embedding.edges();
  dual.component = fs.component;
  dual.edge_map.assign(dual.edges.size(), -1);
  dual.dart_port.assign(embedding.num_darts(), -1);
  dual.gadget_map.resize(fs.faces.size());

  std::vector<int> dart_edge(embedding.num_darts());
  for (int d = 0; d < embedding.num_darts(); ++d) {
    dart_edge[d] = edge_index(dual.edges, embedding.tail(d), embedding.head(d));
  }
  auto is_bridge = [&](int d) {
    return fs.dart_face[d] == fs.dart_face[embedding.twin(d)];
  };

  int next_vertex = 0;
  std::vector<MatchEdge> match_edges;
  auto add_vertex = [&](int face) {
    dual.gadget_map[face].push_back(next_vertex);
    return next_vertex++;
  };
  auto link = [&](int a, int b) { match_edges.push_back({a, b, 0}); };

  for (std::size_t f = 0; f < fs.faces.size(); ++f) {
    const int face = static_cast<int>(f);
    std::vector<int> darts;
    for (int d : fs.face_darts[f]) {
      if (!is_bridge(d)) darts.push_back(d);
    }
    const int deg = static_cast<int>(darts.size());
    if (deg == 0) continue;
    if (deg == 1) {
      throw std::logic_error("face with a single non-bridge dart");
    }
    if (deg == 2) {
      const int a = add_vertex(face);
      const int b = add_vertex(face);
      link(a, b);
      dual.dart_port[darts[0]] = a;
      dual.dart_port[darts[1]] = b;
      continue;
    }
    int connector_in = -1;
    for (int t = 0; t < deg - 2; ++t) {
      const int x = add_vertex(face);
      const int y = add_vertex(face);
      const int z = add_vertex(face);
      link(x, y);
      link(y, z);
      link(x, z);
      if (t == 0) {
        dual.dart_port[darts[0]] = x;
      } else {
        link(connector_in, x);
      }
      dual.dart_port[darts[t + 1]] = y;
      if (t == deg - 3) {
        dual.dart_port[darts[deg - 1]] = z;
      } else {
        connector_in = z;
      }
    }
  }

  for (int d = 0; d < embedding.num_darts(); ++d) {
    const int e = dart_edge[d];
    if (is_bridge(d) || embedding.tail(d) > embedding.head(d)) continue;
    dual.edge_map[e] = static_cast<int>(match_edges.size());
    match_edges.push_back(
        {dual.dart_port[d], dual.dart_port[embedding.twin(d)], 0});
  }
  dual.match_graph = WeightedMatchGraph(next_vertex, std::move(match_edges));
  dual.weights.assign(dual.edges.size(), 0);
  return dual;
}

std::vector<Weight> integer_weights(const SymmetricIsing& ising,
                                    const ExpandedDual& dual) {
  std::vector<Weight> w(dual.edges.size(), 0);
  for (const Edge& e : ising.edges()) {
    const int k = edge_index(dual.edges, e.i, e.j);
    if (k < 0) {
      throw NotPlanarEmbedding("model edge (" + std::to_string(e.i) + ", " +
                               std::to_string(e.j) +
                               ") is missing from the embedding");
    }
    if (std::nearbyint(e.weight) != e.weight ||
        std::abs(e.weight) > static_cast<double>(kMaxMatchWeight)) {
      throw InvalidModel("ground states need integer weights; scale first");
    }
    w[k] = static_cast<Weight>(e.weight);
  }
  return w;
}

}  // namespace

void ExpandedDual::reweight(std::span<const Weight> edge_weights) {
  if (edge_weights.size() != edges.size()) {
    throw DimensionError("expected " + std::to_string(edges.size()) +
                         " edge weights, got " +
                         std::to_string(edge_weights.size()));
  }
  weights.assign(edge_weights.begin(), edge_weights.end());
  std::vector<Weight> mw(match_graph.edges().size(), 0);
  offset = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edge_map[e] >= 0) {
      mw[edge_map[e]] = -weights[e];
      offset += weights[e];
    } else {
      offset += std::min<Weight>(0, weights[e]);
    }
  }
  match_graph.set_weights(mw);
}

ExpandedDual build_expanded_dual(const SymmetricIsing& ising,
                                 const PlanarEmbedding& embedding) {
  if (ising.num_nodes() != embedding.num_vertices()) {
    throw DimensionError("model has " + std::to_string(ising.num_nodes()) +
                         " nodes, embedding has " +
                         std::to_string(embedding.num_vertices()));
  }
  ExpandedDual dual = build_topology(embedding);
  dual.reweight(integer_weights(ising, dual));
  return dual;
}

GroundState decode_ground_state(const ExpandedDual& dual,
                                const Matching& matching) {
  const int n = dual.num_nodes;
  std::vector<std::vector<std::pair<NodeId, char>>> adj(n);
  for (std::size_t e = 0; e < dual.edges.size(); ++e) {
    bool cut;
    if (dual.edge_map[e] >= 0) {
      const int port = dual.match_graph.edges()[dual.edge_map[e]].u;
      cut = matching.matched_edge[port] != dual.edge_map[e];
    } else {
      cut = dual.weights[e] < 0;
    }
    const auto [a, b] = dual.edges[e];
    adj[a].emplace_back(b, cut);
    adj[b].emplace_back(a, cut);
  }

  GroundState gs;
  gs.labels.assign(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack;
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    stack.push_back(root);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (const auto& [v, cut] : adj[u]) {
        const Label want = static_cast<Label>(gs.labels[u] ^ (cut ? 1 : 0));
        if (!seen[v]) {
          seen[v] = 1;
          gs.labels[v] = want;
          stack.push_back(v);
        } else if (gs.labels[v] != want) {
          throw std::logic_error("matching does not decode to a cut");
        }
      }
    }
  }
  for (std::size_t e = 0; e < dual.edges.size(); ++e) {
    const auto [a, b] = dual.edges[e];
    if (gs.labels[a] != gs.labels[b]) gs.energy += dual.weights[e];
  }
  if (gs.energy != matching.total_weight + dual.offset) {
    throw std::logic_error("cut energy disagrees with matching weight");
  }
  return gs;
}

GroundState ground_state(const SymmetricIsing& ising,
                         const PlanarEmbedding& embedding) {
  const ExpandedDual dual = build_expanded_dual(ising, embedding);
  return decode_ground_state(dual,
                             min_weight_perfect_matching(dual.match_graph));
}

PlanarIsingSolver::PlanarIsingSolver(const PlanarEmbedding& embedding)
    : dual_(build_topology(embedding)) {}

GroundState PlanarIsingSolver::solve(std::span<const Weight> edge_weights) {
  dual_.reweight(edge_weights);
  Matching m;
  if (warm_) {
    std::vector<Weight> w;
    w.reserve(dual_.match_graph.edges().size());
    for (const MatchEdge& e : dual_.match_graph.edges()) w.push_back(e.w);
    m = matcher_.rewarm_solve(w);
  } else {
    m = matcher_.solve(dual_.match_graph);
    warm_ = true;
  }
  return decode_ground_state(dual_, m);
}

}  // namespace pcc
