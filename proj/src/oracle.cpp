#include "pcc/oracle.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <string>

#include "pcc/error.hpp"

namespace pcc {
namespace {

// Enumerates assignments of nodes [first, n) in lexicographic order, nodes
// before `first` fixed at 0. Strict improvement keeps the first optimum,
// which is the lexicographically smallest.
template <typename Model>
OracleResult enumerate(const Model& model, int first) {
  const int n = model.num_nodes();
  const int free = n - first;
  OracleResult best;
  best.energy = std::numeric_limits<double>::infinity();
  LabelAssignment x(n, 0);
  const unsigned long long count = 1ULL << free;
  for (unsigned long long code = 0; code < count; ++code) {
    for (int b = 0; b < free; ++b) {
      x[n - 1 - b] = static_cast<Label>((code >> b) & 1ULL);
    }
    const double e = energy(model, x);
    if (e < best.energy) {
      best.energy = e;
      best.assignment = x;
    }
  }
  return best;
}

}  // namespace

OracleResult brute_force_map(const BinaryMRF& model) {
  if (model.num_nodes() > kOracleMaxNodes) {
    throw TooLarge("oracle refuses models above " +
                   std::to_string(kOracleMaxNodes) + " nodes");
  }
  return enumerate(model, 0);
}

OracleResult brute_force_ground_state(const SymmetricIsing& model) {
  if (model.num_nodes() > kOracleMaxNodes + 1) {
    throw TooLarge("oracle refuses models above " +
                   std::to_string(kOracleMaxNodes + 1) + " nodes");
  }
  return enumerate(model, std::min(1, model.num_nodes()));
}

Matching brute_force_mwpm(const WeightedMatchGraph& graph) {
  const int n = graph.num_vertices();
  if (n > kOracleMaxMatchVertices) {
    throw TooLarge("matching oracle refuses graphs above " +
                   std::to_string(kOracleMaxMatchVertices) + " vertices");
  }
  if (n % 2 != 0) throw NoPerfectMatching("odd number of vertices");

  std::vector<std::vector<int>> incident(n);
  for (int k = 0; k < static_cast<int>(graph.edges().size()); ++k) {
    incident[graph.edges()[k].u].push_back(k);
    incident[graph.edges()[k].v].push_back(k);
  }
  std::vector<int> chosen;
  std::vector<char> covered(n, 0);
  std::optional<Weight> best_weight;
  std::vector<int> best_edges;

  // Match the lowest uncovered vertex with each available neighbor.
  auto recurse = [&](auto&& self, Weight acc) -> void {
    int v = 0;
    while (v < n && covered[v]) ++v;
    if (v == n) {
      if (!best_weight || acc < *best_weight) {
        best_weight = acc;
        best_edges = chosen;
      }
      return;
    }
    covered[v] = 1;
    for (int k : incident[v]) {
      const MatchEdge& e = graph.edges()[k];
      const int u = e.u == v ? e.v : e.u;
      if (covered[u]) continue;
      covered[u] = 1;
      chosen.push_back(k);
      self(self, acc + e.w);
      chosen.pop_back();
      covered[u] = 0;
    }
    covered[v] = 0;
  };
  recurse(recurse, 0);

  if (!best_weight) throw NoPerfectMatching("graph has no perfect matching");
  Matching out;
  out.total_weight = *best_weight;
  out.matched_edge.assign(n, -1);
  for (int k : best_edges) {
    const MatchEdge& e = graph.edges()[k];
    out.pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    out.matched_edge[e.u] = k;
    out.matched_edge[e.v] = k;
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

}  // namespace pcc
