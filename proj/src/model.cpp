#include "pcc/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcc/error.hpp"

namespace pcc {
namespace {

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw InvalidModel(std::string("non-finite ") + what);
  }
}

// Normalizes to i < j, validates ids and merges parallel edges.
std::vector<Edge> canonical_edges(int num_nodes, std::vector<Edge> edges) {
  for (Edge& e : edges) {
    if (e.i == e.j) {
      throw InvalidModel("self-loop on node " + std::to_string(e.i));
    }
    if (e.i < 0 || e.j < 0 || e.i >= num_nodes || e.j >= num_nodes) {
      throw InvalidModel("edge (" + std::to_string(e.i) + ", " +
                         std::to_string(e.j) + ") references a missing node");
    }
    check_finite(e.weight, "edge weight");
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  std::vector<Edge> merged;
  merged.reserve(edges.size());
  for (const Edge& e : edges) {
    if (!merged.empty() && merged.back().i == e.i && merged.back().j == e.j) {
      merged.back().weight += e.weight;
    } else {
      merged.push_back(e);
    }
  }
  return merged;
}

bool integral(double v) { return std::nearbyint(v) == v; }

double scale_one(double v, double factor) {
  const double scaled = std::round(v * factor);
  if (!std::isfinite(scaled) || std::abs(scaled) > kMaxExactInteger) {
    throw RangeError("scaled weight " + std::to_string(v * factor) +
                     " exceeds the exact integer range");
  }
  return scaled == 0.0 ? 0.0 : scaled;
}

}  // namespace

BinaryMRF::BinaryMRF(int num_nodes, std::vector<Edge> edges,
                     std::vector<double> unary, double constant)
    : num_nodes_(num_nodes), unary_(std::move(unary)), constant_(constant) {
  if (num_nodes < 0) throw InvalidModel("negative node count");
  if (static_cast<int>(unary_.size()) != num_nodes) {
    throw DimensionError("unary vector has " + std::to_string(unary_.size()) +
                       " entries for " + std::to_string(num_nodes) + " nodes");
  }
  for (double u : unary_) check_finite(u, "unary weight");
  check_finite(constant_, "constant");
  edges_ = canonical_edges(num_nodes, std::move(edges));
}

bool BinaryMRF::is_integral() const {
  if (!integral(constant_)) return false;
  for (double u : unary_) {
    if (!integral(u)) return false;
  }
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return integral(e.weight); });
}

SymmetricIsing::SymmetricIsing(int num_nodes, std::vector<Edge> edges)
    : num_nodes_(num_nodes) {
  if (num_nodes < 0) throw InvalidModel("negative node count");
  edges_ = canonical_edges(num_nodes, std::move(edges));
}

double energy(const BinaryMRF& model, std::span<const Label> x) {
  if (static_cast<int>(x.size()) != model.num_nodes()) {
    throw DimensionError("assignment has " + std::to_string(x.size()) +
                         " labels for a model with " +
                         std::to_string(model.num_nodes()) + " nodes");
  }
  double e = model.constant();
  for (const Edge& edge : model.edges()) {
    if (x[edge.i] != x[edge.j]) e += edge.weight;
  }
  for (int i = 0; i < model.num_nodes(); ++i) {
    if (x[i] != 0) e += model.unary()[i];
  }
  return e;
}

double energy(const SymmetricIsing& model, std::span<const Label> x) {
  if (static_cast<int>(x.size()) != model.num_nodes()) {
    throw DimensionError("assignment has " + std::to_string(x.size()) +
                         " labels for a model with " +
                         std::to_string(model.num_nodes()) + " nodes");
  }
  double e = 0.0;
  for (const Edge& edge : model.edges()) {
    if (x[edge.i] != x[edge.j]) e += edge.weight;
  }
  return e;
}

BinaryMRF reparameterize(std::span<const PairwisePotentialTable> tables,
                         int node_count) {
  std::vector<Edge> edges;
  std::vector<double> unary(std::max(node_count, 0), 0.0);
  double constant = 0.0;
  for (const PairwisePotentialTable& t : tables) {
    if (t.i == t.j || t.i < 0 || t.j < 0 || t.i >= node_count ||
        t.j >= node_count) {
      throw InvalidModel("potential table references invalid pair (" +
                         std::to_string(t.i) + ", " + std::to_string(t.j) +
                         ")");
    }
    for (const auto& row : t.entries) {
      for (double v : row) check_finite(v, "table entry");
    }
    const double p00 = t.entries[0][0];
    const double p01 = t.entries[0][1];
    const double p10 = t.entries[1][0];
    const double p11 = t.entries[1][1];
    edges.push_back({t.i, t.j, (p01 + p10 - p00 - p11) / 2.0});
    unary[t.i] += (p11 - p00 + p10 - p01) / 2.0;
    unary[t.j] += (p11 - p00 - p10 + p01) / 2.0;
    constant += p00;
  }
  return BinaryMRF(node_count, std::move(edges), std::move(unary), constant);
}

SymmetricIsing symmetrize(const BinaryMRF& model) {
  std::vector<Edge> edges;
  edges.reserve(model.edges().size() + model.unary().size());
  for (int i = 0; i < model.num_nodes(); ++i) {
    if (model.unary()[i] != 0.0) edges.push_back({0, i + 1, model.unary()[i]});
  }
  for (const Edge& e : model.edges()) {
    edges.push_back({e.i + 1, e.j + 1, e.weight});
  }
  return SymmetricIsing(model.num_nodes() + 1, std::move(edges));
}

LabelAssignment complement(std::span<const Label> x) {
  LabelAssignment out(x.size());
  std::transform(x.begin(), x.end(), out.begin(),
                 [](Label l) { return static_cast<Label>(l == 0 ? 1 : 0); });
  return out;
}

BinaryMRF scale_to_integer(const BinaryMRF& model, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw RangeError("scale factor must be positive");
  }
  std::vector<Edge> edges = model.edges();
  for (Edge& e : edges) e.weight = scale_one(e.weight, factor);
  std::vector<double> unary = model.unary();
  for (double& u : unary) u = scale_one(u, factor);
  return BinaryMRF(model.num_nodes(), std::move(edges), std::move(unary),
                   scale_one(model.constant(), factor));
}

}  // namespace pcc
