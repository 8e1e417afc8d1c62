#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace pcc {

using NodeId = std::int32_t;
using Label = std::uint8_t;

/// Undirected weighted edge, stored with i < j.
struct Edge {
  NodeId i = 0;
  NodeId j = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Labels in {0, 1}, one per node.
using LabelAssignment = std::vector<Label>;

/// Binary pairwise MRF in disagreement-cost form:
///
///   E(x) = sum_{(i,j)} theta_ij [x_i != x_j] + sum_i theta_i [x_i != 0] + c
///
/// Construction normalizes edges to i < j, merges parallel edges by summing
/// their weights, and rejects self-loops, out-of-range ids and non-finite
/// weights. Edges are kept sorted by (i, j).
class BinaryMRF {
 public:
  BinaryMRF() = default;
  BinaryMRF(int num_nodes, std::vector<Edge> edges, std::vector<double> unary,
            double constant = 0.0);

  int num_nodes() const { return num_nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& unary() const { return unary_; }
  double constant() const { return constant_; }

  /// True when every weight and the constant are integers.
  bool is_integral() const;

 private:
  int num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> unary_;
  double constant_ = 0.0;
};

/// Unary-free Ising model. In the output of symmetrize(), node 0 is the
/// auxiliary node that carries the former unary terms.
class SymmetricIsing {
 public:
  SymmetricIsing() = default;
  SymmetricIsing(int num_nodes, std::vector<Edge> edges);

  int num_nodes() const { return num_nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  int num_nodes_ = 0;
  std::vector<Edge> edges_;
};

/// phi(x_i, x_j) indexed as entries[x_i][x_j].
struct PairwisePotentialTable {
  NodeId i = 0;
  NodeId j = 0;
  std::array<std::array<double, 2>, 2> entries{};
};

double energy(const BinaryMRF& model, std::span<const Label> x);
double energy(const SymmetricIsing& model, std::span<const Label> x);

BinaryMRF reparameterize(std::span<const PairwisePotentialTable> tables,
                         int node_count);

SymmetricIsing symmetrize(const BinaryMRF& model);

LabelAssignment complement(std::span<const Label> x);

/// Multiplies every weight by `factor` and rounds half away from zero.
BinaryMRF scale_to_integer(const BinaryMRF& model, double factor);

/// Largest magnitude that scale_to_integer accepts (exact in a double).
inline constexpr double kMaxExactInteger = 9007199254740992.0;  // 2^53

}  // namespace pcc
