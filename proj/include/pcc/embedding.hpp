#pragma once

#include <utility>
#include <vector>

#include "pcc/model.hpp"

namespace pcc {

/// Combinatorial planar embedding given as a rotation system: for each
/// vertex, its neighbors in counterclockwise order.
///
/// Each directed edge (dart) u->v has an id; darts leaving u are numbered
/// consecutively in rotation order, so dart(u, k) goes to rotation(u)[k].
class PlanarEmbedding {
 public:
  PlanarEmbedding() = default;
  explicit PlanarEmbedding(std::vector<std::vector<NodeId>> rotations);

  int num_vertices() const { return static_cast<int>(rotations_.size()); }
  int num_edges() const { return static_cast<int>(heads_.size()) / 2; }
  int num_darts() const { return static_cast<int>(heads_.size()); }
  int degree(NodeId v) const { return static_cast<int>(rotations_[v].size()); }

  const std::vector<std::vector<NodeId>>& rotations() const {
    return rotations_;
  }
  const std::vector<NodeId>& rotation(NodeId v) const { return rotations_[v]; }

  int first_dart(NodeId v) const { return offsets_[v]; }
  NodeId tail(int dart) const { return tails_[dart]; }
  NodeId head(int dart) const { return heads_[dart]; }
  int twin(int dart) const { return twins_[dart]; }

  /// Dart that follows `dart` around its face: arriving at v from u, leave
  /// towards the neighbor preceding u in the rotation of v.
  int next_in_face(int dart) const;

  /// Undirected edges as (i, j) with i < j, sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  /// Connected-component id per vertex, numbered by smallest member.
  std::vector<int> components() const;

 private:
  std::vector<std::vector<NodeId>> rotations_;
  std::vector<int> offsets_;
  std::vector<NodeId> tails_;
  std::vector<NodeId> heads_;
  std::vector<int> twins_;
};

struct DirectedEdge {
  NodeId from = 0;
  NodeId to = 0;

  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

struct Face {
  int id = 0;
  std::vector<DirectedEdge> boundary;
  /// Boundary vertices in first-visit order, without repeats.
  std::vector<NodeId> boundary_vertices;
};

/// Faces of every connected component that has at least one edge. Each
/// component keeps its own outer face; isolated vertices contribute none.
struct FaceSet {
  std::vector<Face> faces;
  std::vector<int> dart_face;    ///< face id of every dart
  std::vector<std::vector<int>> face_darts;  ///< dart ids in boundary order
  std::vector<int> face_component;
  std::vector<int> component;    ///< component id per vertex
};

/// Traces faces component by component and checks Euler's formula on each.
/// Throws NotPlanarEmbedding when a component violates V - E + F = 2.
FaceSet trace_faces(const PlanarEmbedding& embedding);

/// Faces of a connected embedding. Throws NotPlanarEmbedding on an Euler
/// violation or when the graph is disconnected.
std::vector<Face> faces(const PlanarEmbedding& embedding);

bool euler_check(long num_vertices, long num_edges, long num_faces);

struct EmbeddedGraph {
  std::vector<std::pair<NodeId, NodeId>> edges;
  PlanarEmbedding embedding;
};

/// rows x cols 4-connected grid, vertex (r, c) has id r * cols + c. Edges
/// are listed horizontal row-major first, then vertical row-major.
EmbeddedGraph grid(int rows, int cols);

/// Simple cycle 0 - 1 - ... - (k-1) - 0, k >= 3.
EmbeddedGraph cycle(int k);

}  // namespace pcc
