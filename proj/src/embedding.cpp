#include "pcc/embedding.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "pcc/error.hpp"

namespace pcc {

PlanarEmbedding::PlanarEmbedding(std::vector<std::vector<NodeId>> rotations)
    : rotations_(std::move(rotations)) {
  const int n = num_vertices();
  offsets_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) {
    offsets_[v + 1] = offsets_[v] + static_cast<int>(rotations_[v].size());
  }
  const int darts = offsets_[n];
  if (darts % 2 != 0) {
    throw NotPlanarEmbedding("rotation system is not symmetric");
  }
  tails_.resize(darts);
  heads_.resize(darts);
  twins_.assign(darts, -1);

  // (u, v) -> dart id, for twin lookup.
  std::unordered_map<long long, int> index;
  index.reserve(darts * 2);
  auto key = [n](NodeId u, NodeId v) {
    return static_cast<long long>(u) * n + v;
  };
  for (int u = 0; u < n; ++u) {
    for (int k = 0; k < degree(u); ++k) {
      const NodeId v = rotations_[u][k];
      if (v < 0 || v >= n) {
        throw NotPlanarEmbedding("rotation of vertex " + std::to_string(u) +
                                 " names missing vertex " + std::to_string(v));
      }
      if (v == u) {
        throw NotPlanarEmbedding("vertex " + std::to_string(u) +
                                 " appears in its own rotation");
      }
      const int d = offsets_[u] + k;
      tails_[d] = u;
      heads_[d] = v;
      if (!index.emplace(key(u, v), d).second) {
        throw NotPlanarEmbedding("vertex " + std::to_string(v) +
                                 " repeated in rotation of " +
                                 std::to_string(u));
      }
    }
  }
  for (int d = 0; d < darts; ++d) {
    auto it = index.find(key(heads_[d], tails_[d]));
    if (it == index.end()) {
      throw NotPlanarEmbedding("edge " + std::to_string(tails_[d]) + "-" +
                               std::to_string(heads_[d]) +
                               " missing from rotation of " +
                               std::to_string(heads_[d]));
    }
    twins_[d] = it->second;
  }
}

int PlanarEmbedding::next_in_face(int dart) const {
  const int back = twins_[dart];  // v -> u
  const NodeId v = heads_[dart];
  const int k = back - offsets_[v];
  const int deg = degree(v);
  return offsets_[v] + (k + deg - 1) % deg;
}

std::vector<std::pair<NodeId, NodeId>> PlanarEmbedding::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(num_edges());
  for (int d = 0; d < num_darts(); ++d) {
    if (tails_[d] < heads_[d]) out.emplace_back(tails_[d], heads_[d]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> PlanarEmbedding::components() const {
  const int n = num_vertices();
  std::vector<int> comp(n, -1);
  std::vector<NodeId> stack;
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : rotations_[u]) {
        if (comp[v] < 0) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

bool euler_check(long num_vertices, long num_edges, long num_faces) {
  return num_vertices - num_edges + num_faces == 2;
}

FaceSet trace_faces(const PlanarEmbedding& embedding) {
  FaceSet out;
  out.component = embedding.components();
  out.dart_face.assign(embedding.num_darts(), -1);

  for (int start = 0; start < embedding.num_darts(); ++start) {
    if (out.dart_face[start] >= 0) continue;
    Face face;
    face.id = static_cast<int>(out.faces.size());
    std::vector<int> darts;
    int d = start;
    do {
      out.dart_face[d] = face.id;
      darts.push_back(d);
      face.boundary.push_back({embedding.tail(d), embedding.head(d)});
      d = embedding.next_in_face(d);
    } while (d != start);
    for (const DirectedEdge& e : face.boundary) {
      if (std::find(face.boundary_vertices.begin(),
                    face.boundary_vertices.end(),
                    e.from) == face.boundary_vertices.end()) {
        face.boundary_vertices.push_back(e.from);
      }
    }
    out.face_component.push_back(out.component[embedding.tail(start)]);
    out.faces.push_back(std::move(face));
    out.face_darts.push_back(std::move(darts));
  }

  const int ncomp = out.component.empty()
                        ? 0
                        : *std::max_element(out.component.begin(),
                                            out.component.end()) + 1;
  std::vector<long> verts(ncomp, 0), darts(ncomp, 0), nfaces(ncomp, 0);
  for (int v = 0; v < embedding.num_vertices(); ++v) {
    ++verts[out.component[v]];
    darts[out.component[v]] += embedding.degree(v);
  }
  for (int c : out.face_component) ++nfaces[c];
  for (int c = 0; c < ncomp; ++c) {
    if (darts[c] == 0) continue;
    if (!euler_check(verts[c], darts[c] / 2, nfaces[c])) {
      throw NotPlanarEmbedding(
          "Euler check failed: V=" + std::to_string(verts[c]) +
          " E=" + std::to_string(darts[c] / 2) +
          " F=" + std::to_string(nfaces[c]));
    }
  }
  return out;
}

std::vector<Face> faces(const PlanarEmbedding& embedding) {
  FaceSet set = trace_faces(embedding);
  const auto& comp = set.component;
  if (std::any_of(comp.begin(), comp.end(), [](int c) { return c != 0; })) {
    throw NotPlanarEmbedding("graph is disconnected");
  }
  if (embedding.num_vertices() == 1) {
    // A lone vertex bounds the single face of the sphere.
    set.faces.push_back(Face{0, {}, {0}});
  }
  return std::move(set.faces);
}

EmbeddedGraph grid(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw InvalidModel("grid dimensions must be positive");
  }
  auto id = [cols](int r, int c) { return static_cast<NodeId>(r * cols + c); };
  EmbeddedGraph g;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) g.edges.emplace_back(id(r, c), id(r, c + 1));
  }
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c < cols; ++c) g.edges.emplace_back(id(r, c), id(r + 1, c));
  }
  // Row 0 is drawn on top, so counterclockwise is up, left, down, right.
  std::vector<std::vector<NodeId>> rot(rows * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      auto& nb = rot[id(r, c)];
      if (r > 0) nb.push_back(id(r - 1, c));
      if (c > 0) nb.push_back(id(r, c - 1));
      if (r + 1 < rows) nb.push_back(id(r + 1, c));
      if (c + 1 < cols) nb.push_back(id(r, c + 1));
    }
  }
  g.embedding = PlanarEmbedding(std::move(rot));
  return g;
}

EmbeddedGraph cycle(int k) {
  if (k < 3) throw InvalidModel("cycle length must be at least 3");
  EmbeddedGraph g;
  std::vector<std::vector<NodeId>> rot(k);
  for (int v = 0; v < k; ++v) {
    const NodeId next = (v + 1) % k;
    g.edges.emplace_back(std::min<NodeId>(v, next), std::max<NodeId>(v, next));
    rot[v] = {next, static_cast<NodeId>((v + k - 1) % k)};
  }
  g.embedding = PlanarEmbedding(std::move(rot));
  return g;
}

}  // namespace pcc
