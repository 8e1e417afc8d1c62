#include <doctest.h>

#include <algorithm>

#include "pcc/embedding.hpp"
#include "pcc/error.hpp"

using namespace pcc;

namespace {

std::vector<std::size_t> face_lengths(const std::vector<Face>& fs) {
  std::vector<std::size_t> out;
  for (const Face& f : fs) out.push_back(f.boundary.size());
  std::sort(out.begin(), out.end());
  return out;
}

void check_partition(const PlanarEmbedding& emb, const std::vector<Face>& fs) {
  std::vector<int> seen(emb.num_darts(), 0);
  std::size_t total = 0;
  for (const Face& f : fs) {
    for (std::size_t k = 0; k < f.boundary.size(); ++k) {
      const DirectedEdge& a = f.boundary[k];
      const DirectedEdge& b = f.boundary[(k + 1) % f.boundary.size()];
      CHECK(a.to == b.from);
      const auto& rot = emb.rotation(a.from);
      const auto it = std::find(rot.begin(), rot.end(), a.to);
      REQUIRE(it != rot.end());
      ++seen[emb.first_dart(a.from) + static_cast<int>(it - rot.begin())];
    }
    total += f.boundary.size();
  }
  CHECK(total == static_cast<std::size_t>(emb.num_darts()));
  for (int s : seen) CHECK(s == 1);
}

}  // namespace

TEST_CASE("grid faces") {
  SUBCASE("2x2") {
    const EmbeddedGraph g = grid(2, 2);
    CHECK(g.edges.size() == 4);
    const auto fs = faces(g.embedding);
    CHECK(face_lengths(fs) == std::vector<std::size_t>{4, 4});
    check_partition(g.embedding, fs);
  }
  SUBCASE("3x3") {
    const EmbeddedGraph g = grid(3, 3);
    CHECK(g.edges.size() == 12);
    const auto fs = faces(g.embedding);
    CHECK(face_lengths(fs) == std::vector<std::size_t>{4, 4, 4, 4, 8});
    check_partition(g.embedding, fs);
    for (const Face& f : fs) {
      CHECK(f.boundary_vertices.size() == f.boundary.size());
    }
  }
  SUBCASE("1x2") {
    const EmbeddedGraph g = grid(1, 2);
    CHECK(g.edges.size() == 1);
    CHECK(faces(g.embedding).size() == 1);
  }
  SUBCASE("32x32") {
    const EmbeddedGraph g = grid(32, 32);
    CHECK(g.embedding.num_vertices() == 1024);
    CHECK(g.edges.size() == 1984);
    CHECK(faces(g.embedding).size() == 962);
  }
  SUBCASE("1x1") {
    const EmbeddedGraph g = grid(1, 1);
    CHECK(g.edges.empty());
    CHECK(faces(g.embedding).size() == 1);
  }
}

TEST_CASE("grid layout") {
  const EmbeddedGraph g = grid(2, 3);
  const std::vector<std::pair<NodeId, NodeId>> expected{
      {0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}};
  CHECK(g.edges == expected);
  // Up, left, down, right as present.
  CHECK(g.embedding.rotation(4) == std::vector<NodeId>{1, 3, 5});
  CHECK(g.embedding.rotation(0) == std::vector<NodeId>{3, 1});
  CHECK_THROWS_AS(grid(0, 3), InvalidModel);
}

TEST_CASE("cycle faces") {
  for (int k = 3; k <= 8; ++k) {
    const EmbeddedGraph c = cycle(k);
    const auto fs = faces(c.embedding);
    CHECK(face_lengths(fs) == std::vector<std::size_t>{static_cast<std::size_t>(k),
                                                        static_cast<std::size_t>(k)});
    check_partition(c.embedding, fs);
  }
  CHECK_THROWS_AS(cycle(2), InvalidModel);
}

TEST_CASE("faces are deterministic") {
  const EmbeddedGraph g = grid(4, 5);
  const auto a = faces(g.embedding);
  const auto b = faces(g.embedding);
  REQUIRE(a.size() == b.size());
  for (std::size_t f = 0; f < a.size(); ++f) {
    CHECK(a[f].id == b[f].id);
    CHECK(a[f].boundary == b[f].boundary);
  }
}

TEST_CASE("bridges repeat vertices on a face") {
  // Path 0 - 1 - 2: one face walking every edge twice.
  const PlanarEmbedding path({{1}, {0, 2}, {1}});
  const auto fs = faces(path);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].boundary.size() == 4);
  CHECK(fs[0].boundary_vertices.size() == 3);
  check_partition(path, fs);
}

TEST_CASE("euler check") {
  CHECK(euler_check(9, 12, 5));
  CHECK(euler_check(4, 4, 2));
  CHECK(euler_check(4, 6, 4));
  CHECK_FALSE(euler_check(4, 6, 3));
}

TEST_CASE("K4 embeds, K5 does not") {
  // K4 drawn with 3 around a centre vertex 3, counterclockwise.
  const PlanarEmbedding k4({{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {0, 1, 2}});
  CHECK(faces(k4).size() == 4);
  std::vector<std::vector<NodeId>> rot(5);
  for (int v = 0; v < 5; ++v) {
    for (int w = 0; w < 5; ++w) {
      if (w != v) rot[v].push_back(w);
    }
  }
  CHECK_THROWS_AS(faces(PlanarEmbedding(rot)), NotPlanarEmbedding);
  // A wrong rotation at one vertex of the grid breaks Euler's formula.
  auto grot = grid(3, 3).embedding.rotations();
  std::swap(grot[4][0], grot[4][1]);
  CHECK_THROWS_AS(faces(PlanarEmbedding(grot)), NotPlanarEmbedding);
}

TEST_CASE("invalid rotation systems") {
  using Rot = std::vector<std::vector<NodeId>>;
  CHECK_THROWS_AS(PlanarEmbedding(Rot{{1}, {}}), NotPlanarEmbedding);
  CHECK_THROWS_AS(PlanarEmbedding(Rot{{0}}), NotPlanarEmbedding);
  CHECK_THROWS_AS(PlanarEmbedding(Rot{{1, 1}, {0, 0}}), NotPlanarEmbedding);
  CHECK_THROWS_AS(PlanarEmbedding(Rot{{3}, {0}}), NotPlanarEmbedding);
}

TEST_CASE("disconnected graphs") {
  const PlanarEmbedding two({{1}, {0}, {3}, {2}});
  CHECK_THROWS_AS(faces(two), NotPlanarEmbedding);
  const FaceSet fs = trace_faces(two);
  CHECK(fs.faces.size() == 2);
  CHECK(fs.component == std::vector<int>{0, 0, 1, 1});
  CHECK(two.components() == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("dart bookkeeping") {
  const PlanarEmbedding& e = grid(3, 3).embedding;
  for (int d = 0; d < e.num_darts(); ++d) {
    CHECK(e.twin(e.twin(d)) == d);
    CHECK(e.tail(e.twin(d)) == e.head(d));
    CHECK(e.tail(e.next_in_face(d)) == e.head(d));
  }
}
