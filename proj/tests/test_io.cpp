#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pcc/error.hpp"
#include "pcc/io.hpp"

using namespace pcc;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("pcc_test_io_" + name);
}

}  // namespace

TEST_CASE("model JSON round trip") {
  ModelFile file{BinaryMRF(4, {{0, 1, 3}, {1, 2, -2.5}, {2, 3, 7}, {0, 3, -1}},
                           {1, 0, -4, 2}, 5),
                 std::nullopt, std::make_pair(2, 2),
                 InstanceSpec{2, 2, 0.8, 42, 500}};
  const std::string text = model_to_json(file);
  const ModelFile back = parse_model_json(text);
  CHECK(back.model.num_nodes() == 4);
  CHECK(back.model.edges() == file.model.edges());
  CHECK(back.model.unary() == file.model.unary());
  CHECK(back.model.constant() == 5);
  REQUIRE(back.grid);
  CHECK(back.grid->first == 2);
  REQUIRE(back.instance);
  CHECK(back.instance->seed == 42);
  CHECK(back.instance->a == 0.8);
  CHECK(model_to_json(back) == text);
  // Integral weights are written without a fractional part.
  CHECK(text.find("[0,1,3]") != std::string::npos);
  CHECK(text.find("-2.5") != std::string::npos);
}

TEST_CASE("explicit embedding round trip") {
  const EmbeddedGraph g = cycle(5);
  ModelFile file{BinaryMRF(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1},
                               {0, 4, 1}},
                           std::vector<double>(5, 0.0)),
                 g.embedding, std::nullopt, std::nullopt};
  const ModelFile back = parse_model_json(model_to_json(file));
  REQUIRE(back.embedding);
  CHECK(back.embedding->rotations() == g.embedding.rotations());
  CHECK(back.resolve_embedding().rotations() == g.embedding.rotations());
}

TEST_CASE("grid dimensions rebuild the embedding") {
  const ModelFile file = parse_model_json(
      R"({"num_nodes":4,"edges":[[0,1,1],[0,2,1],[1,3,1],[2,3,1]],)"
      R"("unary":[0,0,0,0],"grid":{"rows":2,"cols":2}})");
  CHECK(file.model.constant() == 0);
  CHECK(file.resolve_embedding().rotations() == grid(2, 2).embedding.rotations());
}

TEST_CASE("missing embedding and grid is rejected on use") {
  const ModelFile file =
      parse_model_json(R"({"num_nodes":2,"edges":[[0,1,1]],"unary":[0,0]})");
  CHECK_THROWS_AS(file.resolve_embedding(), InvalidModel);
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(parse_model_json("{"), InvalidModel);
  CHECK_THROWS_AS(parse_model_json(R"({"edges":[],"unary":[]})"), InvalidModel);
  CHECK_THROWS_AS(
      parse_model_json(R"({"num_nodes":2,"edges":[[0,1]],"unary":[0,0]})"),
      InvalidModel);
  CHECK_THROWS_AS(
      parse_model_json(R"({"num_nodes":2,"edges":[[0,1,"x"]],"unary":[0,0]})"),
      InvalidModel);
  CHECK_THROWS_AS(
      parse_model_json(R"({"num_nodes":2,"edges":[[0,0,1]],"unary":[0,0]})"),
      InvalidModel);
  CHECK_THROWS_AS(
      parse_model_json(R"({"num_nodes":2,"edges":[],"unary":[0]})"),
      DimensionError);
}

TEST_CASE("file errors name the path") {
  const auto missing = temp_path("does_not_exist.json");
  std::filesystem::remove(missing);
  try {
    read_model_file(missing);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(missing.string()) != std::string::npos);
  }
  CHECK_THROWS_AS(write_text_file("/nonexistent_dir/x.csv", "a"), IoError);

  const auto bad = temp_path("bad.json");
  write_text_file(bad, "not json");
  try {
    read_model_file(bad);
    FAIL("expected InvalidModel");
  } catch (const InvalidModel& e) {
    CHECK(std::string(e.what()).find(bad.string()) != std::string::npos);
  }
  std::filesystem::remove(bad);
}

TEST_CASE("model file round trip on disk") {
  const auto path = temp_path("model.json");
  ModelFile file{BinaryMRF(3, {{0, 1, -4}, {1, 2, 9}}, {1, 2, 3}),
                 std::nullopt, std::make_pair(1, 3), std::nullopt};
  write_model_file(path, file);
  const ModelFile back = read_model_file(path);
  CHECK(back.model.edges() == file.model.edges());
  std::filesystem::remove(path);
}

TEST_CASE("trace CSV") {
  BoundTrace trace{{0, -10.5, 3, 3, 0.25, 4, 12.7},
                   {1, -2, 1, 1, 0.125, 2, 20.1}};
  std::ostringstream plain, timed;
  write_trace_csv(plain, trace, false);
  write_trace_csv(timed, trace, true);
  CHECK(plain.str() ==
        "iter,lower_bound,upper_bound,best_upper,step_size,subgrad_norm2,"
        "elapsed_ms\n"
        "0,-10.500000,3.000000,3.000000,0.25,4,0.000\n"
        "1,-2.000000,1.000000,1.000000,0.125,2,0.000\n");
  CHECK(timed.str().find("12.700") != std::string::npos);
}

TEST_CASE("format_number") {
  CHECK(format_number(-4280) == "-4280");
  CHECK(format_number(0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(0.8) == "0.8");
  CHECK(format_number(3.2) == "3.2");
  CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
  CHECK(format_number(1e20) == "1e+20");
}
