#include "pcc/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pcc/error.hpp"

namespace pcc {
namespace {

using nlohmann::json;

json number(double v) {
  if (std::nearbyint(v) == v && std::abs(v) < 9.0e15) {
    return json(static_cast<std::int64_t>(v));
  }
  return json(v);
}

double as_double(const json& j, const char* what) {
  if (!j.is_number()) {
    throw InvalidModel(std::string("expected a number for ") + what);
  }
  return j.get<double>();
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) {
    throw InvalidModel(std::string("expected an integer for ") + what);
  }
  return j.get<int>();
}

InstanceSpec parse_instance(const json& j) {
  InstanceSpec s;
  s.rows = as_int(j.at("rows"), "instance.rows");
  s.cols = as_int(j.at("cols"), "instance.cols");
  s.a = as_double(j.at("a"), "instance.a");
  s.seed = j.at("seed").get<std::uint64_t>();
  s.scale = j.contains("scale") ? as_int(j.at("scale"), "instance.scale") : 500;
  return s;
}

}  // namespace

PlanarEmbedding ModelFile::resolve_embedding() const {
  if (embedding) return *embedding;
  if (grid) return pcc::grid(grid->first, grid->second).embedding;
  throw InvalidModel("model has neither an embedding nor grid dimensions");
}

ModelFile parse_model_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidModel(std::string("malformed model JSON: ") + e.what());
  }
  try {
    const int n = as_int(doc.at("num_nodes"), "num_nodes");
    std::vector<Edge> edges;
    for (const json& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 3) {
        throw InvalidModel("edges must be [i, j, theta] triples");
      }
      edges.push_back({as_int(e[0], "edge endpoint"),
                       as_int(e[1], "edge endpoint"),
                       as_double(e[2], "edge weight")});
    }
    std::vector<double> unary;
    for (const json& u : doc.at("unary")) unary.push_back(as_double(u, "unary"));
    const double constant =
        doc.contains("constant") ? as_double(doc["constant"], "constant") : 0.0;

    ModelFile file{BinaryMRF(n, std::move(edges), std::move(unary), constant),
                   std::nullopt, std::nullopt, std::nullopt};
    if (doc.contains("embedding")) {
      auto rot = doc["embedding"].at("rotations")
                     .get<std::vector<std::vector<NodeId>>>();
      file.embedding = PlanarEmbedding(std::move(rot));
    }
    if (doc.contains("grid")) {
      file.grid = std::make_pair(as_int(doc["grid"].at("rows"), "grid.rows"),
                                 as_int(doc["grid"].at("cols"), "grid.cols"));
    }
    if (doc.contains("instance")) file.instance = parse_instance(doc["instance"]);
    return file;
  } catch (const json::exception& e) {
    throw InvalidModel(std::string("invalid model document: ") + e.what());
  }
}

std::string model_to_json(const ModelFile& file) {
  const BinaryMRF& m = file.model;
  json doc;
  doc["num_nodes"] = m.num_nodes();
  json edges = json::array();
  for (const Edge& e : m.edges()) {
    edges.push_back(json::array({e.i, e.j, number(e.weight)}));
  }
  doc["edges"] = std::move(edges);
  json unary = json::array();
  for (double u : m.unary()) unary.push_back(number(u));
  doc["unary"] = std::move(unary);
  doc["constant"] = number(m.constant());
  if (file.embedding) {
    doc["embedding"]["rotations"] = file.embedding->rotations();
  }
  if (file.grid) {
    doc["grid"] = {{"rows", file.grid->first}, {"cols", file.grid->second}};
  }
  if (file.instance) {
    const InstanceSpec& s = *file.instance;
    doc["instance"] = {{"rows", s.rows}, {"cols", s.cols}, {"a", s.a},
                       {"seed", s.seed}, {"scale", s.scale}};
  }
  return doc.dump() + "\n";
}

ModelFile read_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model_json(buf.str());
  } catch (const Error& e) {
    throw InvalidModel(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

void write_model_file(const std::filesystem::path& path,
                      const ModelFile& file) {
  write_text_file(path, model_to_json(file));
}

std::string format_number(double v) {
  char buf[40];
  if (std::nearbyint(v) == v && std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v == 0.0 ? 0.0 : v);
    return buf;
  }
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

void write_trace_csv(std::ostream& out, const BoundTrace& trace,
                     bool include_timing) {
  out << kTraceHeader << '\n';
  char buf[256];
  for (const TraceRecord& r : trace) {
    std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.6f,%.9g,%.9g,%.3f\n",
                  r.iter, r.lower_bound, r.upper_bound, r.best_upper,
                  r.step_size, r.subgrad_norm2,
                  include_timing ? r.elapsed_ms : 0.0);
    out << buf;
  }
}

}  // namespace pcc
