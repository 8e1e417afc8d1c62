#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "pcc/cycle_cover.hpp"
#include "pcc/embedding.hpp"
#include "pcc/model.hpp"

namespace pcc {

struct InstanceSpec {
  int rows = 1;
  int cols = 1;
  double a = 0.0;
  std::uint64_t seed = 0;
  int scale = 500;
};

/// Contents of a model JSON document:
///
///   {"num_nodes": N, "edges": [[i, j, theta], ...], "unary": [...],
///    "constant": c, "embedding": {"rotations": [[...], ...]},
///    "grid": {"rows": R, "cols": C},
///    "instance": {"rows": R, "cols": C, "a": A, "seed": S, "scale": K}}
///
/// `constant`, `embedding`, `grid` and `instance` are optional. When the
/// embedding is absent but `grid` is present, the canonical grid embedding
/// is rebuilt.
struct ModelFile {
  BinaryMRF model;
  std::optional<PlanarEmbedding> embedding;
  std::optional<std::pair<int, int>> grid;
  std::optional<InstanceSpec> instance;

  /// The stored embedding, or the grid one. Throws if neither is present.
  PlanarEmbedding resolve_embedding() const;
};

ModelFile parse_model_json(const std::string& text);
std::string model_to_json(const ModelFile& file);

ModelFile read_model_file(const std::filesystem::path& path);
void write_model_file(const std::filesystem::path& path, const ModelFile& file);

inline constexpr const char* kTraceHeader =
    "iter,lower_bound,upper_bound,best_upper,step_size,subgrad_norm2,"
    "elapsed_ms";

inline constexpr const char* kResultsHeader =
    "rows,cols,a,seed,converged,iters,gap,wall_ms";

/// One row per iteration. Without `include_timing` the elapsed_ms column
/// is written as 0 so that traces are byte-reproducible.
void write_trace_csv(std::ostream& out, const BoundTrace& trace,
                     bool include_timing);

/// Writes `content` to `path`, naming the path in any error.
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

/// Shortest decimal that reads back to the same double.
std::string format_number(double v);

}  // namespace pcc
