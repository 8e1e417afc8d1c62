#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcc/cycle_cover.hpp"
#include "pcc/io.hpp"

namespace pcc {

/// Random grid with theta_ij ~ U(-1, 1) and theta_i ~ U(-a, a), scaled to
/// integers by spec.scale.
///
/// Draws come from std::mt19937_64 seeded with spec.seed; each uniform is
/// (x >> 11) * 2^-53 for one 64-bit output x. Order: horizontal edges
/// row-major, vertical edges row-major, then unary terms row-major.
ModelFile generate_grid_instance(const InstanceSpec& spec);

void validate(const InstanceSpec& spec);

struct RunSummary {
  InstanceSpec spec;
  bool converged = false;  ///< final gap < 1
  int iterations = 0;
  double gap = 0.0;
  double wall_ms = 0.0;
  double best_upper = 0.0;
  double best_lower = 0.0;
  std::string error;  ///< non-empty when the run failed
};

struct RunPaths {
  std::optional<std::filesystem::path> trace;
  std::optional<std::filesystem::path> summary;
  bool trace_timing = false;
};

/// Solves one model. The summary row is appended to `paths.summary`,
/// writing the header first if the file is new or empty.
RunSummary run_model(const ModelFile& file, const OptimizeOptions& options,
                     const RunPaths& paths = {});

RunSummary run(const InstanceSpec& spec, const OptimizeOptions& options,
               const RunPaths& paths = {});

struct BatchAggregate {
  int rows = 0;
  int cols = 0;
  double a = 0.0;
  int scale = 0;
  int runs = 0;
  int converged = 0;
  int failed = 0;
  double converged_fraction = 0.0;
  /// Over converged runs only; NaN when none converged.
  double geomean_wall_ms = 0.0;
};

struct BatchResult {
  std::vector<RunSummary> runs;  ///< same order as the input specs
  std::vector<BatchAggregate> aggregates;
};

/// Runs every spec on up to `jobs` threads. A failing run is recorded in
/// its summary and does not stop the others.
BatchResult batch(const std::vector<InstanceSpec>& specs,
                  const OptimizeOptions& options, int jobs);

/// Groups by (rows, cols, a, scale) in order of first appearance.
std::vector<BatchAggregate> aggregate(std::span<const RunSummary> runs);

double geometric_mean(std::span<const double> values);

std::string results_row(const RunSummary& s);
void write_results_csv(std::ostream& out, std::span<const RunSummary> runs);
void write_aggregates_csv(std::ostream& out,
                          std::span<const BatchAggregate> aggregates);

struct BatchSpec {
  std::vector<InstanceSpec> instances;
  OptimizeOptions options;
};

/// {"max_iters": 2000, "tol": 1.0,
///  "instances": [{"rows": 16, "cols": 16, "a": 3.2, "scale": 500,
///                 "seeds": [1, 2]} or {..., "seed": 1, "count": 10}]}
BatchSpec parse_batch_spec(const std::string& text);

}  // namespace pcc
