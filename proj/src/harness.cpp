#include "pcc/harness.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "pcc/error.hpp"

namespace pcc {
namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

void append_summary(const std::filesystem::path& path, const RunSummary& s) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) ||
                     std::filesystem::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot append to " + path.string());
  if (fresh) out << kResultsHeader << '\n';
  out << results_row(s) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

void validate(const InstanceSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1) {
    throw InvalidModel("grid dimensions must be at least 1x1");
  }
  if (!(spec.a >= 0.0) || !std::isfinite(spec.a)) {
    throw InvalidModel("unary magnitude a must be finite and >= 0");
  }
  if (spec.scale < 1) throw InvalidModel("scale must be >= 1");
}

ModelFile generate_grid_instance(const InstanceSpec& spec) {
  validate(spec);
  const int R = spec.rows, C = spec.cols;
  std::mt19937_64 rng(spec.seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(R) * (C - 1) +
                static_cast<std::size_t>(R - 1) * C);
  for (int r = 0; r < R; ++r) {
    for (int c = 0; c + 1 < C; ++c) {
      edges.push_back({r * C + c, r * C + c + 1, uniform(rng, -1.0, 1.0)});
    }
  }
  for (int r = 0; r + 1 < R; ++r) {
    for (int c = 0; c < C; ++c) {
      edges.push_back({r * C + c, (r + 1) * C + c, uniform(rng, -1.0, 1.0)});
    }
  }
  std::vector<double> unary(static_cast<std::size_t>(R) * C);
  for (double& u : unary) u = uniform(rng, -spec.a, spec.a);

  BinaryMRF raw(R * C, std::move(edges), std::move(unary));
  return ModelFile{scale_to_integer(raw, spec.scale), std::nullopt,
                   std::make_pair(R, C), spec};
}

RunSummary run_model(const ModelFile& file, const OptimizeOptions& options,
                     const RunPaths& paths) {
  RunSummary s;
  if (file.instance) s.spec = *file.instance;
  if (file.grid) {
    s.spec.rows = file.grid->first;
    s.spec.cols = file.grid->second;
  }
  OptimizeOptions opts = options;
  opts.record_time = opts.record_time || paths.trace_timing;

  const auto start = std::chrono::steady_clock::now();
  const SolveResult res = optimize(file.model, file.resolve_embedding(), opts);
  s.wall_ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  s.iterations = res.iterations;
  s.gap = res.certificate.gap;
  s.best_upper = res.best_upper;
  s.best_lower = res.best_lower;
  s.converged = res.iterations > 0 && s.gap < 1.0;

  if (paths.trace) {
    std::ostringstream csv;
    write_trace_csv(csv, res.trace, paths.trace_timing);
    write_text_file(*paths.trace, csv.str());
  }
  if (paths.summary) append_summary(*paths.summary, s);
  return s;
}

RunSummary run(const InstanceSpec& spec, const OptimizeOptions& options,
               const RunPaths& paths) {
  OptimizeOptions opts = options;
  opts.seed = spec.seed;
  return run_model(generate_grid_instance(spec), opts, paths);
}

double geometric_mean(std::span<const double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  double log_sum = 0.0;
  for (double v : values) {
    if (!(v > 0.0)) throw RangeError("geometric mean needs positive values");
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

std::vector<BatchAggregate> aggregate(std::span<const RunSummary> runs) {
  using Key = std::tuple<int, int, double, int>;
  std::map<Key, std::size_t> index;
  std::vector<BatchAggregate> out;
  std::vector<std::vector<double>> times;
  for (const RunSummary& s : runs) {
    const Key key{s.spec.rows, s.spec.cols, s.spec.a, s.spec.scale};
    auto [it, inserted] = index.emplace(key, out.size());
    if (inserted) {
      BatchAggregate agg;
      agg.rows = s.spec.rows;
      agg.cols = s.spec.cols;
      agg.a = s.spec.a;
      agg.scale = s.spec.scale;
      out.push_back(agg);
      times.emplace_back();
    }
    BatchAggregate& agg = out[it->second];
    ++agg.runs;
    if (!s.error.empty()) ++agg.failed;
    if (s.converged) {
      ++agg.converged;
      // Sub-millisecond runs would otherwise drag the mean to zero.
      times[it->second].push_back(std::max(s.wall_ms, 1e-3));
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].converged_fraction =
        static_cast<double>(out[k].converged) / out[k].runs;
    out[k].geomean_wall_ms = geometric_mean(times[k]);
  }
  return out;
}

BatchResult batch(const std::vector<InstanceSpec>& specs,
                  const OptimizeOptions& options, int jobs) {
  BatchResult result;
  result.runs.resize(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < specs.size(); k = next++) {
      try {
        result.runs[k] = run(specs[k], options);
      } catch (const std::exception& e) {
        RunSummary failed;
        failed.spec = specs[k];
        failed.gap = std::numeric_limits<double>::infinity();
        failed.error = e.what();
        result.runs[k] = std::move(failed);
      }
    }
  };
  const int threads = std::max(
      1, std::min<int>(jobs, static_cast<int>(specs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  result.aggregates = aggregate(result.runs);
  return result;
}

std::string results_row(const RunSummary& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d,%d,%s,%llu,%d,%d,%.6f,%.3f", s.spec.rows,
                s.spec.cols, format_number(s.spec.a).c_str(),
                static_cast<unsigned long long>(s.spec.seed),
                s.converged ? 1 : 0, s.iterations, s.gap, s.wall_ms);
  return buf;
}

void write_results_csv(std::ostream& out, std::span<const RunSummary> runs) {
  out << kResultsHeader << '\n';
  for (const RunSummary& s : runs) out << results_row(s) << '\n';
}

void write_aggregates_csv(std::ostream& out,
                          std::span<const BatchAggregate> aggregates) {
  out << "rows,cols,a,scale,runs,converged,not_converged,failed,"
         "converged_fraction,geomean_wall_ms\n";
  char buf[256];
  for (const BatchAggregate& g : aggregates) {
    std::snprintf(buf, sizeof buf, "%d,%d,%s,%d,%d,%d,%d,%d,%.4f,%.3f\n",
                  g.rows, g.cols, format_number(g.a).c_str(), g.scale, g.runs,
                  g.converged, g.runs - g.converged, g.failed,
                  g.converged_fraction, g.geomean_wall_ms);
    out << buf;
  }
}

BatchSpec parse_batch_spec(const std::string& text) {
  using nlohmann::json;
  BatchSpec spec;
  try {
    const json doc = json::parse(text);
    spec.options.max_iters = doc.value("max_iters", spec.options.max_iters);
    spec.options.tol = doc.value("tol", spec.options.tol);
    for (const json& group : doc.at("instances")) {
      InstanceSpec base;
      base.rows = group.at("rows").get<int>();
      base.cols = group.at("cols").get<int>();
      base.a = group.at("a").get<double>();
      base.scale = group.value("scale", 500);
      std::vector<std::uint64_t> seeds;
      if (group.contains("seeds")) {
        seeds = group["seeds"].get<std::vector<std::uint64_t>>();
      } else {
        const auto first = group.at("seed").get<std::uint64_t>();
        const int count = group.value("count", 1);
        for (int k = 0; k < count; ++k) seeds.push_back(first + k);
      }
      for (std::uint64_t s : seeds) {
        InstanceSpec one = base;
        one.seed = s;
        validate(one);
        spec.instances.push_back(one);
      }
    }
  } catch (const json::exception& e) {
    throw InvalidModel(std::string("invalid batch spec: ") + e.what());
  }
  return spec;
}

}  // namespace pcc
