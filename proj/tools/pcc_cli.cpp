#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pcc/error.hpp"
#include "pcc/harness.hpp"
#include "pcc/io.hpp"
#include "pcc/oracle.hpp"

namespace {

std::string read_all(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pcc::IoError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string labels(const pcc::LabelAssignment& x) {
  std::string s;
  for (pcc::Label l : x) s.push_back(l ? '1' : '0');
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar cycle covering MAP solver for binary MRFs"};
  app.require_subcommand(1);

  pcc::InstanceSpec gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen-grid", "Generate a random grid model");
  gen_cmd->add_option("--rows", gen.rows)->required();
  gen_cmd->add_option("--cols", gen.cols)->required();
  gen_cmd->add_option("--a", gen.a)->required();
  gen_cmd->add_option("--seed", gen.seed)->required();
  gen_cmd->add_option("--scale", gen.scale)->capture_default_str();
  gen_cmd->add_option("-o,--out", gen_out)->required();

  std::string solve_model, solve_trace, solve_summary;
  pcc::OptimizeOptions solve_opts;
  bool solve_timing = false;
  auto* solve_cmd = app.add_subcommand("solve", "Run the cycle covering solver");
  solve_cmd->add_option("model", solve_model)->required();
  solve_cmd->add_option("--max-iters", solve_opts.max_iters)
      ->capture_default_str();
  solve_cmd->add_option("--tol", solve_opts.tol)->capture_default_str();
  solve_cmd->add_option("--trace", solve_trace);
  solve_cmd->add_option("--summary", solve_summary);
  solve_cmd->add_flag("--timing", solve_timing,
                      "Write wall-clock times into the trace");

  std::string oracle_model;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "Exact MAP by enumeration (small models)");
  oracle_cmd->add_option("model", oracle_model)->required();

  std::string batch_spec, batch_out, batch_agg;
  int batch_jobs = 1;
  auto* batch_cmd = app.add_subcommand("batch", "Run a batch of grid instances");
  batch_cmd->add_option("--spec", batch_spec)->required();
  batch_cmd->add_option("--out", batch_out)->required();
  batch_cmd->add_option("--aggregate", batch_agg,
                        "Aggregate CSV (default: printed to stdout)");
  batch_cmd->add_option("--jobs", batch_jobs)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      pcc::write_model_file(gen_out, pcc::generate_grid_instance(gen));
    } else if (*solve_cmd) {
      const pcc::ModelFile file = pcc::read_model_file(solve_model);
      pcc::RunPaths paths;
      if (!solve_trace.empty()) paths.trace = solve_trace;
      if (!solve_summary.empty()) paths.summary = solve_summary;
      paths.trace_timing = solve_timing;
      const pcc::RunSummary s = pcc::run_model(file, solve_opts, paths);
      std::printf("converged=%d iters=%d gap=%.6f upper=%.6f lower=%.6f "
                  "wall_ms=%.3f\n",
                  s.converged ? 1 : 0, s.iterations, s.gap, s.best_upper,
                  s.best_lower, s.wall_ms);
    } else if (*oracle_cmd) {
      const pcc::ModelFile file = pcc::read_model_file(oracle_model);
      const pcc::OracleResult r = pcc::brute_force_map(file.model);
      std::printf("energy=%s\nassignment=%s\n",
                  pcc::format_number(r.energy).c_str(),
                  labels(r.assignment).c_str());
    } else if (*batch_cmd) {
      const pcc::BatchSpec spec = pcc::parse_batch_spec(read_all(batch_spec));
      const pcc::BatchResult res =
          pcc::batch(spec.instances, spec.options, batch_jobs);
      std::ostringstream rows;
      pcc::write_results_csv(rows, res.runs);
      pcc::write_text_file(batch_out, rows.str());
      std::ostringstream agg;
      pcc::write_aggregates_csv(agg, res.aggregates);
      if (batch_agg.empty()) {
        std::cout << agg.str();
      } else {
        pcc::write_text_file(batch_agg, agg.str());
      }
      for (const pcc::RunSummary& s : res.runs) {
        if (!s.error.empty()) {
          std::cerr << "seed " << s.spec.seed << " failed: " << s.error << '\n';
        }
      }
    }
  } catch (const pcc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
