// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pcc/cycle_cover.hpp"
#include "pcc/error.hpp"
#include "pcc/harness.hpp"
#include "pcc/oracle.hpp"
#include "pcc/planar_ising.hpp"

using namespace pcc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome matching_exactness() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> weight(-20, 20);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  int compared = 0, mismatches = 0, attempts = 0;
  const auto t0 = Clock::now();
  while (compared < 250 && attempts < 5000) {
    ++attempts;
    const int n = 2 * std::uniform_int_distribution<int>(1, 6)(rng);
    const double density = std::uniform_real_distribution<double>(0.3, 1.0)(rng);
    std::vector<MatchEdge> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (coin(rng) < density) edges.push_back({u, v, weight(rng)});
      }
    }
    const WeightedMatchGraph g(n, std::move(edges));
    Matching ref;
    try {
      ref = brute_force_mwpm(g);
    } catch (const NoPerfectMatching&) {
      continue;
    }
    ++compared;
    if (min_weight_perfect_matching(g).total_weight != ref.total_weight) {
      ++mismatches;
    }
  }
  const double secs = seconds_since(t0);
  return {compared >= 200 && mismatches == 0 && secs < 10.0,
          fmt("%d graphs compared, %d mismatches, %.2f s", compared,
              mismatches, secs)};
}

Outcome planar_ising_exactness() {
  std::mt19937_64 rng(2002);
  std::uniform_int_distribution<int> weight(-10, 10);
  int checked = 0, mismatches = 0;
  const auto t0 = Clock::now();
  auto check = [&](const EmbeddedGraph& g, int n) {
    std::vector<Edge> edges;
    for (auto [i, j] : g.edges) edges.push_back({i, j, double(weight(rng))});
    const SymmetricIsing ising(n, edges);
    const BinaryMRF as_mrf(n, edges, std::vector<double>(n, 0.0));
    const GroundState gs = ground_state(ising, g.embedding);
    const OracleResult ref = brute_force_map(as_mrf);
    ++checked;
    if (double(gs.energy) != ref.energy ||
        energy(as_mrf, gs.labels) != ref.energy) {
      ++mismatches;
    }
  };
  for (int rep = 0; rep < 12; ++rep) {
    for (int r = 1; r <= 3; ++r) {
      for (int c = 1; c <= 4; ++c) {
        if (r * c >= 2) check(grid(r, c), r * c);
      }
    }
    for (int k = 3; k <= 10; ++k) check(cycle(k), k);
  }
  const double secs = seconds_since(t0);
  return {checked >= 200 && mismatches == 0 && secs < 30.0,
          fmt("%d models, %d mismatches, %.2f s", checked, mismatches, secs)};
}

Outcome lower_bound_validity() {
  int runs = 0, violations = 0, iterates = 0;
  double worst = -INFINITY;
  for (double a : {0.2, 0.8, 3.2}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const ModelFile f = generate_grid_instance({4, 4, a, seed, 500});
      const double e_map = brute_force_map(f.model).energy;
      OptimizeOptions opts;
      opts.max_iters = 100;
      opts.tol = -1.0;
      const SolveResult r = optimize(f.model, f.resolve_embedding(), opts);
      ++runs;
      for (const TraceRecord& t : r.trace) {
        ++iterates;
        worst = std::max(worst, t.lower_bound - e_map);
        if (t.lower_bound > e_map + 1e-6) ++violations;
      }
    }
  }
  return {runs == 60 && violations == 0,
          fmt("%d runs, %d iterates, %d violations, max(LB - E_MAP) = %.6g",
              runs, iterates, violations, worst)};
}

Outcome unary_free_tightness() {
  int checked = 0, mismatches = 0;
  std::mt19937_64 rng(4004);
  for (int k = 0; k < 50; ++k) {
    const int rows = 2 + k % 3, cols = 2 + (k / 3) % 3;
    const ModelFile f = generate_grid_instance({rows, cols, 0.0, rng(), 500});
    const PCCGraph pcc = build_pcc(f.model, f.resolve_embedding());
    const LowerBound lb =
        lower_bound(f.model, pcc, init_params(f.model, pcc));
    const double e_map = brute_force_map(f.model).energy;
    ++checked;
    if (lb.value != e_map) ++mismatches;
  }
  return {checked == 50 && mismatches == 0,
          fmt("%d grids, %d not tight at initialization", checked, mismatches)};
}

Outcome single_cycle_tightness() {
  std::mt19937_64 rng(5005);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int closed = 0;
  for (int k = 0; k < 100; ++k) {
    const int len = 3 + k % 6;
    const EmbeddedGraph g = cycle(len);
    std::vector<Edge> edges;
    for (auto [i, j] : g.edges) edges.push_back({i, j, u(rng)});
    std::vector<double> unary(len);
    for (double& x : unary) x = 0.8 * u(rng);
    const BinaryMRF m = scale_to_integer(
        BinaryMRF(len, std::move(edges), std::move(unary)), 500);
    OptimizeOptions opts;
    opts.max_iters = 500;
    const SolveResult r = optimize(m, g.embedding, opts);
    if (r.certificate.gap < 1.0) ++closed;
  }
  return {closed >= 90, fmt("%d/100 cycles closed the gap", closed)};
}

Outcome structural_invariant() {
  int bad = 0, checked = 0;
  for (int r = 2; r <= 8; ++r) {
    for (int c = 2; c <= 8; ++c) {
      const EmbeddedGraph g = grid(r, c);
      const int V = r * c, E = static_cast<int>(g.edges.size());
      const int F = 2 - V + E;
      const PCCGraph pcc =
          build_pcc(BinaryMRF(V, {}, std::vector<double>(V, 0.0)), g.embedding);
      ++checked;
      if (pcc.num_vertices() != V + F || pcc.num_edges() != 3 * E) ++bad;
    }
  }
  const PCCGraph p33 =
      build_pcc(BinaryMRF(9, {}, std::vector<double>(9, 0.0)), grid(3, 3).embedding);
  const bool g33 = p33.num_vertices() == 14 && p33.num_edges() == 36;
  return {bad == 0 && g33,
          fmt("%d grids, %d wrong; grid(3,3): %d vertices, %d edges", checked,
              bad, p33.num_vertices(), p33.num_edges())};
}

Outcome sum_conservation() {
  // Hard enough that the subgradient never vanishes within the budget.
  const ModelFile f = generate_grid_instance({16, 16, 0.2, 6, 500});
  const PlanarEmbedding emb = f.resolve_embedding();
  const PCCGraph pcc = build_pcc(f.model, emb);
  double worst = 0.0;
  int iters = 0;
  OptimizeOptions opts;
  opts.max_iters = 1000;
  opts.tol = -1.0;
  opts.on_iteration = [&](const TraceRecord&, const VariationalParams& p) {
    worst = std::max(worst, max_sum_violation(f.model, pcc, p));
    ++iters;
  };
  optimize(f.model, emb, opts);
  return {iters == 1000 && worst <= 1e-8,
          fmt("%d iterations, max relative violation %.3g", iters, worst)};
}

Outcome certificate_soundness() {
  int optimal = 0, wrong = 0, runs = 0;
  std::uint64_t seed = 8000;
  for (double a : {0.0, 0.2, 0.8, 3.2}) {
    for (int r = 2; r <= 4; ++r) {
      for (int c = 2; c <= 4; ++c) {
        for (int k = 0; k < 3; ++k) {
          const ModelFile f = generate_grid_instance({r, c, a, ++seed, 500});
          OptimizeOptions opts;
          opts.max_iters = 300;
          const SolveResult res = optimize(f.model, f.resolve_embedding(), opts);
          ++runs;
          if (!res.certificate.optimal) continue;
          ++optimal;
          const double e_map = brute_force_map(f.model).energy;
          if (energy(f.model, res.best_assignment) != e_map) ++wrong;
        }
      }
    }
  }
  return {optimal > 0 && wrong == 0,
          fmt("%d runs, %d certified optimal, %d wrong", runs, optimal, wrong)};
}

Outcome convergence_budget() {
  std::string detail;
  bool pass = true;
  double slowest = 0.0;
  for (auto [a, need] : {std::pair{3.2, 9}, std::pair{0.2, 7}}) {
    int converged = 0;
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      OptimizeOptions opts;
      opts.max_iters = 2000;
      const RunSummary s = run({16, 16, a, seed, 500}, opts);
      slowest = std::max(slowest, s.wall_ms);
      total += s.wall_ms;
      if (s.converged) ++converged;
    }
    pass = pass && converged >= need;
    detail += fmt("a=%g: %d/10 converged (need %d), %.1f s total; ", a,
                  converged, need, total / 1000.0);
  }
  pass = pass && slowest < 60000.0;
  return {pass, detail + fmt("slowest run %.1f s", slowest / 1000.0)};
}

Outcome determinism() {
  int identical = 0, cases = 0;
  for (auto spec : {InstanceSpec{6, 6, 0.2, 3, 500}, InstanceSpec{8, 8, 0.8, 4, 500},
                    InstanceSpec{5, 9, 3.2, 5, 500}}) {
    const ModelFile f = generate_grid_instance(spec);
    OptimizeOptions opts;
    opts.max_iters = 200;
    opts.tol = -1.0;
    std::string out[2];
    for (auto& o : out) {
      std::ostringstream csv;
      write_trace_csv(csv, optimize(f.model, f.resolve_embedding(), opts).trace,
                      false);
      o = csv.str();
    }
    ++cases;
    if (out[0] == out[1]) ++identical;
  }
  return {identical == cases,
          fmt("%d/%d trace pairs byte-identical", identical, cases)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*check)();
  };
  const Criterion criteria[] = {
      {"matching exactness", matching_exactness},
      {"planar Ising exactness", planar_ising_exactness},
      {"lower-bound validity", lower_bound_validity},
      {"unary-free tightness", unary_free_tightness},
      {"single-cycle tightness", single_cycle_tightness},
      {"PCC structure", structural_invariant},
      {"sum-constraint conservation", sum_conservation},
      {"certificate soundness", certificate_soundness},
      {"convergence budget", convergence_budget},
      {"determinism", determinism},
  };
  int failed = 0, index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
