// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. `--suite property` is fast; `--suite trend` runs the
// full-scale simulations (N = 2500, 10000 steps, 5 replicas) and takes a
// long time on a single core.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coevo/csv.hpp"
#include "coevo/engine.hpp"
#include "coevo/sweep.hpp"
#include "support/oracles.hpp"

using namespace coevo;

namespace {

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

constexpr TopologyKind kAll[] = {TopologyKind::Honeycomb, TopologyKind::Square, TopologyKind::Triangular,
                                 TopologyKind::WattsStrogatz};

const Strategy C = Strategy::Cooperate;
const Strategy D = Strategy::Defect;

// --- property suite ------------------------------------------------------------

void weight_clamping() {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t bad = 0;
  double w = 0.5;
  for (int i = 0; i < 1000000; ++i) {
    // Alternate between fresh weights and long chains so both bounds are hit.
    if (i % 1000 == 0) w = u(gen);
    const Strategy si = u(gen) < 0.5 ? C : D;
    const Strategy sj = u(gen) < 0.5 ? C : D;
    w = adapted_weight(w, si, sj, u(gen));
    if (!(w >= 0.0 && w <= 1.0)) ++bad;
  }
  report(bad == 0, "weight-clamping", std::to_string(bad) + " of 1000000 updates left [0,1]");
}

void selection_normalization() {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> deg(1, 20);
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const int k = deg(gen);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int j = 1; j <= k; ++j) edges.emplace_back(0, j);
    const Graph g(k + 1, edges);
    MultiplexState st;
    st.weights.resize(g.edge_count());
    for (auto& x : st.weights) x = u(gen);
    st.strategies.assign(g.node_count(), C);
    st.payoffs.assign(g.node_count(), 0.0);
    double sum = 0.0;
    for (double q : selection_probabilities(st, g, 0)) sum += q;
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  report(worst <= 1e-12, "selection-normalization", fmt("max |sum - 1| = %.3g over 1000 stars", worst));
}

void fermi_identities() {
  bool equal_ok = true;
  for (double f : {0.0, 1.0, -3.5, 1e6, 7.25}) {
    for (double kappa : {0.1, 1.0, 1e-6}) equal_ok &= fermi_adopt_prob(f, f, kappa) == 0.5;
  }
  report(equal_ok, "fermi-equal-fitness", "Gamma(f,f) == 0.5 exactly");

  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double worst = 0.0, worst_closed = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double a = u(gen), b = u(gen);
    const double ab = fermi_adopt_prob(a, b, 0.1), ba = fermi_adopt_prob(b, a, 0.1);
    worst = std::max(worst, std::abs(ab + ba - 1.0));
    worst_closed = std::max(worst_closed, static_cast<double>(std::abs(ab - oracle::fermi_closed_form(a, b, 0.1L))));
  }
  report(worst <= 1e-12 && worst_closed <= 1e-12, "fermi-complement",
         fmt("max |G(a,b)+G(b,a)-1| = %.3g", worst) + fmt(", max closed-form error = %.3g", worst_closed));

  const double up = fermi_adopt_prob(0.0, 1000.0, 0.1);
  const double down = fermi_adopt_prob(1000.0, 0.0, 0.1);
  const bool finite = std::isfinite(up) && std::isfinite(down) && up >= 0.0 && up <= 1.0 && down >= 0.0 && down <= 1.0;
  report(finite && up == 1.0 && down < 1e-300, "fermi-no-overflow",
         "|df|/kappa = 1e4 gives " + fmt("%.17g", up) + " and " + fmt("%.3g", down));
}

void topology_structure() {
  const std::map<TopologyKind, std::pair<std::size_t, std::size_t>> expected{
      {TopologyKind::Honeycomb, {3, 3750}},
      {TopologyKind::Square, {4, 5000}},
      {TopologyKind::Triangular, {6, 7500}},
      {TopologyKind::WattsStrogatz, {10, 12500}}};
  for (auto kind : kAll) {
    const auto [k, m] = expected.at(kind);
    std::string problem;
    for (std::uint64_t seed = 1; seed <= 10 && problem.empty(); ++seed) {
      Topology topo;
      topo.kind = kind;
      Rng rng(derive_seed(seed, Stream::Topology));
      const Graph g = build_topology(topo, rng);
      if (g.node_count() != 2500) problem = "node count";
      else if (g.edge_count() != m) problem = "edge count " + std::to_string(g.edge_count());
      else if (!oracle::structural_defect(g).empty()) problem = oracle::structural_defect(g);
      else if (!oracle::connected_bfs(g)) problem = "disconnected";
      else if (kind != TopologyKind::WattsStrogatz) {
        for (NodeId i = 0; i < g.node_count(); ++i) {
          if (g.degree(i) != k) {
            problem = "degree of node " + std::to_string(i);
            break;
          }
        }
      } else if (2.0 * g.edge_count() / g.node_count() != static_cast<double>(k)) {
        problem = "mean degree";
      }
      if (!problem.empty()) problem += " (seed " + std::to_string(seed) + ")";
    }
    report(problem.empty(), std::string("topology-") + std::string(topology_name(kind)),
           problem.empty() ? "degree " + std::to_string(k) + ", " + std::to_string(m) +
                                 " edges, symmetric, connected for 10 seeds"
                           : problem);
  }
}

void determinism() {
  SimParams params;
  params.topology.kind = TopologyKind::Square;
  params.mc_steps = 500;
  params.measure_window = 100;
  params.seed = 2024;
  std::ostringstream a, b;
  write_run_csv(a, run(params));
  write_run_csv(b, run(params));
  report(a.str() == b.str() && !a.str().empty(), "determinism-run", std::to_string(a.str().size()) +
                                                                        " bytes, identical across two runs");

  params.mc_steps = 100;
  params.measure_window = 10;
  const auto serial = run_replicas(params, 8, 1);
  const auto parallel = run_replicas(params, 8, 8);
  report(serial == parallel, "determinism-replicas", "8 replicas, 1 vs 8 workers");
}

MultiplexState blank(const Graph& g) {
  MultiplexState st;
  st.weights.assign(g.edge_count(), 0.0);
  st.strategies.assign(g.node_count(), C);
  st.payoffs.assign(g.node_count(), 0.0);
  return st;
}

void interaction_frequencies() {
  const Graph edge(2, {{0, 1}});
  const int trials = 100000;
  SimParams params;
  params.p = 0.9;
  params.gamma = 0.5;
  for (double w : {0.8, 0.2, 0.5}) {
    auto st = blank(edge);
    st.weights[0] = w;
    InteractionSampler sampler(edge);
    Rng rng(derive_seed(99, {static_cast<std::uint64_t>(w * 10)}));
    int hits = 0;
    for (int t = 0; t < trials; ++t) hits += sampler.sample(st, params, rng).contains(0, 1) ? 1 : 0;
    const double freq = static_cast<double>(hits) / trials;
    const double target = w > params.gamma ? params.p : 1.0 - params.p;
    report(std::abs(freq - target) <= 0.01, "edge-frequency-w" + fmt("%.1f", w),
           fmt("observed %.4f", freq) + fmt(", expected %.2f", target));
  }

  // Path 0-1-2, equal weights above gamma: best(1) = 0 by the tie rule, so 1
  // proposes 0 to 2 along edge (1,2); all other proposals are self-proposals.
  const Graph path(3, {{0, 1}, {1, 2}});
  auto st = blank(path);
  st.weights = {0.9, 0.9};
  params.p = 0.7;
  InteractionSampler sampler(path);
  Rng rng(7);
  int hits = 0;
  for (int t = 0; t < trials; ++t) hits += sampler.sample(st, params, rng).contains(0, 2) ? 1 : 0;
  const double freq = static_cast<double>(hits) / trials;
  report(std::abs(freq - params.p) <= 0.01, "recommendation-frequency",
         fmt("observed %.4f", freq) + fmt(", expected %.2f", params.p));
}

// --- trend suite ---------------------------------------------------------------

SimParams full_scale(TopologyKind kind) {
  SimParams p;
  p.topology.kind = kind;
  p.p = 0.9;
  p.delta = 0.1;
  p.kappa = 0.1;
  p.mc_steps = 10000;
  p.measure_window = 1000;
  p.seed = 20240501;
  return p;
}

constexpr std::size_t kReplicas = 5;

struct Averages {
  double f_c = 0.0;
  double A = 0.0;
};

Averages averaged(const std::vector<RunResult>& reps) {
  Averages out;
  for (const auto& r : reps) {
    out.f_c += r.f_c_stationary;
    out.A += r.A_stationary;
  }
  out.f_c /= reps.size();
  out.A /= reps.size();
  return out;
}

std::string name_of(TopologyKind kind) { return std::string(topology_name(kind)); }

void corners(std::size_t workers) {
  auto coop = full_scale(TopologyKind::Square);
  coop.b = 1.0;
  coop.m = 0.0;
  coop.gamma = 0.5;
  const double fc_coop = averaged(run_replicas(coop, kReplicas, workers)).f_c;
  report(fc_coop >= 0.9, "corner-cooperation", fmt("SL b=1 m=0: f_c = %.4f (need >= 0.9)", fc_coop));

  auto defect = coop;
  defect.b = 2.0;
  defect.m = 1.0;
  const double fc_def = averaged(run_replicas(defect, kReplicas, workers)).f_c;
  report(fc_def <= 0.1, "corner-defection", fmt("SL b=2 m=1: f_c = %.4f (need <= 0.1)", fc_def));
}

void b_trend(std::size_t workers) {
  for (auto kind : kAll) {
    auto base = full_scale(kind);
    base.m = 0.5;
    base.gamma = 0.2;
    SweepSpec spec{base, {parse_sweep_axis("b:1:2:11")}, kReplicas};
    const auto rows = run_sweep(spec, workers);
    std::vector<double> b, fc;
    for (const auto& row : rows) {
      b.push_back(row.params.b);
      fc.push_back(row.f_c_mean);
    }
    const double slope = oracle::ols_slope(b, fc);
    const bool ok = fc[1] > fc[9] && slope < 0.0;
    std::string curve;
    for (double x : fc) curve += fmt(" %.3f", x);
    report(ok, "b-trend-" + name_of(kind),
           fmt("f_c(1.1) = %.4f", fc[1]) + fmt(", f_c(1.9) = %.4f", fc[9]) + fmt(", slope = %.4f;", slope) + curve);
  }
}

void gamma_suppression(std::size_t workers) {
  for (auto kind : kAll) {
    auto params = full_scale(kind);
    params.b = 1.5;
    params.m = 0.5;
    params.gamma = 0.9;
    const double fc = averaged(run_replicas(params, kReplicas, workers)).f_c;
    report(fc <= 0.05, "gamma-suppression-" + name_of(kind), fmt("gamma=0.9: f_c = %.4f (need <= 0.05)", fc));
  }
}

void degree_ordering_and_distribution(std::size_t workers) {
  std::map<TopologyKind, std::vector<double>> mean_A;  // over m = 0, 0.5, 1
  std::vector<RunResult> sl_m0;
  for (auto kind : kAll) {
    for (double m : {0.0, 0.5, 1.0}) {
      auto params = full_scale(kind);
      params.b = 1.5;
      params.gamma = 0.1;
      params.m = m;
      auto reps = run_replicas(params, kReplicas, workers);
      mean_A[kind].push_back(averaged(reps).A);
      if (kind == TopologyKind::Square && m == 0.0) sl_m0 = std::move(reps);
    }
  }
  const double hl = mean_A[TopologyKind::Honeycomb][0], sl = mean_A[TopologyKind::Square][0],
               xl = mean_A[TopologyKind::Triangular][0], ws = mean_A[TopologyKind::WattsStrogatz][0];
  report(ws > xl && xl > sl && sl > hl, "degree-ordering",
         fmt("m=0: WS %.3f", ws) + fmt(" > XL %.3f", xl) + fmt(" > SL %.3f", sl) + fmt(" > HL %.3f", hl));
  report(hl <= 3.0 && ws <= 10.0, "degree-bounds", fmt("HL %.3f <= 3", hl) + fmt(", WS %.3f <= 10", ws));
  for (auto kind : kAll) {
    const auto& a = mean_A[kind];
    report(a[0] > a[1] && a[1] > a[2], "A-decreasing-in-m-" + name_of(kind),
           fmt("m=0 %.3f", a[0]) + fmt(", m=0.5 %.3f", a[1]) + fmt(", m=1 %.3f", a[2]));
  }

  const auto& first = sl_m0.front();
  const double d = oracle::ks_one_sample(first.A_initial, [](double x) { return oracle::irwin_hall_cdf(x, 4); });
  const double crit = oracle::ks_critical_one_sample(first.A_initial.size());
  report(d < crit, "initial-A-irwin-hall", fmt("KS D = %.4f", d) + fmt(" < %.4f (alpha 0.01)", crit));

  double initial = 0.0, final = 0.0;
  for (double x : first.A_initial) initial += x;
  for (double x : first.A_final) final += x;
  initial /= first.A_initial.size();
  final /= first.A_final.size();
  report(final > initial, "final-A-exceeds-initial",
         fmt("SL m=0: mean A initial %.4f", initial) + fmt(", final %.4f", final));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria runner"};
  std::string suite = "all";
  std::size_t workers = 0;
  app.add_option("--suite", suite, "property, trend or all")->check(CLI::IsMember({"property", "trend", "all"}));
  app.add_option("--threads", workers, "worker threads for the trend suite (0 = all cores)");
  CLI11_PARSE(app, argc, argv);

  const auto start = std::chrono::steady_clock::now();
  try {
    if (suite != "trend") {
      weight_clamping();
      selection_normalization();
      fermi_identities();
      topology_structure();
      determinism();
      interaction_frequencies();
    }
    if (suite != "property") {
      corners(workers);
      b_trend(workers);
      gamma_suppression(workers);
      degree_ordering_and_distribution(workers);
    }
  } catch (const std::exception& e) {
    report(false, "runner", e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d failed criteria (%.1f s)\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
