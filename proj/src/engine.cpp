#include "coevo/engine.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

#include "coevo/errors.hpp"

namespace coevo {

namespace {

Graph build_graph_for(const SimParams& params) {
  params.validate();
  Rng rng(derive_seed(params.seed, Stream::Topology));
  return build_topology(params.topology, rng);
}

MultiplexState init_state_for(const SimParams& params, const Graph& graph) {
  Rng weight_rng(derive_seed(params.seed, Stream::InitWeights));
  Rng strategy_rng(derive_seed(params.seed, Stream::InitStrategies));
  return init_state(graph, weight_rng, strategy_rng, params.init);
}

}  // namespace

Simulation::Simulation(const SimParams& params)
    : params_(params),
      graph_(build_graph_for(params)),
      state_(init_state_for(params, graph_)),
      sampler_(graph_),
      dynamics_(derive_seed(params.seed, Stream::Dynamics)) {}

const InteractionSet& Simulation::step() {
  const InteractionSet& played = mc_step(state_, graph_, params_, sampler_, dynamics_);
  ++t_;
  return played;
}

StepRecord Simulation::observe() const {
  const std::size_t n = graph_.node_count();
  // Every edge contributes its weight to both endpoints.
  const double weight_sum = std::accumulate(state_.weights.begin(), state_.weights.end(), 0.0);
  return StepRecord{t_, static_cast<double>(state_.cooperator_count()) / static_cast<double>(n),
                    2.0 * weight_sum / static_cast<double>(n)};
}

std::pair<double, double> stationary_means(const std::vector<StepRecord>& series, std::size_t window) {
  window = std::min(window, series.size());
  if (window == 0) return {0.0, 0.0};
  double fc = 0.0;
  double a = 0.0;
  for (auto it = series.end() - static_cast<std::ptrdiff_t>(window); it != series.end(); ++it) {
    fc += it->f_c;
    a += it->mean_A;
  }
  return {fc / static_cast<double>(window), a / static_cast<double>(window)};
}

RunResult run(const SimParams& params) {
  Simulation sim(params);
  RunResult result;
  result.params = params;
  result.series.reserve(params.mc_steps + 1);
  result.series.push_back(sim.observe());
  result.A_initial = relationship_indices(sim.state(), sim.graph());
  for (std::uint32_t s = 0; s < params.mc_steps; ++s) {
    sim.step();
    result.series.push_back(sim.observe());
  }
  result.A_final = relationship_indices(sim.state(), sim.graph());
  std::tie(result.f_c_stationary, result.A_stationary) = stationary_means(result.series, params.measure_window);
  return result;
}

std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t replica) {
  return derive_seed(seed, {0x7265706cULL, replica});  // "repl"
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& job) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::vector<RunResult> run_replicas(const SimParams& params, std::size_t n_replicas, std::size_t workers) {
  if (n_replicas == 0) throw RangeError("replicas must be >= 1");
  params.validate();
  std::vector<RunResult> results(n_replicas);
  parallel_for(n_replicas, workers, [&](std::size_t r) {
    SimParams replica = params;
    replica.seed = replica_seed(params.seed, r);
    results[r] = run(replica);
  });
  return results;
}

}  // namespace coevo
