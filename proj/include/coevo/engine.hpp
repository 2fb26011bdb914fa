#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <vector>

#include "coevo/graph.hpp"
#include "coevo/model.hpp"
#include "coevo/rng.hpp"

namespace coevo {

/// Observables at the end of step t (t = 0 is the initial state).
struct StepRecord {
  std::uint32_t t;
  double f_c;     ///< cooperator fraction
  double mean_A;  ///< relationship index averaged over nodes

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct RunResult {
  SimParams params;                 ///< exactly what was run
  std::vector<StepRecord> series;   ///< mc_steps + 1 records
  double f_c_stationary = 0.0;      ///< mean f_c over the last measure_window records
  double A_stationary = 0.0;        ///< mean mean_A over the same records
  std::vector<double> A_initial;    ///< per-node index at t = 0
  std::vector<double> A_final;      ///< per-node index at t = mc_steps

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// A single run stepped by hand. Sub-streams for topology, initial weights,
/// initial strategies and the dynamics all derive from params.seed.
class Simulation {
 public:
  explicit Simulation(const SimParams& params);

  /// Advances one MC step and returns the game layer that was played.
  const InteractionSet& step();

  StepRecord observe() const;

  std::uint32_t time() const { return t_; }
  const SimParams& params() const { return params_; }
  const Graph& graph() const { return graph_; }
  const MultiplexState& state() const { return state_; }

 private:
  SimParams params_;
  Graph graph_;
  MultiplexState state_;
  InteractionSampler sampler_;
  Rng dynamics_;
  std::uint32_t t_ = 0;
};

/// Runs params.mc_steps steps and collects observables. Throws RangeError
/// on invalid params before doing any work.
RunResult run(const SimParams& params);

/// Mean of f_c and mean_A over the last `window` records.
std::pair<double, double> stationary_means(const std::vector<StepRecord>& series, std::size_t window);

/// Seed for replica r of a configuration seeded with `seed`.
std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t replica);

/// Executes job(0) .. job(count - 1) on up to `workers` threads (0 means
/// hardware concurrency). The first exception thrown by a job is rethrown.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& job);

/// Independent runs seeded by replica_seed(params.seed, r), ordered by r.
std::vector<RunResult> run_replicas(const SimParams& params, std::size_t n_replicas, std::size_t workers = 0);

}  // namespace coevo
