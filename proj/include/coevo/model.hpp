#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "coevo/graph.hpp"
#include "coevo/rng.hpp"

namespace coevo {

enum class Strategy : std::uint8_t { Defect = 0, Cooperate = 1 };

/// How strategies are assigned at t = 0.
enum class InitialStrategies { Random, AllCooperate, AllDefect };

/// All model constants of one run.
struct SimParams {
  double b = 1.5;       ///< temptation to defect, weak PD regime [1, 2]
  double m = 0.5;       ///< payoff weight in fitness, [0, 1]
  double p = 0.9;       ///< interaction probability above threshold, [0, 1]
  double gamma = 0.5;   ///< relationship threshold, [0, 1]
  double delta = 0.1;   ///< weight step, [0, 1]
  double kappa = 0.1;   ///< selection noise, > 0
  Topology topology{};
  std::uint32_t mc_steps = 10000;
  std::uint32_t measure_window = 1000;
  std::uint64_t seed = 1;
  InitialStrategies init = InitialStrategies::Random;

  /// Throws RangeError naming the first violated bound.
  void validate() const;

  friend bool operator==(const SimParams&, const SimParams&) = default;
};

/// Per-run mutable state: edge weights of the relationship layer plus the
/// strategy and this step's accumulated payoff of every agent.
struct MultiplexState {
  std::vector<double> weights;  ///< indexed by EdgeId
  std::vector<Strategy> strategies;
  std::vector<double> payoffs;

  double weight(const Graph& g, NodeId i, NodeId j) const;
  std::size_t cooperator_count() const;
};

enum class Origin : std::uint8_t { Direct, Recommended };

/// An unordered pair of agents playing one game this step. `edge` is the
/// relationship edge joining them, or kNoEdge for a recommended stranger.
struct Dyad {
  NodeId a;  ///< a < b
  NodeId b;
  Origin origin;
  EdgeId edge;
};

/// The game layer of one step: each unordered pair appears at most once.
class InteractionSet {
 public:
  InteractionSet() = default;

  /// Validates set semantics and edge tags against `graph`; throws
  /// std::invalid_argument on self-pairs, duplicates or wrong edge ids.
  static InteractionSet from_dyads(const Graph& graph, std::vector<Dyad> dyads);

  std::span<const Dyad> dyads() const { return dyads_; }
  std::size_t size() const { return dyads_.size(); }
  bool empty() const { return dyads_.empty(); }
  bool contains(NodeId x, NodeId y) const;
  std::size_t count(Origin origin) const;

 private:
  friend class InteractionSampler;
  std::vector<Dyad> dyads_;
};

/// Uniform weights on [0,1] per edge, fair-coin strategies, zero payoffs.
/// Weights and strategies draw from separate streams.
MultiplexState init_state(const Graph& graph, Rng& weight_rng, Rng& strategy_rng,
                          InitialStrategies init = InitialStrategies::Random);

/// Neighbor with the largest weight; ties go to the lowest node id.
/// Empty for an isolated node.
std::optional<NodeId> best_neighbor(const MultiplexState& state, const Graph& graph, NodeId x);

/// Draws the game layer for one step.
///
/// Direct phase: every relationship edge plays with probability p when its
/// weight exceeds gamma, and 1 - p otherwise. Recommendation phase: along
/// each edge with weight above gamma, in both directions x -> y, x proposes
/// its best neighbor z as a partner for y with probability p. Proposals with
/// z == y or an already present pair are dropped.
///
/// The sampler keeps scratch buffers between steps.
class InteractionSampler {
 public:
  explicit InteractionSampler(const Graph& graph);

  const InteractionSet& sample(const MultiplexState& state, const SimParams& params, Rng& rng);

 private:
  const Graph* graph_;
  InteractionSet set_;
  std::vector<char> edge_taken_;
  std::vector<NodeId> best_;
  // Open-addressing set of stranger pairs proposed this step. A slot is live
  // when its stamp equals the current step's stamp.
  std::vector<std::uint64_t> stranger_slots_;
  std::vector<std::uint32_t> stranger_stamps_;
  std::uint32_t stamp_ = 0;
};

InteractionSet sample_interactions(const MultiplexState& state, const Graph& graph,
                                   const SimParams& params, Rng& rng);

/// Weak prisoner's dilemma: R = 1, T = b, S = P = 0.
/// Returns (payoff to first, payoff to second).
std::pair<double, double> game_payoffs(Strategy first, Strategy second, double b);

/// Adds every dyad's payoffs onto the accumulators.
void play_games(MultiplexState& state, const InteractionSet& interactions, double b);

/// Weight rule for one played relationship edge, clamped to [0, 1].
double adapted_weight(double w, Strategy si, Strategy sj, double delta);

/// Applies adapted_weight to every played dyad that is a relationship edge.
void update_weights(MultiplexState& state, const InteractionSet& interactions, double delta);

/// Sum of the weights incident to i.
double relationship_index(const MultiplexState& state, const Graph& graph, NodeId i);
std::vector<double> relationship_indices(const MultiplexState& state, const Graph& graph);

/// m·payoff + relationship index.
double fitness(const MultiplexState& state, const Graph& graph, NodeId i, double m);

/// W(i,j)/A_i for each neighbor j in neighbor order; empty when A_i = 0.
std::vector<double> selection_probabilities(const MultiplexState& state, const Graph& graph, NodeId i);

/// Draws an imitation model j with probability W(i,j)/A_i. Empty when every
/// incident weight is zero.
std::optional<NodeId> select_model(const MultiplexState& state, const Graph& graph, NodeId i, Rng& rng);

/// Fermi probability that an agent with fitness f_self adopts the strategy
/// of one with fitness f_model. Finite for any finite input.
double fermi_adopt_prob(double f_self, double f_model, double kappa);

/// Synchronous imitation: every agent, in index order, picks a model and
/// adopts its strategy with the Fermi probability. Reads use the pre-phase
/// strategies and fitnesses.
void imitation_phase(MultiplexState& state, const Graph& graph, const SimParams& params, Rng& rng);

/// One full MC step: reset payoffs, sample, play, adapt weights, imitate.
/// Returns the interaction set that was played.
const InteractionSet& mc_step(MultiplexState& state, const Graph& graph, const SimParams& params,
                              InteractionSampler& sampler, Rng& rng);

}  // namespace coevo
