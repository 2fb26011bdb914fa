#include "coevo/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "coevo/errors.hpp"

namespace coevo {

namespace {

void require_unit(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw RangeError(std::string(name) + " must lie in [0,1] (got " + std::to_string(value) + ")");
  }
}

std::uint64_t pair_key(NodeId x, NodeId y) {
  if (x > y) std::swap(x, y);
  return (std::uint64_t{x} << 32) | y;
}

}  // namespace

void SimParams::validate() const {
  if (!(b >= 1.0 && b <= 2.0)) {
    throw RangeError("b must lie in [1,2] (got " + std::to_string(b) + ")");
  }
  require_unit(m, "m");
  require_unit(p, "p");
  require_unit(gamma, "gamma");
  require_unit(delta, "delta");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw RangeError("kappa must be positive and finite (got " + std::to_string(kappa) + ")");
  }
  if (mc_steps == 0) throw RangeError("steps must be >= 1");
  if (measure_window == 0 || measure_window > mc_steps) {
    throw RangeError("window must lie in [1, steps] (got " + std::to_string(measure_window) +
                     ", steps=" + std::to_string(mc_steps) + ")");
  }
  topology.validate();
}

double MultiplexState::weight(const Graph& g, NodeId i, NodeId j) const {
  const auto e = g.find_edge(i, j);
  if (!e) throw std::out_of_range("no relationship edge between " + std::to_string(i) + " and " + std::to_string(j));
  return weights[*e];
}

std::size_t MultiplexState::cooperator_count() const {
  return static_cast<std::size_t>(std::count(strategies.begin(), strategies.end(), Strategy::Cooperate));
}

// ---------------------------------------------------------------------------

InteractionSet InteractionSet::from_dyads(const Graph& graph, std::vector<Dyad> dyads) {
  std::vector<std::uint64_t> keys;
  keys.reserve(dyads.size());
  for (auto& d : dyads) {
    if (d.a == d.b) throw std::invalid_argument("self-pair (" + std::to_string(d.a) + "," + std::to_string(d.a) + ")");
    if (d.a > d.b) std::swap(d.a, d.b);
    const auto e = graph.find_edge(d.a, d.b);
    if (e.value_or(kNoEdge) != d.edge) {
      throw std::invalid_argument("edge tag mismatch for pair (" + std::to_string(d.a) + "," +
                                  std::to_string(d.b) + ")");
    }
    if (d.origin == Origin::Direct && d.edge == kNoEdge) {
      throw std::invalid_argument("direct pair without a relationship edge");
    }
    keys.push_back(pair_key(d.a, d.b));
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    throw std::invalid_argument("duplicate pair in interaction set");
  }
  InteractionSet out;
  out.dyads_ = std::move(dyads);
  return out;
}

bool InteractionSet::contains(NodeId x, NodeId y) const {
  if (x > y) std::swap(x, y);
  return std::any_of(dyads_.begin(), dyads_.end(), [&](const Dyad& d) { return d.a == x && d.b == y; });
}

std::size_t InteractionSet::count(Origin origin) const {
  return static_cast<std::size_t>(
      std::count_if(dyads_.begin(), dyads_.end(), [&](const Dyad& d) { return d.origin == origin; }));
}

// ---------------------------------------------------------------------------

MultiplexState init_state(const Graph& graph, Rng& weight_rng, Rng& strategy_rng, InitialStrategies init) {
  MultiplexState state;
  state.weights.resize(graph.edge_count());
  for (auto& w : state.weights) w = weight_rng.uniform();
  state.strategies.resize(graph.node_count());
  for (auto& s : state.strategies) {
    switch (init) {
      case InitialStrategies::Random:
        s = strategy_rng.bernoulli(0.5) ? Strategy::Cooperate : Strategy::Defect;
        break;
      case InitialStrategies::AllCooperate: s = Strategy::Cooperate; break;
      case InitialStrategies::AllDefect: s = Strategy::Defect; break;
    }
  }
  state.payoffs.assign(graph.node_count(), 0.0);
  return state;
}

std::optional<NodeId> best_neighbor(const MultiplexState& state, const Graph& graph, NodeId x) {
  const auto nbrs = graph.neighbors(x);
  const auto inc = graph.incident_edges(x);
  if (nbrs.empty()) return std::nullopt;
  // Neighbor lists are ascending, so strict > keeps the lowest id on ties.
  std::size_t best = 0;
  for (std::size_t s = 1; s < nbrs.size(); ++s) {
    if (state.weights[inc[s]] > state.weights[inc[best]]) best = s;
  }
  return nbrs[best];
}

// ---------------------------------------------------------------------------

InteractionSampler::InteractionSampler(const Graph& graph)
    : graph_(&graph), edge_taken_(graph.edge_count(), 0), best_(graph.node_count(), 0) {
  // At most two proposals per edge; keep the load factor under 1/2.
  std::size_t slots = 16;
  while (slots < 4 * graph.edge_count()) slots *= 2;
  stranger_slots_.assign(slots, 0);
  stranger_stamps_.assign(slots, 0);
}

const InteractionSet& InteractionSampler::sample(const MultiplexState& state, const SimParams& params,
                                                 Rng& rng) {
  const Graph& g = *graph_;
  auto& dyads = set_.dyads_;
  dyads.clear();
  if (++stamp_ == 0) {
    std::fill(stranger_stamps_.begin(), stranger_stamps_.end(), 0);
    stamp_ = 1;
  }
  std::fill(edge_taken_.begin(), edge_taken_.end(), 0);

  const auto edges = g.edges();
  const double p = params.p;
  const double gamma = params.gamma;

  for (EdgeId e = 0; e < edges.size(); ++e) {
    const bool strong = state.weights[e] > gamma;
    if (rng.bernoulli(strong ? p : 1.0 - p)) {
      edge_taken_[e] = 1;
      dyads.push_back({edges[e].u, edges[e].v, Origin::Direct, e});
    }
  }

  // Proposals use the weights as they stand before this step's games.
  constexpr NodeId kNone = static_cast<NodeId>(-1);
  for (NodeId i = 0; i < g.node_count(); ++i) best_[i] = best_neighbor(state, g, i).value_or(kNone);

  const std::size_t mask = stranger_slots_.size() - 1;
  const auto first_stranger_proposal = [&](std::uint64_t key) {
    std::size_t slot = static_cast<std::size_t>((key * 0x9e3779b97f4a7c15ULL) >> 20) & mask;
    while (stranger_stamps_[slot] == stamp_) {
      if (stranger_slots_[slot] == key) return false;
      slot = (slot + 1) & mask;
    }
    stranger_stamps_[slot] = stamp_;
    stranger_slots_[slot] = key;
    return true;
  };

  const auto recommend = [&](NodeId x, NodeId y) {
    if (!rng.bernoulli(p)) return;
    const NodeId z = best_[x];
    if (z == kNone || z == y) return;
    if (const auto e = g.find_edge(z, y)) {
      if (edge_taken_[*e]) return;
      edge_taken_[*e] = 1;
      dyads.push_back({std::min(z, y), std::max(z, y), Origin::Recommended, *e});
    } else if (first_stranger_proposal(pair_key(z, y))) {
      dyads.push_back({std::min(z, y), std::max(z, y), Origin::Recommended, kNoEdge});
    }
  };
  for (EdgeId e = 0; e < edges.size(); ++e) {
    if (!(state.weights[e] > gamma)) continue;
    recommend(edges[e].u, edges[e].v);
    recommend(edges[e].v, edges[e].u);
  }

  return set_;
}

InteractionSet sample_interactions(const MultiplexState& state, const Graph& graph, const SimParams& params,
                                   Rng& rng) {
  InteractionSampler sampler(graph);
  return sampler.sample(state, params, rng);
}

// ---------------------------------------------------------------------------

std::pair<double, double> game_payoffs(Strategy first, Strategy second, double b) {
  const bool c1 = first == Strategy::Cooperate;
  const bool c2 = second == Strategy::Cooperate;
  if (c1 && c2) return {1.0, 1.0};
  if (!c1 && c2) return {b, 0.0};
  if (c1 && !c2) return {0.0, b};
  return {0.0, 0.0};
}

void play_games(MultiplexState& state, const InteractionSet& interactions, double b) {
  for (const auto& d : interactions.dyads()) {
    const auto [pa, pb] = game_payoffs(state.strategies[d.a], state.strategies[d.b], b);
    state.payoffs[d.a] += pa;
    state.payoffs[d.b] += pb;
  }
}

double adapted_weight(double w, Strategy si, Strategy sj, double delta) {
  if (si != sj) return w;
  const double next = si == Strategy::Cooperate ? w + delta : w - delta;
  return std::clamp(next, 0.0, 1.0);
}

void update_weights(MultiplexState& state, const InteractionSet& interactions, double delta) {
  for (const auto& d : interactions.dyads()) {
    if (d.edge == kNoEdge) continue;
    auto& w = state.weights[d.edge];
    w = adapted_weight(w, state.strategies[d.a], state.strategies[d.b], delta);
  }
}

// ---------------------------------------------------------------------------

double relationship_index(const MultiplexState& state, const Graph& graph, NodeId i) {
  double sum = 0.0;
  for (EdgeId e : graph.incident_edges(i)) sum += state.weights[e];
  return sum;
}

std::vector<double> relationship_indices(const MultiplexState& state, const Graph& graph) {
  std::vector<double> out(graph.node_count());
  for (NodeId i = 0; i < out.size(); ++i) out[i] = relationship_index(state, graph, i);
  return out;
}

double fitness(const MultiplexState& state, const Graph& graph, NodeId i, double m) {
  return m * state.payoffs[i] + relationship_index(state, graph, i);
}

std::vector<double> selection_probabilities(const MultiplexState& state, const Graph& graph, NodeId i) {
  const double total = relationship_index(state, graph, i);
  if (!(total > 0.0)) return {};
  std::vector<double> probs;
  probs.reserve(graph.degree(i));
  for (EdgeId e : graph.incident_edges(i)) probs.push_back(state.weights[e] / total);
  return probs;
}

namespace {

std::optional<NodeId> select_model_given_index(const MultiplexState& state, const Graph& graph, NodeId i,
                                               double index, Rng& rng) {
  if (!(index > 0.0)) return std::nullopt;
  const auto nbrs = graph.neighbors(i);
  const auto inc = graph.incident_edges(i);
  const double target = rng.uniform() * index;
  double cumulative = 0.0;
  std::optional<NodeId> last_positive;
  for (std::size_t s = 0; s < nbrs.size(); ++s) {
    const double w = state.weights[inc[s]];
    if (w <= 0.0) continue;
    cumulative += w;
    last_positive = nbrs[s];
    if (target < cumulative) return nbrs[s];
  }
  // Rounding can leave target just above the running sum.
  return last_positive;
}

}  // namespace

std::optional<NodeId> select_model(const MultiplexState& state, const Graph& graph, NodeId i, Rng& rng) {
  return select_model_given_index(state, graph, i, relationship_index(state, graph, i), rng);
}

double fermi_adopt_prob(double f_self, double f_model, double kappa) {
  const double x = (f_self - f_model) / kappa;
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

void imitation_phase(MultiplexState& state, const Graph& graph, const SimParams& params, Rng& rng) {
  const std::size_t n = graph.node_count();
  const std::vector<double> index = relationship_indices(state, graph);
  std::vector<double> fit(n);
  for (NodeId i = 0; i < n; ++i) fit[i] = params.m * state.payoffs[i] + index[i];

  std::vector<Strategy> next = state.strategies;
  for (NodeId i = 0; i < n; ++i) {
    const auto model = select_model_given_index(state, graph, i, index[i], rng);
    if (!model) continue;
    const NodeId j = *model;
    if (state.strategies[j] == state.strategies[i]) continue;
    if (rng.bernoulli(fermi_adopt_prob(fit[i], fit[j], params.kappa))) next[i] = state.strategies[j];
  }
  state.strategies = std::move(next);
}

const InteractionSet& mc_step(MultiplexState& state, const Graph& graph, const SimParams& params,
                              InteractionSampler& sampler, Rng& rng) {
  std::fill(state.payoffs.begin(), state.payoffs.end(), 0.0);
  const InteractionSet& played = sampler.sample(state, params, rng);
  play_games(state, played, params.b);
  update_weights(state, played, params.delta);
  imitation_phase(state, graph, params, rng);
  return played;
}

}  // namespace coevo
