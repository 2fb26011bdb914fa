#include "coevo/graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "coevo/errors.hpp"

namespace coevo {

Graph::Graph(std::size_t node_count, std::vector<std::pair<NodeId, NodeId>> edges) {
  for (auto& [a, b] : edges) {
    if (a >= node_count || b >= node_count) {
      throw RangeError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                       ") has an endpoint outside [0," + std::to_string(node_count) + ")");
    }
    if (a == b) {
      throw RangeError("self-loop at node " + std::to_string(a));
    }
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw RangeError("duplicate edge (" + std::to_string(dup->first) + "," +
                     std::to_string(dup->second) + ")");
  }

  edges_.reserve(edges.size());
  for (const auto& [a, b] : edges) edges_.push_back({a, b});

  offsets_.assign(node_count + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < node_count; ++i) offsets_[i + 1] += offsets_[i];

  neighbors_.resize(2 * edges_.size());
  incident_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v), so each u-list fills ascending in v. A v-list
  // receives u's in ascending order, but interleaved with its own larger
  // neighbors; sort every list afterwards.
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    neighbors_[fill[e.u]] = e.v;
    incident_[fill[e.u]++] = id;
    neighbors_[fill[e.v]] = e.u;
    incident_[fill[e.v]++] = id;
  }
  std::vector<std::pair<NodeId, EdgeId>> scratch;
  for (std::size_t i = 0; i < node_count; ++i) {
    const std::size_t begin = offsets_[i];
    const std::size_t end = offsets_[i + 1];
    scratch.clear();
    for (std::size_t s = begin; s < end; ++s) scratch.emplace_back(neighbors_[s], incident_[s]);
    std::sort(scratch.begin(), scratch.end());
    for (std::size_t s = begin; s < end; ++s) {
      neighbors_[s] = scratch[s - begin].first;
      incident_[s] = scratch[s - begin].second;
    }
  }
}

std::optional<EdgeId> Graph::find_edge(NodeId a, NodeId b) const {
  const auto nbrs = neighbors(a);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), b);
  if (it == nbrs.end() || *it != b) return std::nullopt;
  return incident_edges(a)[static_cast<std::size_t>(it - nbrs.begin())];
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (NodeId i = 0; i < node_count(); ++i) best = std::max(best, degree(i));
  return best;
}

bool Graph::is_connected() const {
  const std::size_t n = node_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    for (NodeId y : neighbors(x)) {
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == n;
}

void Graph::write_edge_list(std::ostream& os) const {
  for (const auto& e : edges_) os << e.u << ' ' << e.v << '\n';
}

// ---------------------------------------------------------------------------

std::string_view topology_name(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::Honeycomb: return "hl";
    case TopologyKind::Square: return "sl";
    case TopologyKind::Triangular: return "xl";
    case TopologyKind::WattsStrogatz: return "ws";
  }
  return "?";
}

TopologyKind parse_topology(std::string_view name) {
  if (name == "hl") return TopologyKind::Honeycomb;
  if (name == "sl") return TopologyKind::Square;
  if (name == "xl") return TopologyKind::Triangular;
  if (name == "ws") return TopologyKind::WattsStrogatz;
  throw RangeError("topology must be one of hl, sl, xl, ws (got '" + std::string(name) + "')");
}

std::size_t nominal_degree(TopologyKind kind, std::size_t ws_degree) {
  switch (kind) {
    case TopologyKind::Honeycomb: return 3;
    case TopologyKind::Square: return 4;
    case TopologyKind::Triangular: return 6;
    case TopologyKind::WattsStrogatz: return ws_degree;
  }
  return 0;
}

std::size_t Topology::side_length() const {
  auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(node_count))));
  while (side * side > node_count) --side;
  while ((side + 1) * (side + 1) <= node_count) ++side;
  return side;
}

void Topology::validate() const {
  if (kind == TopologyKind::WattsStrogatz) {
    if (ws_degree == 0 || ws_degree % 2 != 0) {
      throw RangeError("ws degree k must be even and positive (got " + std::to_string(ws_degree) + ")");
    }
    if (ws_degree >= node_count) {
      throw RangeError("ws degree k must be < n (k=" + std::to_string(ws_degree) +
                       ", n=" + std::to_string(node_count) + ")");
    }
    if (!(ws_rewire_prob >= 0.0 && ws_rewire_prob <= 1.0)) {
      throw RangeError("ws rewiring probability must lie in [0,1]");
    }
    return;
  }
  const std::size_t side = side_length();
  if (side * side != node_count) {
    throw RangeError("lattice node count n must be a perfect square (got " +
                     std::to_string(node_count) + ")");
  }
  if (side < 4) {
    throw RangeError("lattice side length must be >= 4 (got " + std::to_string(side) + ")");
  }
  if (kind == TopologyKind::Honeycomb && side % 2 != 0) {
    throw RangeError("honeycomb side length must be even (got " + std::to_string(side) + ")");
  }
}

Graph build_lattice(TopologyKind kind, std::size_t side_length) {
  if (kind == TopologyKind::WattsStrogatz) {
    throw RangeError("build_lattice: watts-strogatz is not a lattice");
  }
  Topology{kind, side_length * side_length}.validate();

  const std::size_t L = side_length;
  const auto at = [L](std::size_t r, std::size_t c) {
    return static_cast<NodeId>((r % L) * L + (c % L));
  };

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(L * L * nominal_degree(kind, 0) / 2);
  for (std::size_t r = 0; r < L; ++r) {
    for (std::size_t c = 0; c < L; ++c) {
      const NodeId self = at(r, c);
      edges.emplace_back(self, at(r, c + 1));
      switch (kind) {
        case TopologyKind::Square:
          edges.emplace_back(self, at(r + 1, c));
          break;
        case TopologyKind::Triangular:
          edges.emplace_back(self, at(r + 1, c));
          edges.emplace_back(self, at(r + L - 1, c + 1));  // NE diagonal
          break;
        case TopologyKind::Honeycomb:
          // Odd-parity nodes get their vertical edge from the node above.
          if ((r + c) % 2 == 0) edges.emplace_back(self, at(r + 1, c));
          break;
        case TopologyKind::WattsStrogatz:
          break;
      }
    }
  }
  return Graph(L * L, std::move(edges));
}

Graph build_watts_strogatz(std::size_t n, std::size_t k, double beta, Rng& rng) {
  Topology{TopologyKind::WattsStrogatz, n, k, beta}.validate();
  constexpr int kMaxRetries = 100;

  std::vector<std::vector<NodeId>> adj(n);
  const auto linked = [&adj](NodeId a, NodeId b) {
    return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
  };
  const auto unlink = [&adj](NodeId a, NodeId b) {
    auto& list = adj[a];
    list.erase(std::find(list.begin(), list.end(), b));
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j <= k / 2; ++j) {
      const auto a = static_cast<NodeId>(i);
      const auto b = static_cast<NodeId>((i + j) % n);
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  }

  // Visit ring edges by offset, then by node, rewiring the far endpoint.
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!rng.bernoulli(beta)) continue;
      const auto u = static_cast<NodeId>(i);
      const auto v = static_cast<NodeId>((i + j) % n);
      for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        const auto w = static_cast<NodeId>(rng.below(n));
        if (w == u || linked(u, w)) continue;
        unlink(u, v);
        unlink(v, u);
        adj[u].push_back(w);
        adj[w].push_back(u);
        break;
      }
    }
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(n * k / 2);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b : adj[a]) {
      if (a < b) edges.emplace_back(a, b);
    }
  }
  return Graph(n, std::move(edges));
}

Graph build_topology(const Topology& topology, Rng& rng) {
  topology.validate();
  if (topology.kind == TopologyKind::WattsStrogatz) {
    return build_watts_strogatz(topology.node_count, topology.ws_degree, topology.ws_rewire_prob, rng);
  }
  return build_lattice(topology.kind, topology.side_length());
}

}  // namespace coevo
