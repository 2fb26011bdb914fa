#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coevo/rng.hpp"

namespace coevo {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

/// Endpoints of an undirected edge, stored with u < v.
struct Edge {
  NodeId u;
  NodeId v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Edges are numbered in ascending (u, v) order with u < v, and every
/// neighbor list is sorted ascending. Each neighbor slot carries the id of
/// the connecting edge so per-edge data can live in a flat array.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Endpoint order and list order are free;
  /// self-loops, duplicate edges and out-of-range endpoints throw RangeError.
  Graph(std::size_t node_count, std::vector<std::pair<NodeId, NodeId>> edges);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edges_.size(); }

  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }

  std::span<const NodeId> neighbors(NodeId i) const {
    return {neighbors_.data() + offsets_[i], degree(i)};
  }
  std::span<const EdgeId> incident_edges(NodeId i) const {
    return {incident_.data() + offsets_[i], degree(i)};
  }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }

  /// Edge id joining a and b, if they are adjacent.
  std::optional<EdgeId> find_edge(NodeId a, NodeId b) const;

  std::size_t max_degree() const;
  bool is_connected() const;

  /// One `i j` line per edge, i < j, ascending.
  void write_edge_list(std::ostream& os) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<EdgeId> incident_;
  std::vector<Edge> edges_;
};

enum class TopologyKind { Honeycomb, Square, Triangular, WattsStrogatz };

/// Short names used on the command line and in CSV output: hl, sl, xl, ws.
std::string_view topology_name(TopologyKind kind);
TopologyKind parse_topology(std::string_view name);

/// Nominal degree of a topology (exact for lattices, mean for WS).
std::size_t nominal_degree(TopologyKind kind, std::size_t ws_degree);

/// Relationship-layer structure. Lattices use node_count = side_length².
struct Topology {
  TopologyKind kind = TopologyKind::Square;
  std::size_t node_count = 2500;
  std::size_t ws_degree = 10;
  double ws_rewire_prob = 0.5;

  std::size_t side_length() const;
  std::size_t degree() const { return nominal_degree(kind, ws_degree); }

  /// Throws RangeError naming the violated bound.
  void validate() const;

  friend bool operator==(const Topology&, const Topology&) = default;
};

/// Periodic L×L lattice, nodes numbered row-major (node = row·L + col).
///
/// Square: von Neumann neighborhood, degree 4.
/// Triangular: square plus the NE/SW diagonal, degree 6.
/// Honeycomb: brick wall. Every node keeps both horizontal neighbors and one
/// vertical neighbor, down when (row + col) is even and up otherwise; degree 3.
Graph build_lattice(TopologyKind kind, std::size_t side_length);

/// Watts–Strogatz small world on a ring of n nodes with k/2 neighbors per side.
/// Each edge's far endpoint is rewired with probability beta to a uniform
/// node; collisions (self-loop or existing edge) retry up to 100 times before
/// the original edge is kept, so the edge count stays n·k/2.
Graph build_watts_strogatz(std::size_t n, std::size_t k, double beta, Rng& rng);

Graph build_topology(const Topology& topology, Rng& rng);

}  // namespace coevo
