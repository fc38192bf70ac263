#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace tdiff {

using NodeId = std::uint32_t;

/// Sorted, duplicate-free list of node ids.
using NodeSet = std::vector<NodeId>;

struct Edge {
  NodeId u;
  NodeId v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on nodes 0..n-1.
///
/// Adjacency lists are kept sorted so every traversal in the library visits
/// neighbors in ascending id order; results are reproducible run to run.
/// Immutable after construction.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Throws InvariantViolation on
  /// self-loops, out-of-range endpoints, or duplicate edges.
  Graph(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::span<const NodeId> neighbors(NodeId u) const { return adjacency_[u]; }
  std::size_t degree(NodeId u) const { return adjacency_[u].size(); }
  bool has_edge(NodeId u, NodeId v) const;

  /// Canonical edge list: u < v, lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Normalizes an arbitrary id list into a NodeSet.
NodeSet make_node_set(std::vector<NodeId> ids);

/// Maximal connected pieces of the subgraph induced by `subset`. Each piece
/// is sorted; pieces are ordered by their smallest member.
std::vector<NodeSet> connected_components(const Graph& g, std::span<const NodeId> subset);

/// True when `subset` is non-empty and induces a connected subgraph.
bool induces_connected(const Graph& g, std::span<const NodeId> subset);

/// Hop distances from `source`; unreachable nodes get -1.
std::vector<int> bfs_distances(const Graph& g, NodeId source);

/// Minimum-hop path from `from` to the closest member of `targets`, both
/// endpoints included. BFS expands neighbors in ascending id order and the
/// first target discovered wins. Throws NoPath if no target is reachable.
std::vector<NodeId> shortest_path(const Graph& g, NodeId from, std::span<const NodeId> targets);

/// Longest shortest path. Throws DisconnectedGraph for >= 2 components.
std::size_t diameter(const Graph& g);

bool is_connected(const Graph& g);

/// Unnormalized shortest-path betweenness (Brandes), each unordered pair
/// counted once.
std::vector<double> betweenness(const Graph& g);

}  // namespace tdiff
