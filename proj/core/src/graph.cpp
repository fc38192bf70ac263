#include "tdiff/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "tdiff/errors.hpp"

namespace tdiff {

Graph::Graph(std::size_t node_count, std::span<const Edge> edges)
    : adjacency_(node_count) {
  for (const Edge& e : edges) {
    if (e.u >= node_count || e.v >= node_count) {
      throw InvariantViolation("edge endpoint out of range: " + std::to_string(e.u) +
                               " " + std::to_string(e.v));
    }
    if (e.u == e.v) {
      throw InvariantViolation("self-loop on node " + std::to_string(e.u));
    }
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw InvariantViolation("duplicate edge");
    }
  }
  edge_count_ = edges.size();
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

NodeSet make_node_set(std::vector<NodeId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<NodeSet> connected_components(const Graph& g, std::span<const NodeId> subset) {
  const std::size_t n = g.node_count();
  std::vector<char> member(n, 0);
  for (NodeId u : subset) member[u] = 1;

  std::vector<NodeSet> out;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack;
  for (NodeId start = 0; start < n; ++start) {
    if (!member[start] || seen[start]) continue;
    NodeSet piece;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      piece.push_back(u);
      for (NodeId v : g.neighbors(u)) {
        if (member[v] && !seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    std::sort(piece.begin(), piece.end());
    out.push_back(std::move(piece));
  }
  return out;
}

bool induces_connected(const Graph& g, std::span<const NodeId> subset) {
  if (subset.empty()) return false;
  return connected_components(g, subset).size() == 1;
}

std::vector<int> bfs_distances(const Graph& g, NodeId source) {
  std::vector<int> dist(g.node_count(), -1);
  std::queue<NodeId> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop();
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push(v);
      }
    }
  }
  return dist;
}

std::vector<NodeId> shortest_path(const Graph& g, NodeId from, std::span<const NodeId> targets) {
  const std::size_t n = g.node_count();
  std::vector<char> is_target(n, 0);
  for (NodeId t : targets) is_target[t] = 1;

  constexpr NodeId kNone = static_cast<NodeId>(-1);
  std::vector<NodeId> parent(n, kNone);
  std::vector<char> seen(n, 0);
  std::queue<NodeId> queue;
  seen[from] = 1;
  queue.push(from);
  NodeId hit = kNone;
  if (is_target[from]) hit = from;
  while (!queue.empty() && hit == kNone) {
    NodeId u = queue.front();
    queue.pop();
    for (NodeId v : g.neighbors(u)) {
      if (seen[v]) continue;
      seen[v] = 1;
      parent[v] = u;
      if (is_target[v]) {
        hit = v;
        break;
      }
      queue.push(v);
    }
  }
  if (hit == kNone) {
    throw NoPath("no path from node " + std::to_string(from) + " to target set");
  }
  std::vector<NodeId> path;
  for (NodeId v = hit; v != kNone; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

bool is_connected(const Graph& g) {
  if (g.node_count() == 0) return true;
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

std::size_t diameter(const Graph& g) {
  std::size_t best = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    auto dist = bfs_distances(g, s);
    for (int d : dist) {
      if (d < 0) throw DisconnectedGraph("diameter of a disconnected graph");
      best = std::max(best, static_cast<std::size_t>(d));
    }
  }
  return best;
}

std::vector<double> betweenness(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> score(n, 0.0);
  std::vector<std::vector<NodeId>> preds(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<int> dist(n);
  std::vector<NodeId> order;
  order.reserve(n);

  for (NodeId s = 0; s < n; ++s) {
    for (auto& p : preds) p.clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    order.clear();

    sigma[s] = 1.0;
    dist[s] = 0;
    std::queue<NodeId> queue;
    queue.push(s);
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop();
      order.push_back(v);
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId w = *it;
      for (NodeId v : preds[w]) {
        delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) score[w] += delta[w];
    }
  }
  // Every unordered pair was accumulated from both endpoints.
  for (double& x : score) x /= 2.0;
  return score;
}

}  // namespace tdiff
