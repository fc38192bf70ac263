#pragma once

// Slow reference implementations used only by tests.

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <vector>

#include "tdiff/tdiff.hpp"

namespace tdiff::oracle {

/// Size of u's component in the subgraph induced by `active` plus u.
inline std::size_t component_with(const Graph& g, const std::vector<char>& active, NodeId u) {
  std::vector<char> seen(g.node_count(), 0);
  std::queue<NodeId> q;
  q.push(u);
  seen[u] = 1;
  std::size_t size = 0;
  while (!q.empty()) {
    NodeId a = q.front();
    q.pop();
    ++size;
    for (NodeId b : g.neighbors(a))
      if (!seen[b] && active[b]) {
        seen[b] = 1;
        q.push(b);
      }
  }
  return size;
}

/// Fixpoint of the activation rule, activating one uniformly chosen
/// eligible node at a time.
inline NodeSet random_order_fixpoint(const ProblemInstance& p, std::span<const NodeId> seeds,
                                     std::mt19937_64& rng) {
  const Graph& g = p.graph();
  std::vector<char> active(p.node_count(), 0);
  for (NodeId s : seeds) active[s] = 1;
  for (;;) {
    std::vector<NodeId> eligible;
    for (NodeId u = 0; u < p.node_count(); ++u)
      if (!active[u] && component_with(g, active, u) >= p.theta(u)) eligible.push_back(u);
    if (eligible.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
    active[eligible[pick(rng)]] = 1;
  }
  NodeSet out;
  for (NodeId u = 0; u < p.node_count(); ++u)
    if (active[u]) out.push_back(u);
  return out;
}

inline bool feasible(const ProblemInstance& p, std::span<const NodeId> seeds) {
  std::mt19937_64 rng(0);
  return random_order_fixpoint(p, seeds, rng).size() == p.node_count();
}

/// Smallest feasible seedset size by plain bitmask enumeration.
inline std::size_t min_seedset_size(const ProblemInstance& p, bool connected = false) {
  std::size_t n = p.node_count();
  std::size_t best = n;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::size_t k = static_cast<std::size_t>(std::popcount(mask));
    if (k >= best) continue;
    NodeSet s;
    for (NodeId u = 0; u < n; ++u)
      if (mask >> u & 1) s.push_back(u);
    if (connected && !induces_connected(p.graph(), s)) continue;
    if (feasible(p, s)) best = k;
  }
  return best;
}

/// Calls f(order) for every permutation starting at `first` whose prefixes
/// all induce connected subgraphs.
template <class F>
void for_each_connected_order(const Graph& g, NodeId first, F&& f) {
  std::size_t n = g.node_count();
  std::vector<NodeId> order{first};
  std::vector<char> used(n, 0);
  used[first] = 1;
  auto rec = [&](auto&& self) -> void {
    if (order.size() == n) {
      f(order);
      return;
    }
    for (NodeId u = 0; u < n; ++u) {
      if (used[u]) continue;
      bool touches = false;
      for (NodeId v : g.neighbors(u)) touches = touches || used[v];
      if (!touches) continue;
      used[u] = 1;
      order.push_back(u);
      self(self);
      order.pop_back();
      used[u] = 0;
    }
  };
  rec(rec);
}

/// Random instance with n in [lo, hi]; connected when asked.
inline ProblemInstance random_small_instance(std::mt19937_64& rng, std::size_t lo, std::size_t hi,
                                             bool connected) {
  std::uniform_int_distribution<std::size_t> size(lo, hi);
  std::uniform_real_distribution<double> dens(0.1, 0.7);
  std::size_t n = size(rng);
  std::uint64_t seed = rng();
  Graph g = connected ? random_connected_graph(n, dens(rng), seed) : random_graph(n, dens(rng), seed);
  return random_instance(g, rng());
}

/// Path 0-1-...-(n-1).
inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId u = 0; u + 1 < n; ++u) e.push_back({u, u + 1});
  return Graph(n, e);
}

inline Graph clique_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) e.push_back({u, v});
  return Graph(n, e);
}

inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId v = 1; v <= leaves; ++v) e.push_back({0, v});
  return Graph(leaves + 1, e);
}

/// Upper quantile bound check: with k successes in m trials, is p still
/// plausible at one-sided level `z` (normal approximation with continuity
/// correction)?
inline bool binomial_not_below(std::size_t k, std::size_t m, double p, double z) {
  double mean = static_cast<double>(m) * p;
  double sd = std::sqrt(static_cast<double>(m) * p * (1.0 - p));
  return static_cast<double>(k) + 0.5 >= mean - z * sd;
}

}  // namespace tdiff::oracle
