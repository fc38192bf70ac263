#include "tdiff/exact.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "tdiff/errors.hpp"

namespace tdiff {
namespace {

void check_cap(const ProblemInstance& p, std::size_t cap) {
  if (p.node_count() > cap) {
    throw CapExceeded("exact search limited to " + std::to_string(cap) + " nodes, instance has " +
                      std::to_string(p.node_count()));
  }
}

// Visits k-subsets of {0..n-1} in lexicographic order until `visit` returns true.
bool for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const NodeSet&)>& visit) {
  NodeSet pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = static_cast<NodeId>(i);
  for (;;) {
    if (visit(pick)) return true;
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

NodeSet smallest_feasible(const ProblemInstance& p, bool require_connected) {
  const std::size_t n = p.node_count();
  NodeSet found;
  for (std::size_t k = 1; k <= n; ++k) {
    bool hit = for_each_subset(n, k, [&](const NodeSet& s) {
      if (require_connected && !induces_connected(p.graph(), s)) return false;
      if (!simulate(p, s).feasible) return false;
      found = s;
      return true;
    });
    if (hit) return found;
  }
  // S = V is always feasible, so only the connected variant gets here.
  throw DisconnectedGraph("no connected feasible seedset exists");
}

}  // namespace

NodeSet opt_seedset(const ProblemInstance& p, std::size_t cap) {
  check_cap(p, cap);
  return smallest_feasible(p, false);
}

NodeSet opt_connected_seedset(const ProblemInstance& p, std::size_t cap) {
  check_cap(p, cap);
  return smallest_feasible(p, true);
}

ConnectedSequenceOptimum opt_connected_sequence(const ProblemInstance& p, std::size_t cap) {
  check_cap(p, cap);
  const Graph& g = p.graph();
  const std::size_t n = p.node_count();

  std::vector<NodeId> order;
  std::vector<char> placed(n, 0);
  std::vector<int> placed_neighbors(n, 0);
  std::size_t best = n + 1;
  std::vector<NodeId> best_order;

  // In a prefix-connected sequence the component of the node placed at
  // step t is the whole prefix, so a non-seed is consistent iff t >= theta.
  std::function<void(std::size_t)> dfs = [&](std::size_t seeds) {
    if (seeds >= best) return;
    const std::size_t t = order.size() + 1;
    if (order.size() == n) {
      best = seeds;
      best_order = order;
      return;
    }
    for (NodeId u = 0; u < n; ++u) {
      if (placed[u]) continue;
      if (!order.empty() && placed_neighbors[u] == 0) continue;
      const std::size_t cost = (t < p.theta(u)) ? 1 : 0;
      placed[u] = 1;
      order.push_back(u);
      for (NodeId v : g.neighbors(u)) ++placed_neighbors[v];
      dfs(seeds + cost);
      for (NodeId v : g.neighbors(u)) --placed_neighbors[v];
      order.pop_back();
      placed[u] = 0;
    }
  };
  dfs(0);

  if (best_order.empty()) throw DisconnectedGraph("graph admits no connected activation sequence");
  ConnectedSequenceOptimum result;
  result.sequence = ActivationSequence::from_order(best_order, n);
  result.seeds = recover_seedset(p, result.sequence);
  return result;
}

namespace {
// Guards against (1.2 * 5 = 6.000000000000001)-style representation error.
constexpr double kRoundingSlack = 1e-9;
}  // namespace

ProblemInstance scale_thresholds_up(const ProblemInstance& p, double eps) {
  const auto n = static_cast<double>(p.node_count());
  std::vector<Threshold> theta = p.thresholds();
  for (auto& t : theta) {
    double v = std::ceil((1.0 + eps) * t - kRoundingSlack);
    t = static_cast<Threshold>(std::clamp(v, 2.0, n));
  }
  return ProblemInstance(p.graph(), std::move(theta));
}

ProblemInstance scale_thresholds_down(const ProblemInstance& p, double eps) {
  const auto n = static_cast<double>(p.node_count());
  std::vector<Threshold> theta = p.thresholds();
  for (auto& t : theta) {
    double v = std::floor((1.0 - eps) * t + kRoundingSlack);
    t = static_cast<Threshold>(std::clamp(v, 2.0, n));
  }
  return ProblemInstance(p.graph(), std::move(theta));
}

double condition_number(const ProblemInstance& p, double eps, std::size_t cap) {
  if (!(eps >= 0.0 && eps < 1.0)) throw BadParameters("condition number needs eps in [0, 1)");
  check_cap(p, cap);
  const auto plus = opt_seedset(scale_thresholds_up(p, eps), cap).size();
  const auto minus = opt_seedset(scale_thresholds_down(p, eps), cap).size();
  return static_cast<double>(plus) / static_cast<double>(minus);
}

}  // namespace tdiff
