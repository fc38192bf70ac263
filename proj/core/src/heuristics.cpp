#include "tdiff/heuristics.hpp"

#include <vector>

#include "tdiff/diffusion.hpp"

namespace tdiff {

std::string_view to_string(HeuristicKind kind) {
  switch (kind) {
    case HeuristicKind::Degree: return "degree";
    case HeuristicKind::DegreeThreshold: return "degree-threshold";
    case HeuristicKind::Betweenness: return "betweenness";
    case HeuristicKind::DegreeDiscounted: return "degree-discounted";
    case HeuristicKind::DegreeConnected: return "degree-connected";
  }
  return "unknown";
}

std::optional<HeuristicKind> parse_heuristic(std::string_view name) {
  for (HeuristicKind kind : kAllHeuristics) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

namespace {

// Highest score among inactive nodes that pass `eligible`; ties -> smallest id.
template <class Score, class Eligible>
std::optional<NodeId> best_inactive(const Cascade& cascade, std::size_t n, Score score,
                                    Eligible eligible) {
  std::optional<NodeId> best;
  double best_score = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    if (cascade.active(u) || !eligible(u)) continue;
    const double s = score(u);
    if (!best || s > best_score) {
      best = u;
      best_score = s;
    }
  }
  return best;
}

}  // namespace

NodeSet run_heuristic(const ProblemInstance& p, HeuristicKind kind) {
  const Graph& g = p.graph();
  const std::size_t n = p.node_count();
  Cascade cascade(p);

  std::vector<double> static_score(n, 0.0);
  switch (kind) {
    case HeuristicKind::Degree:
    case HeuristicKind::DegreeConnected:
      for (NodeId u = 0; u < n; ++u) static_score[u] = static_cast<double>(g.degree(u));
      break;
    case HeuristicKind::DegreeThreshold:
      for (NodeId u = 0; u < n; ++u) {
        static_score[u] = static_cast<double>(g.degree(u)) * static_cast<double>(p.theta(u));
      }
      break;
    case HeuristicKind::Betweenness:
      static_score = betweenness(g);
      break;
    case HeuristicKind::DegreeDiscounted:
      break;
  }

  auto any = [](NodeId) { return true; };
  auto by_static = [&](NodeId u) { return static_score[u]; };
  auto inactive_degree = [&](NodeId u) {
    double d = 0.0;
    for (NodeId v : g.neighbors(u)) d += cascade.active(v) ? 0.0 : 1.0;
    return d;
  };
  auto touches_active = [&](NodeId u) {
    for (NodeId v : g.neighbors(u)) {
      if (cascade.active(v)) return true;
    }
    return false;
  };

  NodeSet seeds;
  while (!cascade.all_active()) {
    std::optional<NodeId> pick;
    switch (kind) {
      case HeuristicKind::DegreeDiscounted:
        pick = best_inactive(cascade, n, inactive_degree, any);
        break;
      case HeuristicKind::DegreeConnected:
        pick = best_inactive(cascade, n, by_static, touches_active);
        // Nothing adjacent to the active set (first round, or the active
        // set has no inactive neighbors): fall back to global degree.
        if (!pick) pick = best_inactive(cascade, n, by_static, any);
        break;
      default:
        pick = best_inactive(cascade, n, by_static, any);
        break;
    }
    seeds.push_back(*pick);
    cascade.add_seed(*pick);
    cascade.run();
  }
  return make_node_set(std::move(seeds));
}

}  // namespace tdiff
