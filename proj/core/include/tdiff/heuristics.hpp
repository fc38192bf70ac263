#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "tdiff/instance.hpp"

namespace tdiff {

/// Greedy seeding criteria. Each round seeds the best inactive node under
/// the criterion and lets the cascade run; ties go to the smallest id.
enum class HeuristicKind {
  Degree,           // highest degree in G
  DegreeThreshold,  // highest degree(G) * theta
  Betweenness,      // highest betweenness in G (computed once)
  DegreeDiscounted, // highest degree within the inactive-induced subgraph
  DegreeConnected,  // highest degree among nodes adjacent to the active set
};

inline constexpr std::array<HeuristicKind, 5> kAllHeuristics = {
    HeuristicKind::Degree, HeuristicKind::DegreeThreshold, HeuristicKind::Betweenness,
    HeuristicKind::DegreeDiscounted, HeuristicKind::DegreeConnected};

std::string_view to_string(HeuristicKind kind);
std::optional<HeuristicKind> parse_heuristic(std::string_view name);

/// Runs the greedy loop until every node is active. The result is always
/// feasible.
NodeSet run_heuristic(const ProblemInstance& p, HeuristicKind kind);

}  // namespace tdiff
