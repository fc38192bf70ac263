#pragma once

#include <cstddef>

#include "tdiff/diffusion.hpp"
#include "tdiff/instance.hpp"

namespace tdiff {

// Brute-force oracles. Subsets are enumerated by increasing cardinality and
// lexicographically within a cardinality, so the first hit is a minimum and
// ties resolve to the lexicographically smallest set.

inline constexpr std::size_t kDefaultExactCap = 20;
inline constexpr std::size_t kDefaultSequenceCap = 8;

/// Minimum feasible seedset. Throws CapExceeded when n > cap.
NodeSet opt_seedset(const ProblemInstance& p, std::size_t cap = kDefaultExactCap);

/// Minimum feasible seedset that also induces a connected subgraph.
NodeSet opt_connected_seedset(const ProblemInstance& p, std::size_t cap = kDefaultExactCap);

struct ConnectedSequenceOptimum {
  NodeSet seeds;
  ActivationSequence sequence;
};

/// Minimum |{u : T(u) < theta(u)}| over connected activation sequences,
/// found by depth-first search over prefix-connected permutations.
/// Throws DisconnectedGraph if no connected sequence exists.
ConnectedSequenceOptimum opt_connected_sequence(const ProblemInstance& p,
                                                std::size_t cap = kDefaultSequenceCap);

/// theta+ = min(n, ceil((1+eps) theta)).
ProblemInstance scale_thresholds_up(const ProblemInstance& p, double eps);
/// theta- = max(2, floor((1-eps) theta)).
ProblemInstance scale_thresholds_down(const ProblemInstance& p, double eps);

/// |opt(theta+)| / |opt(theta-)|, eps in (0, 1).
double condition_number(const ProblemInstance& p, double eps, std::size_t cap = kDefaultExactCap);

}  // namespace tdiff
