#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tdiff/instance.hpp"

namespace tdiff {

/// Grows from a single edge; each new node draws k uniformly from
/// `outdeg_choices` and links to min(k, existing) distinct earlier nodes
/// chosen with probability proportional to degree.
Graph preferential_attachment(std::size_t n, std::span<const std::size_t> outdeg_choices,
                              std::uint64_t rng_seed);

/// Values {max(2,c), 2c, ..., ceil(n/c) c}, clamped to n and deduplicated.
std::vector<Threshold> threshold_support(std::size_t n, std::size_t step_c);

/// I.i.d. uniform thresholds over threshold_support(n, step_c).
ProblemInstance random_thresholds(const Graph& g, std::size_t step_c, std::uint64_t rng_seed);

/// Random spanning tree plus each remaining pair with probability p.
Graph random_connected_graph(std::size_t n, double p, std::uint64_t rng_seed);

/// Graph with each pair present with probability p (may be disconnected).
Graph random_graph(std::size_t n, double p, std::uint64_t rng_seed);

/// Thresholds uniform over [2, n].
ProblemInstance random_instance(const Graph& g, std::uint64_t rng_seed);

struct SetCoverGadget {
  ProblemInstance instance;
  /// Node of set k is k; copy c of element e is m + e(m+1) + c.
  std::size_t set_count = 0;
  std::size_t cover_opt = 0;  // brute-force minimum cover size
};

/// Elements are 0..universe_size-1. Throws UncoverableUniverse.
SetCoverGadget setcover_gadget(std::size_t universe_size,
                               const std::vector<std::vector<std::size_t>>& sets);

/// Smallest number of sets covering the universe, by enumeration.
std::size_t min_set_cover(std::size_t universe_size,
                          const std::vector<std::vector<std::size_t>>& sets);

/// Path v_1..v_{2r+1}, node i-1 holds v_i.
ProblemInstance path_barrier(std::size_t r, bool powers_of_two = false);

/// Root 0, seed candidates 1..h, tail j of chain i at h + 1 + (i-1)w + (j-1).
ProblemInstance gap_simple(std::size_t h, std::size_t w);

/// Root 0, seed candidates 1..ell, blockers ell+1..2ell, tails from 2ell+1.
/// Throws BadParameters unless ell divides w.
ProblemInstance gap_flow(std::size_t ell, std::size_t w);

struct WitnessPair {
  ProblemInstance instance;
  NodeSet s1;
  NodeSet s2;
};

/// 2n+1 nodes: two n-cliques and a hub adjacent to all; f(S1)+f(S2) < f(S1 u S2).
WitnessPair nonsubmodular_pair(std::size_t n);

/// n nodes; f(S1)+f(S2) > f(S1 u S2).
WitnessPair nonsupermodular_pair(std::size_t n);

/// Six-node example graph, nodes A..F as 0..5.
ProblemInstance worked_example();

}  // namespace tdiff
