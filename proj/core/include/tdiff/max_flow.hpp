#pragma once

#include <cstddef>
#include <vector>

namespace tdiff {

/// Dinic max-flow on real capacities. Flow persists between run() calls, so
/// raising capacities and running again continues from the previous flow.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes, double eps = 1e-12);

  std::size_t node_count() const noexcept { return adj_.size(); }
  std::size_t add_node();
  /// Returns the arc id; capacity may be kInfinity.
  std::size_t add_arc(std::size_t from, std::size_t to, double capacity);
  void set_capacity(std::size_t arc, double capacity);
  double capacity(std::size_t arc) const { return arcs_[2 * arc].cap; }
  double flow(std::size_t arc) const { return arcs_[2 * arc].flow; }

  /// Augments until no s-t path remains; returns the total s-t flow value.
  double run(std::size_t s, std::size_t t);
  void clear_flow();

  /// Nodes reachable from s in the residual graph.
  std::vector<char> residual_reachable(std::size_t s) const;
  /// Nodes that can still reach t in the residual graph.
  std::vector<char> residual_coreachable(std::size_t t) const;

 private:
  struct Arc {
    std::size_t to;
    double cap;
    double flow;
  };
  double residual(std::size_t e) const { return arcs_[e].cap - arcs_[e].flow; }
  bool build_levels(std::size_t s, std::size_t t);
  double augment(std::size_t u, std::size_t t, double limit);

  double eps_;
  double total_ = 0.0;
  std::vector<Arc> arcs_;  // arc 2k forward, 2k+1 reverse
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace tdiff
