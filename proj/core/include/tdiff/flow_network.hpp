#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tdiff/diffusion.hpp"
#include "tdiff/instance.hpp"
#include "tdiff/max_flow.hpp"

namespace tdiff {

/// n x n fractional assignment, x(i, t) with t in [1, n].
class AssignmentMatrix {
 public:
  AssignmentMatrix() = default;
  explicit AssignmentMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  /// Indicator matrix of a sequence; never-activated nodes get an all-zero row.
  static AssignmentMatrix from_sequence(const ActivationSequence& T);

  std::size_t size() const noexcept { return n_; }
  double operator()(NodeId i, Time t) const { return data_[index(i, t)]; }
  double& operator()(NodeId i, Time t) { return data_[index(i, t)]; }
  /// Sum of x(i, tau) for lo <= tau <= hi.
  double window(NodeId i, Time lo, Time hi) const;
  double prefix(NodeId i, Time t) const { return window(i, 1, t); }
  std::size_t index(NodeId i, Time t) const { return static_cast<std::size_t>(i) * n_ + (t - 1); }
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// sum over cut of x(j, tau) >= sum over theta(i) <= tau <= t of x(i, tau)
struct CutConstraint {
  std::vector<std::pair<NodeId, Time>> cut;
  NodeId sink_node = 0;
  Time sink_time = 0;

  double lhs(const AssignmentMatrix& x) const;
  double rhs(const ProblemInstance& p, const AssignmentMatrix& x) const;
  /// rhs - lhs; positive when x violates the constraint.
  double violation(const ProblemInstance& p, const AssignmentMatrix& x) const;
};

struct FlowCheck {
  NodeId node = 0;
  Time time = 0;
  double flow = 0.0;
  double demand = 0.0;
  /// Present iff the check failed: the minimum cut closest to the source.
  std::optional<CutConstraint> cut;
  /// The minimum cut closest to the sink, when it differs from `cut`.
  std::optional<CutConstraint> back_cut;
  bool feasible() const noexcept { return !cut.has_value(); }
};

enum class FlowLayout {
  DelayChain,  // O(n|E| + n^2) arcs
  Dense,       // X-(i,t) -> X+(i',t') for every later t'
};

/// Time-expanded network for one assignment. Source is X(source, 1); the
/// (i, t) sink collects X(i, tau) for theta(i) <= tau <= t.
class FlowNetwork {
 public:
  FlowNetwork(const ProblemInstance& p, const AssignmentMatrix& x, NodeId source,
              FlowLayout layout = FlowLayout::DelayChain);

  /// Requires t >= theta(i).
  FlowCheck check(NodeId i, Time t, double tol = 1e-7) const;
  /// All sinks of node i, t = theta(i)..n, reusing flow between them.
  std::vector<FlowCheck> check_node(NodeId i, double tol = 1e-7) const;
  double max_flow_value(NodeId i, Time t) const;

  std::size_t arc_count() const;
  NodeId source() const noexcept { return source_; }

 private:
  std::size_t plus(NodeId i, Time t) const { return 2 * x_.index(i, t); }
  std::size_t minus(NodeId i, Time t) const { return plus(i, t) + 1; }
  FlowCheck finish(MaxFlow& net, NodeId i, Time t, double tol) const;

  const ProblemInstance* p_;
  AssignmentMatrix x_;
  NodeId source_;
  std::size_t sink_ = 0;
  MaxFlow base_{0};
  std::vector<std::size_t> sink_arc_;  // by x_.index(i, t)
};

}  // namespace tdiff
