#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "tdiff/graph.hpp"
#include "tdiff/instance.hpp"

namespace tdiff {

using Time = std::uint32_t;

/// Marker for a node that never activates; compares greater than any time.
inline constexpr Time kNever = std::numeric_limits<Time>::max();

/// Activation time per node, in [1, n] or kNever. Not necessarily a
/// permutation: several nodes may share a timestep and steps may be empty.
class ActivationSequence {
 public:
  ActivationSequence() = default;
  explicit ActivationSequence(std::size_t n) : time_(n, kNever) {}
  explicit ActivationSequence(std::vector<Time> times) : time_(std::move(times)) {}

  /// order[k] activates at time k+1.
  static ActivationSequence from_order(std::span<const NodeId> order, std::size_t n);

  std::size_t size() const noexcept { return time_.size(); }
  Time operator[](NodeId u) const { return time_[u]; }
  Time& operator[](NodeId u) { return time_[u]; }
  const std::vector<Time>& times() const noexcept { return time_; }

  bool never(NodeId u) const { return time_[u] == kNever; }
  /// Times form a bijection onto {1..n}.
  bool is_permutation() const;
  /// Nodes with time <= t.
  std::size_t active_by(Time t) const;
  /// Distinct assigned times in ascending order (kNever excluded).
  std::vector<Time> distinct_times() const;

  friend bool operator==(const ActivationSequence&, const ActivationSequence&) = default;

 private:
  std::vector<Time> time_;
};

struct DiffusionResult {
  NodeSet final_active;
  /// One witnessing order: seeds first in id order, then each step
  /// activates the smallest-id eligible node.
  ActivationSequence activation_order;
  bool feasible = false;
};

/// Incremental cascade state; seeds may be added between fixpoint runs.
class Cascade {
 public:
  explicit Cascade(const ProblemInstance& p);

  void add_seed(NodeId u);
  /// Drives the activation rule to its least fixpoint.
  void run();

  bool active(NodeId u) const { return time_[u] != kNever; }
  std::size_t active_count() const noexcept { return active_count_; }
  bool all_active() const noexcept { return active_count_ == time_.size(); }
  ActivationSequence order() const { return ActivationSequence(time_); }
  NodeSet active_nodes() const;

  /// Size of the component u would join if it activated now (counting u).
  std::size_t joined_component_size(NodeId u);

 private:
  NodeId find(NodeId u);
  void activate(NodeId u);

  const ProblemInstance* p_;
  std::vector<Time> time_;
  std::vector<NodeId> parent_;
  std::vector<std::size_t> size_;
  std::size_t active_count_ = 0;
  Time clock_ = 0;
};

DiffusionResult simulate(const ProblemInstance& p, std::span<const NodeId> seeds);

/// Number of nodes active at the fixpoint.
std::size_t influence(const ProblemInstance& p, std::span<const NodeId> seeds);

struct SequenceReport {
  bool consistent = false;
  bool feasible = false;
  bool connected = false;
  std::vector<Threshold> good_thresholds;
  /// Every value of the threshold profile is good.
  bool all_good = false;
};

/// Checks a sequence against a seedset: consistency of non-seed activations,
/// feasibility (no node left at kNever), prefix connectivity, and which
/// thresholds are good (theta_j - 1 nodes active by time theta_j - 1).
SequenceReport validate_sequence(const ProblemInstance& p, std::span<const NodeId> seeds,
                                 const ActivationSequence& T);

/// Every time prefix {v : T(v) <= t} induces a connected subgraph.
bool is_prefix_connected(const Graph& g, const ActivationSequence& T);

/// Thresholds theta_j with at least theta_j - 1 nodes active by time theta_j - 1.
std::vector<Threshold> good_thresholds(const ProblemInstance& p, const ActivationSequence& T);

/// {u : T(u) < theta(u)}. Throws NotConnected if T is not prefix-connected.
NodeSet recover_seedset(const ProblemInstance& p, const ActivationSequence& T);

}  // namespace tdiff
