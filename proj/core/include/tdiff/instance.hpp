#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tdiff/graph.hpp"

namespace tdiff {

using Threshold = std::uint32_t;

/// A graph together with a threshold for every node.
///
/// A node activates once the connected component containing it, in the
/// subgraph induced by the active nodes plus itself, reaches its threshold.
/// Thresholds lie in [2, n].
class ProblemInstance {
 public:
  ProblemInstance() = default;

  /// Throws InvariantViolation when a threshold is outside [2, n] or the
  /// threshold count does not match the graph.
  ProblemInstance(Graph graph, std::vector<Threshold> theta);

  const Graph& graph() const noexcept { return graph_; }
  std::size_t node_count() const noexcept { return graph_.node_count(); }
  Threshold theta(NodeId u) const { return theta_[u]; }
  const std::vector<Threshold>& thresholds() const noexcept { return theta_; }

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;

 private:
  Graph graph_;
  std::vector<Threshold> theta_;
};

/// Distinct threshold values in ascending order.
struct ThresholdProfile {
  std::vector<Threshold> values;
  std::size_t count() const noexcept { return values.size(); }
};

ThresholdProfile threshold_profile(const ProblemInstance& p);

// Text format:
//   tdiff 1
//   n <N>
//   m <M>
//   e <u> <v>        (M lines, 0 <= u < v < N)
//   t <u> <theta>    (N lines, increasing u)
// Lines starting with '#' and blank lines are ignored.

/// Throws ParseError (with line number) or InvariantViolation.
ProblemInstance load_instance(std::string_view text);

/// Canonical form: edges sorted with u < v, thresholds in id order.
std::string save_instance(const ProblemInstance& p);

ProblemInstance read_instance_file(const std::filesystem::path& path);
void write_instance_file(const std::filesystem::path& path, const ProblemInstance& p);

/// The geometric grid {floor((1+eps)^q)}, with values below 2 dropped,
/// duplicates removed, and generation stopped at the first value >= n.
std::vector<Threshold> bucket_grid(std::size_t n, double eps);

/// Rounds every threshold up to the next grid value (clamped to n).
ProblemInstance bucket_thresholds(const ProblemInstance& p, double eps);

}  // namespace tdiff
