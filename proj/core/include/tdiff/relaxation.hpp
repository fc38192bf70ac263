#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdiff/flow_network.hpp"
#include "tdiff/lp.hpp"

namespace tdiff {

/// Variable index of x(i, t) in models produced by build_base_lp.
inline std::size_t lp_var(std::size_t n, NodeId i, Time t) {
  return static_cast<std::size_t>(i) * n + (t - 1);
}

/// Relaxed IP: n^2 variables in [0,1], 2n permutation rows followed by
/// n(n-1) connectivity rows (i-major, t ascending), x(first, 1) fixed to 1.
LpModel build_base_lp(const ProblemInstance& p, NodeId first);

/// Row form of a cut: lhs - rhs >= 0, coefficients merged per variable.
LpRow cut_row(const ProblemInstance& p, const CutConstraint& c);

struct RelaxationStats {
  std::size_t iterations = 0;
  std::size_t lp_pivots = 0;
  std::size_t connectivity_rows = 0;
  std::size_t purged_cuts = 0;
  std::size_t lp_rows = 0;  // rows in the LP at the last solve
  /// False when the loop stopped at max_iterations with cuts still violated.
  bool converged = true;
  /// Largest violation found in the last separation round.
  double residual = 0.0;
  std::vector<double> objective_trace;
  std::vector<CutConstraint> cuts;
};

struct RelaxationOptions {
  double tol = 1e-7;
  bool flow_cuts = true;
  enum class CutSide { Source, Sink, Both };
  /// Which minimum cut of a violated sink becomes a constraint.
  CutSide cut_side = CutSide::Sink;
  /// Start from the permutation rows only and add connectivity rows when
  /// the current point violates them. Same feasible region at termination.
  bool lazy_connectivity = true;
  std::size_t max_iterations = 1000;
  /// At max_iterations, return the last LP point (stats.converged = false)
  /// instead of throwing IterationLimit.
  bool accept_unconverged = false;
  /// Cuts left non-binding for this many consecutive rounds are dropped
  /// from the LP (kept in stats); 0 keeps every cut.
  std::size_t purge_after = 3;
  /// Worker threads for the separation scan; 0 = hardware concurrency.
  unsigned threads = 1;
  LpBackendFactory backend = &make_dense_simplex;
  /// Called after each separation round with the stats so far.
  std::function<void(const RelaxationStats&)> on_iteration;
};


class LpSolution {
 public:
  LpSolution() = default;
  /// Wraps an arbitrary assignment; objective and seed weights are derived.
  LpSolution(const ProblemInstance& p, AssignmentMatrix x, NodeId first);

  const AssignmentMatrix& x() const noexcept { return x_; }
  double objective() const noexcept { return objective_; }
  NodeId first_node() const noexcept { return first_; }
  std::size_t size() const noexcept { return x_.size(); }
  /// Mass of node j left of its threshold line.
  double seed_weight(NodeId j) const { return weight_[j]; }
  const std::vector<double>& seed_weights() const noexcept { return weight_; }

  RelaxationStats stats;

 private:
  AssignmentMatrix x_;
  double objective_ = 0.0;
  NodeId first_ = 0;
  std::vector<double> weight_;
};

/// Cutting-plane solve. Throws IterationLimit or SolverFailure.
LpSolution solve_relaxation(const ProblemInstance& p, NodeId first,
                            const RelaxationOptions& options = {});

/// Minimum-objective solution over candidate first nodes (default: all).
/// Ties go to the smaller node id.
LpSolution solve_with_first_node_guessing(const ProblemInstance& p,
                                          const RelaxationOptions& options = {},
                                          std::optional<std::vector<NodeId>> candidates = {});

/// The k highest-degree nodes, ties by id.
std::vector<NodeId> top_degree_nodes(const Graph& g, std::size_t k);

struct SolutionCheck {
  double bound = 0.0;
  double permutation = 0.0;
  double connectivity = 0.0;
  double first_node = 0.0;
  double objective = 0.0;
  double flow = 0.0;
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
};

/// Re-checks every constraint family from scratch, flow constraints on the
/// dense network. Each field holds the largest violation of its family.
SolutionCheck check_solution(const ProblemInstance& p, const LpSolution& s, double tol);

}  // namespace tdiff
