#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "tdiff/diffusion.hpp"
#include "tdiff/errors.hpp"
#include "tdiff/relaxation.hpp"

namespace tdiff {

enum class SizeBoundMode {
  Theoretical,  // no size check
  LpObjective,  // |S| <= alpha (1 + eps) r LB with LB the LP objective
};

struct TrialOutcome;

struct RoundingConfig {
  double eps = 0.5;
  /// Unset: theory_alpha(n, eps).
  std::optional<double> alpha;
  /// Unset: ceil(trial_factor * n * ln n).
  std::optional<std::size_t> max_trials_per_threshold;
  double trial_factor = 4.0;
  std::uint64_t rng_seed = 1;
  SizeBoundMode size_bound_mode = SizeBoundMode::LpObjective;
  /// Per-threshold trials accept on goodness alone; at least one accepted
  /// trial must still be feasible.
  bool relaxed_feasibility = false;
  /// An accepted trial also covers every other threshold it makes good.
  bool reuse_trials = false;
  /// Called with every trial round_solution draws, accepted or not.
  std::function<void(Threshold, const TrialOutcome&)> on_trial;

  static RoundingConfig theory();
  /// alpha = ln n, trial reuse on.
  static RoundingConfig practical(std::size_t n);

  double alpha_for(std::size_t n) const;
  std::size_t trials_for(std::size_t n) const;
};

double theory_alpha(std::size_t n, double eps);

/// Independent inclusion with probability min(1, alpha * seed_weight(v)).
NodeSet sample_seeds(const LpSolution& x, double alpha, std::mt19937_64& rng);

/// Joins the pieces of `s` by shortest paths into the largest piece.
/// Throws DisconnectedGraph when no path exists.
NodeSet glue(const Graph& g, std::span<const NodeId> s);

/// Seeds at time 1; at each t = 1..n every inactive non-seed u with
/// t >= theta(u) and a neighbor active before t activates at t.
ActivationSequence get_seq(const ProblemInstance& p, std::span<const NodeId> s);

struct TrialOutcome {
  NodeSet sampled;
  NodeSet seeds;  // after glue
  ActivationSequence T;
  std::vector<Threshold> good_thresholds;
  bool feasible = false;
  bool good = false;  // the target threshold is good
  bool size_ok = false;
  bool accepted(bool relaxed_feasibility = false) const {
    return good && size_ok && (feasible || relaxed_feasibility);
  }
  bool makes_good(Threshold theta) const;
};

TrialOutcome trial(const LpSolution& x, const ProblemInstance& p, Threshold theta_j,
                   const RoundingConfig& cfg, std::mt19937_64& rng);

struct ThresholdStats {
  Threshold theta = 0;
  std::size_t trials = 0;
  bool reused = false;
  std::size_t sampled_size = 0;
  std::size_t glued_size = 0;
};

struct RoundingStats {
  double alpha = 0.0;
  double size_bound = 0.0;
  std::size_t trial_budget = 0;
  std::vector<ThresholdStats> thresholds;
  std::size_t union_size = 0;  // before the final glue
  std::size_t final_size = 0;
  std::size_t total_trials() const;
};

struct RoundingResult {
  NodeSet seeds;
  ActivationSequence T;
  RoundingStats stats;
};

class TrialBudgetExhausted : public Error {
 public:
  TrialBudgetExhausted(Threshold theta, RoundingStats partial);
  Threshold theta() const noexcept { return theta_; }
  const RoundingStats& stats() const noexcept { return stats_; }

 private:
  Threshold theta_;
  RoundingStats stats_;
};

/// Full rounding: one accepted trial per distinct threshold, union, glue,
/// and the merged sequence T(v) = min_j T_j(v). The merge properties and
/// feasibility of the seeds are asserted (InvariantViolation).
RoundingResult round_solution(const LpSolution& x, const ProblemInstance& p,
                              const RoundingConfig& cfg);

/// Stream for one threshold, independent of the others.
std::mt19937_64 threshold_stream(std::uint64_t seed, Threshold theta);

}  // namespace tdiff
