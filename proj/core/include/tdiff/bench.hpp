#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdiff/exact.hpp"
#include "tdiff/rounding.hpp"

namespace tdiff {

inline constexpr std::string_view kLpRoundMethod = "lp-round";
inline constexpr std::string_view kExactMethod = "exact";

/// Method names accepted by run_method: the heuristics, lp-round, exact.
std::vector<std::string> known_methods();

/// Cutting-plane rounds lp-round runs before rounding the last LP point.
inline constexpr std::size_t kLpRoundMaxRounds = 100;

inline RelaxationOptions lp_round_relaxation() {
  RelaxationOptions o;
  o.max_iterations = kLpRoundMaxRounds;
  o.accept_unconverged = true;
  return o;
}

struct MethodOptions {
  /// Unset: RoundingConfig::practical(n).
  std::optional<RoundingConfig> rounding;
  std::uint64_t rng_seed = 1;
  /// Force the highest-degree node to be the first activation.
  bool pin_highest_degree = false;
  /// First-node candidates for lp-round, highest degree first; 0 = all nodes.
  std::size_t first_candidates = 3;
  /// lp-round keeps the smallest of this many independent roundings.
  std::size_t rounding_repeats = 5;
  std::size_t exact_cap = kDefaultExactCap;
  RelaxationOptions relaxation = lp_round_relaxation();
};

/// Runs one method and checks the result with simulate; throws
/// InvariantViolation if the seedset is infeasible.
NodeSet run_method(const ProblemInstance& p, std::string_view method, const MethodOptions& opts);

double jaccard(std::span<const NodeId> a, std::span<const NodeId> b);

/// Fraction of `s` among the top-|s| nodes by `score` (ties by id).
double top_overlap(std::span<const double> score, std::span<const NodeId> s);

struct BenchSpec {
  std::size_t nodes = 50;
  std::vector<std::size_t> outdeg_choices{1, 2, 3, 4};
  std::vector<std::size_t> steps{5};
  std::size_t trials = 5;
  std::vector<std::string> methods;  // empty = every heuristic plus lp-round
  std::uint64_t rng_seed = 1;
  MethodOptions method_options;
  unsigned jobs = 1;
  bool timing = true;
};

struct BenchRow {
  std::string instance;
  std::string method;
  std::size_t step = 0;
  bool ok = false;
  double size = 0.0;
  std::optional<double> jaccard;
  double deg_overlap = 0.0;
  double btw_overlap = 0.0;
  double seconds = 0.0;
  std::string error;
  NodeSet seeds;
};

struct BenchReport {
  std::vector<BenchRow> trials;  // grouped by step, then trial, then method
  std::vector<BenchRow> means;   // one per step and method
  std::string csv() const;
};

inline constexpr std::string_view kBenchHeader =
    "instance,method,size,jaccard,deg_overlap,btw_overlap,seconds";

BenchReport run_bench(const BenchSpec& spec);

/// The instance for one trial of one step group.
ProblemInstance bench_instance(const BenchSpec& spec, std::size_t step, std::size_t trial);

}  // namespace tdiff
