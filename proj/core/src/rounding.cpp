#include "tdiff/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tdiff {

double theory_alpha(std::size_t n, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw BadParameters("eps must lie in (0, 1)");
  double nn = static_cast<double>(n);
  return 24.0 * (1.0 + eps) * std::log(4.0 * nn * nn / eps);
}

RoundingConfig RoundingConfig::theory() { return RoundingConfig{}; }

RoundingConfig RoundingConfig::practical(std::size_t n) {
  RoundingConfig cfg;
  cfg.alpha = std::max(1.0, std::log(static_cast<double>(n)));
  cfg.reuse_trials = true;
  return cfg;
}

double RoundingConfig::alpha_for(std::size_t n) const {
  if (!(eps > 0.0 && eps < 1.0)) throw BadParameters("eps must lie in (0, 1)");
  double a = alpha ? *alpha : theory_alpha(n, eps);
  if (!(a > 0.0)) throw BadParameters("alpha must be positive");
  return a;
}

std::size_t RoundingConfig::trials_for(std::size_t n) const {
  if (max_trials_per_threshold) return *max_trials_per_threshold;
  double nn = static_cast<double>(std::max<std::size_t>(n, 2));
  return static_cast<std::size_t>(std::ceil(trial_factor * nn * std::log(nn)));
}

std::mt19937_64 threshold_stream(std::uint64_t seed, Threshold theta) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(theta)};
  return std::mt19937_64(seq);
}

NodeSet sample_seeds(const LpSolution& x, double alpha, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  NodeSet s;
  for (NodeId v = 0; v < x.size(); ++v) {
    double p = std::min(1.0, alpha * x.seed_weight(v));
    // Draw for every node so the stream position does not depend on p.
    if (unit(rng) < p) s.push_back(v);
  }
  return s;
}

NodeSet glue(const Graph& g, std::span<const NodeId> s) {
  if (s.empty()) throw BadParameters("glue needs a non-empty set");
  NodeSet out = make_node_set({s.begin(), s.end()});
  while (true) {
    auto pieces = connected_components(g, out);
    if (pieces.size() <= 1) return out;
    std::size_t big = 0;
    for (std::size_t k = 1; k < pieces.size(); ++k)
      if (pieces[k].size() > pieces[big].size()) big = k;
    NodeId u = 0;
    bool found = false;
    for (NodeId v : out)
      if (!std::binary_search(pieces[big].begin(), pieces[big].end(), v)) {
        u = v;
        found = true;
        break;
      }
    if (!found) return out;
    std::vector<NodeId> path;
    try {
      path = shortest_path(g, u, pieces[big]);
    } catch (const NoPath&) {
      throw DisconnectedGraph("seeds lie in different components of the graph");
    }
    out.insert(out.end(), path.begin(), path.end());
    out = make_node_set(std::move(out));
  }
}

ActivationSequence get_seq(const ProblemInstance& p, std::span<const NodeId> s) {
  const std::size_t n = p.node_count();
  const Graph& g = p.graph();
  ActivationSequence T(n);
  for (NodeId v : s) T[v] = 1;
  for (Time t = 1; t <= n; ++t) {
    for (NodeId u = 0; u < n; ++u) {
      if (!T.never(u) || t < p.theta(u)) continue;
      for (NodeId w : g.neighbors(u))
        if (T[w] < t) {
          T[u] = t;
          break;
        }
    }
  }
  return T;
}

bool TrialOutcome::makes_good(Threshold theta) const {
  return std::binary_search(good_thresholds.begin(), good_thresholds.end(), theta);
}

namespace {

double size_bound(const LpSolution& x, const ProblemInstance& p, const RoundingConfig& cfg,
                  double alpha) {
  if (cfg.size_bound_mode == SizeBoundMode::Theoretical) return kInfinity;
  double r = static_cast<double>(diameter(p.graph()));
  return alpha * (1.0 + cfg.eps) * std::max(r, 1.0) * x.objective();
}

TrialOutcome run_trial(const LpSolution& x, const ProblemInstance& p, Threshold theta_j,
                       double alpha, double bound, std::mt19937_64& rng) {
  TrialOutcome o;
  o.sampled = sample_seeds(x, alpha, rng);
  if (o.sampled.empty()) {
    o.T = ActivationSequence(p.node_count());
    return o;
  }
  o.seeds = glue(p.graph(), o.sampled);
  o.T = get_seq(p, o.seeds);
  o.feasible = std::none_of(o.T.times().begin(), o.T.times().end(),
                            [](Time t) { return t == kNever; });
  o.good_thresholds = good_thresholds(p, o.T);
  o.good = o.makes_good(theta_j);
  o.size_ok = static_cast<double>(o.seeds.size()) <= bound + 1e-9;
  return o;
}

}  // namespace

TrialOutcome trial(const LpSolution& x, const ProblemInstance& p, Threshold theta_j,
                   const RoundingConfig& cfg, std::mt19937_64& rng) {
  double alpha = cfg.alpha_for(p.node_count());
  return run_trial(x, p, theta_j, alpha, size_bound(x, p, cfg, alpha), rng);
}

std::size_t RoundingStats::total_trials() const {
  std::size_t k = 0;
  for (const auto& t : thresholds) k += t.trials;
  return k;
}

TrialBudgetExhausted::TrialBudgetExhausted(Threshold theta, RoundingStats partial)
    : Error("trial budget exhausted for threshold " + std::to_string(theta)),
      theta_(theta),
      stats_(std::move(partial)) {}

RoundingResult round_solution(const LpSolution& x, const ProblemInstance& p,
                              const RoundingConfig& cfg) {
  const std::size_t n = p.node_count();
  if (x.size() != n) throw BadParameters("solution size does not match instance");
  RoundingStats stats;
  stats.alpha = cfg.alpha_for(n);
  stats.size_bound = size_bound(x, p, cfg, stats.alpha);
  stats.trial_budget = cfg.trials_for(n);

  std::vector<TrialOutcome> kept;
  for (Threshold theta : threshold_profile(p).values) {
    ThresholdStats ts;
    ts.theta = theta;
    if (cfg.reuse_trials) {
      auto it = std::find_if(kept.begin(), kept.end(), [&](const TrialOutcome& o) {
        return o.makes_good(theta);
      });
      if (it != kept.end()) {
        ts.reused = true;
        ts.sampled_size = it->sampled.size();
        ts.glued_size = it->seeds.size();
        stats.thresholds.push_back(ts);
        continue;
      }
    }
    auto rng = threshold_stream(cfg.rng_seed, theta);
    bool done = false;
    while (ts.trials < stats.trial_budget) {
      ++ts.trials;
      TrialOutcome o = run_trial(x, p, theta, stats.alpha, stats.size_bound, rng);
      if (cfg.on_trial) cfg.on_trial(theta, o);
      if (!o.accepted(cfg.relaxed_feasibility)) continue;
      ts.sampled_size = o.sampled.size();
      ts.glued_size = o.seeds.size();
      kept.push_back(std::move(o));
      done = true;
      break;
    }
    stats.thresholds.push_back(ts);
    if (!done) throw TrialBudgetExhausted(theta, std::move(stats));
  }

  bool any_feasible = std::any_of(kept.begin(), kept.end(),
                                  [](const TrialOutcome& o) { return o.feasible; });
  if (!any_feasible) {
    // Only reachable with relaxed feasibility: draw until one trial activates everything.
    auto rng = threshold_stream(cfg.rng_seed, 0);
    ThresholdStats ts;
    while (ts.trials < stats.trial_budget) {
      ++ts.trials;
      TrialOutcome o = run_trial(x, p, 0, stats.alpha, stats.size_bound, rng);
      if (cfg.on_trial) cfg.on_trial(0, o);
      if (o.feasible && o.size_ok) {
        ts.sampled_size = o.sampled.size();
        ts.glued_size = o.seeds.size();
        kept.push_back(std::move(o));
        any_feasible = true;
        break;
      }
    }
    stats.thresholds.push_back(ts);
    if (!any_feasible) throw TrialBudgetExhausted(0, std::move(stats));
  }

  NodeSet all;
  for (const auto& o : kept) all.insert(all.end(), o.seeds.begin(), o.seeds.end());
  all = make_node_set(std::move(all));
  stats.union_size = all.size();

  RoundingResult out;
  out.seeds = glue(p.graph(), all);
  out.T = ActivationSequence(n);
  for (NodeId v = 0; v < n; ++v) {
    Time best = kNever;
    for (const auto& o : kept) best = std::min(best, o.T[v]);
    out.T[v] = best;
  }
  for (NodeId v : out.seeds) out.T[v] = 1;
  stats.final_size = out.seeds.size();

  // P1: connected and feasible.
  bool feasible = std::all_of(out.T.times().begin(), out.T.times().end(),
                              [&](Time t) { return t >= 1 && t <= n; });
  if (!feasible || !is_prefix_connected(p.graph(), out.T))
    throw InvariantViolation("merged sequence is not connected and feasible");
  // P2: non-seeds activate no earlier than their thresholds.
  for (NodeId v = 0; v < n; ++v)
    if (!std::binary_search(out.seeds.begin(), out.seeds.end(), v) && out.T[v] < p.theta(v))
      throw InvariantViolation("non-seed activates before its threshold");
  // P3: every threshold value is good.
  auto good = good_thresholds(p, out.T);
  if (good != threshold_profile(p).values)
    throw InvariantViolation("merged sequence leaves a threshold not good");
  if (!simulate(p, out.seeds).feasible)
    throw InvariantViolation("rounded seedset does not activate every node");

  out.stats = std::move(stats);
  return out;
}

}  // namespace tdiff
