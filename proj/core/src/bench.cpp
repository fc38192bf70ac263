#include "tdiff/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "tdiff/exact.hpp"
#include "tdiff/generators.hpp"
#include "tdiff/heuristics.hpp"

namespace tdiff {

std::vector<std::string> known_methods() {
  std::vector<std::string> out;
  for (HeuristicKind k : kAllHeuristics) out.emplace_back(to_string(k));
  out.emplace_back(kLpRoundMethod);
  out.emplace_back(kExactMethod);
  return out;
}

namespace {

NodeSet lp_round(const ProblemInstance& p, const MethodOptions& opts) {
  const Graph& g = p.graph();
  std::size_t k = opts.pin_highest_degree ? 1 : opts.first_candidates;
  if (k == 0) k = p.node_count();
  LpSolution sol = solve_with_first_node_guessing(p, opts.relaxation, top_degree_nodes(g, k));
  RoundingConfig cfg = opts.rounding ? *opts.rounding : RoundingConfig::practical(p.node_count());
  std::optional<NodeSet> best;
  std::optional<TrialBudgetExhausted> last_failure;
  for (std::size_t r = 0; r < std::max<std::size_t>(1, opts.rounding_repeats); ++r) {
    cfg.rng_seed = opts.rng_seed + r;
    try {
      RoundingResult res = round_solution(sol, p, cfg);
      if (!best || res.seeds.size() < best->size()) best = std::move(res.seeds);
    } catch (const TrialBudgetExhausted& e) {
      last_failure = e;
    }
  }
  if (!best) throw *last_failure;
  return *best;
}

std::uint64_t mix(std::uint64_t seed, std::size_t a, std::size_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

NodeSet run_method(const ProblemInstance& p, std::string_view method, const MethodOptions& opts) {
  NodeSet s;
  if (auto kind = parse_heuristic(method)) {
    s = run_heuristic(p, *kind);
  } else if (method == kLpRoundMethod) {
    s = lp_round(p, opts);
  } else if (method == kExactMethod) {
    s = opt_seedset(p, opts.exact_cap);
  } else {
    throw BadParameters("unknown method '" + std::string(method) + "'");
  }
  if (!simulate(p, s).feasible) throw InvariantViolation("method returned an infeasible seedset");
  return s;
}

double jaccard(std::span<const NodeId> a, std::span<const NodeId> b) {
  NodeSet x = make_node_set({a.begin(), a.end()});
  NodeSet y = make_node_set({b.begin(), b.end()});
  if (x.empty() && y.empty()) return 1.0;
  NodeSet both;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(both));
  double uni = static_cast<double>(x.size() + y.size() - both.size());
  return static_cast<double>(both.size()) / uni;
}

double top_overlap(std::span<const double> score, std::span<const NodeId> s) {
  if (s.empty()) return 0.0;
  std::vector<NodeId> order(score.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return score[a] > score[b]; });
  std::size_t k = std::min(s.size(), order.size());
  std::vector<char> top(score.size(), 0);
  for (std::size_t i = 0; i < k; ++i) top[order[i]] = 1;
  std::size_t hit = 0;
  for (NodeId u : s) hit += top[u];
  return static_cast<double>(hit) / static_cast<double>(s.size());
}

ProblemInstance bench_instance(const BenchSpec& spec, std::size_t step, std::size_t trial) {
  std::uint64_t seed = mix(spec.rng_seed, step, trial);
  Graph g = preferential_attachment(spec.nodes, spec.outdeg_choices, seed);
  return random_thresholds(g, step, seed ^ 0x9e3779b97f4a7c15ULL);
}

BenchReport run_bench(const BenchSpec& spec) {
  std::vector<std::string> methods = spec.methods;
  if (methods.empty()) {
    for (HeuristicKind k : kAllHeuristics) methods.emplace_back(to_string(k));
    methods.emplace_back(kLpRoundMethod);
  }
  for (const auto& m : methods) {
    auto known = known_methods();
    if (std::find(known.begin(), known.end(), m) == known.end())
      throw BadParameters("unknown method '" + m + "'");
  }
  if (spec.trials == 0) throw BadParameters("bench needs at least one trial");

  struct Job {
    std::size_t step;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  for (std::size_t c : spec.steps)
    for (std::size_t t = 0; t < spec.trials; ++t) jobs.push_back({c, t});
  std::vector<std::vector<BenchRow>> results(jobs.size());

  auto work = [&](std::size_t idx) {
    const Job job = jobs[idx];
    ProblemInstance p = bench_instance(spec, job.step, job.trial);
    auto deg = std::vector<double>(p.node_count());
    for (NodeId u = 0; u < p.node_count(); ++u) deg[u] = static_cast<double>(p.graph().degree(u));
    auto btw = betweenness(p.graph());
    MethodOptions opts = spec.method_options;
    opts.rng_seed = mix(spec.rng_seed, job.step, job.trial + 1000003);

    std::vector<BenchRow> rows;
    for (const auto& m : methods) {
      BenchRow row;
      row.instance = "c" + std::to_string(job.step) + "-t" + std::to_string(job.trial);
      row.method = m;
      row.step = job.step;
      auto start = std::chrono::steady_clock::now();
      try {
        row.seeds = run_method(p, m, opts);
        row.ok = true;
        row.size = static_cast<double>(row.seeds.size());
        row.deg_overlap = top_overlap(deg, row.seeds);
        row.btw_overlap = top_overlap(btw, row.seeds);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
      row.seconds = spec.timing ? dt.count() : 0.0;
      rows.push_back(std::move(row));
    }
    const BenchRow* ref = nullptr;
    for (std::string_view pref : {kExactMethod, kLpRoundMethod})
      for (const auto& r : rows)
        if (!ref && r.ok && r.method == pref) ref = &r;
    if (!ref)
      for (const auto& r : rows)
        if (!ref && r.ok) ref = &r;
    if (ref)
      for (auto& r : rows)
        if (r.ok) r.jaccard = jaccard(r.seeds, ref->seeds);
    results[idx] = std::move(rows);
  };

  unsigned threads = std::max(1u, spec.jobs);
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
  if (threads == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) work(i);
      });
    for (auto& th : pool) th.join();
  }

  BenchReport report;
  for (auto& rows : results)
    for (auto& r : rows) report.trials.push_back(std::move(r));

  for (std::size_t c : spec.steps)
    for (const auto& m : methods) {
      BenchRow mean;
      mean.instance = "c" + std::to_string(c) + "-mean";
      mean.method = m;
      mean.step = c;
      std::size_t count = 0, jcount = 0;
      double jsum = 0.0;
      for (const auto& r : report.trials) {
        if (r.method != m || r.step != c || !r.ok) continue;
        ++count;
        mean.size += r.size;
        mean.deg_overlap += r.deg_overlap;
        mean.btw_overlap += r.btw_overlap;
        mean.seconds += r.seconds;
        if (r.jaccard) {
          jsum += *r.jaccard;
          ++jcount;
        }
      }
      if (count > 0) {
        mean.ok = true;
        double k = static_cast<double>(count);
        mean.size /= k;
        mean.deg_overlap /= k;
        mean.btw_overlap /= k;
        mean.seconds /= k;
        if (jcount > 0) mean.jaccard = jsum / static_cast<double>(jcount);
      }
      report.means.push_back(std::move(mean));
    }
  return report;
}

std::string BenchReport::csv() const {
  std::ostringstream out;
  out << kBenchHeader << '\n';
  auto emit = [&](const BenchRow& r, bool integral) {
    out << r.instance << ',' << r.method << ',';
    if (!r.ok) {
      out << "NA,NA,NA,NA," << fmt(r.seconds) << '\n';
      return;
    }
    if (integral)
      out << static_cast<long long>(r.size);
    else
      out << fmt(r.size);
    out << ',' << (r.jaccard ? fmt(*r.jaccard) : "NA") << ',' << fmt(r.deg_overlap) << ','
        << fmt(r.btw_overlap) << ',' << fmt(r.seconds) << '\n';
  };
  for (const auto& r : trials) emit(r, true);
  for (const auto& r : means) emit(r, false);
  return out.str();
}

}  // namespace tdiff
