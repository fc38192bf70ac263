// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: tdiff_acceptance [k ...]   (no arguments runs all twelve)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "support/oracles.hpp"

using namespace tdiff;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

NodeSet random_subset(std::mt19937_64& rng, std::size_t n) {
  NodeSet s;
  for (NodeId u = 0; u < n; ++u)
    if (rng() % 3 == 0) s.push_back(u);
  return s;
}

Outcome diffusion_oracle() {
  auto start = Clock::now();
  std::mt19937_64 rng(1001);
  std::size_t mismatches = 0;
  for (int k = 0; k < 500; ++k) {
    auto p = oracle::random_small_instance(rng, 2, 7, false);
    auto s = random_subset(rng, p.node_count());
    auto fix = simulate(p, s).final_active;
    for (int r = 0; r < 100; ++r)
      if (oracle::random_order_fixpoint(p, s, rng) != fix) ++mismatches;
  }
  double secs = seconds_since(start);
  return {mismatches == 0 && secs < 30.0,
          fmt("500 instances x 100 orders, %zu mismatches, %.1f s (limit 30)", mismatches, secs)};
}

Outcome sequence_vs_seedset() {
  std::mt19937_64 rng(1002);
  std::size_t violations = 0, worst_num = 0, worst_den = 1;
  for (int k = 0; k < 200; ++k) {
    auto p = oracle::random_small_instance(rng, 2, 7, true);
    std::size_t seq = opt_connected_sequence(p).seeds.size();
    std::size_t opt = opt_seedset(p).size();
    if (seq > 2 * opt) ++violations;
    if (seq * worst_den > worst_num * opt) {
      worst_num = seq;
      worst_den = opt;
    }
  }
  return {violations == 0, fmt("200 connected instances, %zu violations, worst ratio %zu/%zu",
                               violations, worst_num, worst_den)};
}

Outcome setcover_reduction() {
  std::mt19937_64 rng(1003);
  std::size_t done = 0, mismatches = 0;
  while (done < 20) {
    std::size_t u = 1 + rng() % 4;
    std::size_t m = 1 + rng() % 4;
    std::vector<std::vector<std::size_t>> sets(m);
    for (auto& s : sets)
      for (std::size_t e = 0; e < u; ++e)
        if (rng() % 2) s.push_back(e);
    SetCoverGadget g;
    try {
      g = setcover_gadget(u, sets);
    } catch (const UncoverableUniverse&) {
      continue;
    }
    ++done;
    std::size_t seeds = opt_seedset(g.instance, g.instance.node_count()).size();
    if (seeds != min_set_cover(u, sets)) ++mismatches;
  }
  return {mismatches == 0, fmt("20 coverable instances, %zu mismatches", mismatches)};
}

Outcome path_barrier_gap() {
  std::size_t opt = opt_seedset(path_barrier(4)).size();
  std::size_t c2 = opt_connected_seedset(path_barrier(2)).size();
  std::size_t c3 = opt_connected_seedset(path_barrier(3)).size();
  std::size_t c4 = opt_connected_seedset(path_barrier(4)).size();
  bool pass = opt == 2 && c4 > 2 && c2 <= c3 && c3 <= c4;
  return {pass, fmt("opt(r=4)=%zu, connected opt r=2,3,4: %zu,%zu,%zu", opt, c2, c3, c4)};
}

Outcome pathological_flow() {
  enum : NodeId { A, B, C };
  std::vector<Edge> e{{A, B}, {B, C}, {A, C}};
  for (NodeId u = 3; u < 9; ++u) e.push_back({u - 1, u});
  std::vector<Threshold> th(9, 9);
  th[B] = 2;
  ProblemInstance p(Graph(9, e), th);
  AssignmentMatrix x(9);
  x(A, 1) = 0.1;
  x(B, 2) = 0.1;
  x(C, 3) = 0.1;
  x(B, 4) = 0.1;
  x(C, 5) = 0.1;
  x(A, 6) = 0.1;
  FlowNetwork net(p, x, A);
  auto c = net.check(B, 4, 1e-9);
  bool violated = static_cast<bool>(c.cut);
  bool pass = violated && std::abs(c.demand - 0.2) < 1e-12;
  return {pass, fmt("sink (B,4): demand %.3f, max flow %.3f, %s", c.demand, c.flow,
                    violated ? "violated" : "satisfied")};
}

Outcome lp_lower_bound() {
  auto start = Clock::now();
  std::mt19937_64 rng(1006);
  std::size_t above = 0, bad = 0;
  double worst_gap = -1e9;
  for (int k = 0; k < 100; ++k) {
    auto p = oracle::random_small_instance(rng, 2, 7, true);
    auto sol = solve_with_first_node_guessing(p);
    double seq = static_cast<double>(opt_connected_sequence(p).seeds.size());
    worst_gap = std::max(worst_gap, sol.objective() - seq);
    if (sol.objective() > seq + 1e-6) ++above;
    if (!check_solution(p, sol, 1e-6).ok()) ++bad;
  }
  double secs = seconds_since(start);
  return {above == 0 && bad == 0 && secs < 600.0,
          fmt("100 instances, %zu above the sequence optimum (max LP-opt %.3g), %zu failed re-check, "
              "%.1f s (limit 600)",
              above, worst_gap, bad, secs)};
}

Outcome integrality_gap() {
  auto p = gap_simple(3, 4);
  RelaxationOptions plain;
  plain.flow_cuts = false;
  double fig1 = solve_with_first_node_guessing(p, plain).objective();
  double flow = solve_with_first_node_guessing(p).objective();
  std::size_t opt = opt_seedset(p).size();
  bool pass = fig1 < 1.5 && opt >= 2 && flow > fig1 + 1e-6;
  return {pass, fmt("gap_simple(3,4): plain LP %.4f (needs < 1.5), integral opt %zu, with flow cuts %.4f",
                    fig1, opt, flow)};
}

Outcome rounding_correctness() {
  std::mt19937_64 rng(1008);
  std::size_t infeasible = 0, trials = 0, broken = 0, failures = 0;
  for (int k = 0; k < 200; ++k) {
    auto p = oracle::random_small_instance(rng, 3, 12, true);
    MethodOptions opts;
    opts.rng_seed = rng();
    auto cfg = RoundingConfig::practical(p.node_count());
    cfg.on_trial = [&](Threshold, const TrialOutcome& o) {
      ++trials;
      if (o.sampled.empty()) return;
      bool ok = is_prefix_connected(p.graph(), o.T);
      for (NodeId v = 0; v < p.node_count(); ++v)
        if (!std::binary_search(o.seeds.begin(), o.seeds.end(), v) && o.T[v] < p.theta(v)) ok = false;
      if (!ok) ++broken;
    };
    opts.rounding = cfg;
    try {
      if (!simulate(p, run_method(p, kLpRoundMethod, opts)).feasible) ++infeasible;
    } catch (const std::exception&) {
      ++failures;
    }
  }
  bool pass = infeasible == 0 && failures == 0 && broken == 0;
  return {pass, fmt("200 runs: %zu infeasible, %zu errors; %zu trials, %zu breaking prefix "
                    "connectivity or thresholds",
                    infeasible, failures, trials, broken)};
}

Outcome worked_example_replay() {
  enum : NodeId { A, B, C, D, E, F };
  auto p = worked_example();
  std::vector<NodeId> s{A, C, F};
  auto T = get_seq(p, s);
  bool seq_ok = T.times() == std::vector<Time>{1, 2, 1, 5, 4, 1};
  std::vector<NodeId> order{A, B, C, F, D, E};
  auto fig = ActivationSequence::from_order(order, 6);
  auto rep = validate_sequence(p, recover_seedset(p, fig), fig);
  auto rec = recover_seedset(p, fig);
  bool pass = seq_ok && rep.connected && rep.feasible && rec == NodeSet{A, F};
  std::ostringstream r;
  for (NodeId u : rec) r << static_cast<char>('A' + u);
  return {pass, fmt("get_seq({A,C,F}) %s, figure sequence connected=%d feasible=%d, recovered {%s}",
                    seq_ok ? "matches" : "differs", rep.connected, rep.feasible, r.str().c_str())};
}

Outcome table_direction() {
  auto start = Clock::now();
  BenchSpec spec;
  spec.nodes = 50;
  spec.steps = {5};
  spec.trials = 5;
  spec.method_options.pin_highest_degree = true;
  auto report = run_bench(spec);
  std::size_t wins = 0;
  bool columns_ok = true, all_ok = true;
  std::ostringstream sizes;
  for (std::size_t t = 0; t < spec.trials; ++t) {
    double lp = -1, best = 1e18;
    for (const auto& r : report.trials) {
      if (r.instance != "c5-t" + std::to_string(t)) continue;
      if (!r.ok) {
        all_ok = false;
        continue;
      }
      if (!r.jaccard || *r.jaccard < 0 || *r.jaccard > 1) columns_ok = false;
      for (double v : {r.deg_overlap, r.btw_overlap})
        if (v < 0 || v > 1) columns_ok = false;
      if (r.method == kLpRoundMethod)
        lp = r.size;
      else
        best = std::min(best, r.size);
    }
    if (lp >= 0 && lp <= best) ++wins;
    sizes << (t ? " " : "") << lp << "/" << best;
  }
  double secs = seconds_since(start);
  bool pass = wins >= 4 && columns_ok && all_ok && secs < 1200.0;
  return {pass, fmt("n=50 c=5: lp-round/best heuristic per trial %s, %zu of 5 at or below, "
                    "columns %s, %.0f s (limit 1200)",
                    sizes.str().c_str(), wins, columns_ok && all_ok ? "ok" : "bad", secs)};
}

Outcome witnesses() {
  auto a = nonsubmodular_pair(5);
  NodeSet au = a.s1;
  au.insert(au.end(), a.s2.begin(), a.s2.end());
  std::size_t a1 = influence(a.instance, a.s1), a2 = influence(a.instance, a.s2),
              a12 = influence(a.instance, make_node_set(au));
  auto b = nonsupermodular_pair(10);
  NodeSet bu = b.s1;
  bu.insert(bu.end(), b.s2.begin(), b.s2.end());
  std::size_t b1 = influence(b.instance, b.s1), b2 = influence(b.instance, b.s2),
              b12 = influence(b.instance, make_node_set(bu));
  bool pass = a1 == 5 && a2 == 1 && a12 == 11 && a1 + a2 < a12 && b1 == 7 && b2 == 7 && b12 == 8 &&
              b1 + b2 > b12;
  return {pass, fmt("n=5: f = %zu, %zu, %zu; n=10: f = %zu, %zu, %zu", a1, a2, a12, b1, b2, b12)};
}

// Random prefix-connected permutation starting at `first`.
ActivationSequence random_connected_order(const Graph& g, NodeId first, std::mt19937_64& rng) {
  const std::size_t n = g.node_count();
  std::vector<NodeId> order{first};
  std::vector<char> in(n, 0);
  in[first] = 1;
  while (order.size() < n) {
    std::vector<NodeId> frontier;
    for (NodeId u = 0; u < n; ++u)
      if (!in[u])
        for (NodeId v : g.neighbors(u))
          if (in[v]) {
            frontier.push_back(u);
            break;
          }
    NodeId next = frontier[rng() % frontier.size()];
    in[next] = 1;
    order.push_back(next);
  }
  return ActivationSequence::from_order(order, n);
}

// Convex mix of integral connected sequences sharing the first node; every
// such mix is feasible for the relaxation.
LpSolution mixed_solution(const ProblemInstance& p, std::mt19937_64& rng) {
  const std::size_t n = p.node_count();
  NodeId first = static_cast<NodeId>(rng() % n);
  const double weights[] = {0.86, 0.05, 0.04, 0.03, 0.02};
  AssignmentMatrix x(n);
  for (double w : weights) {
    auto y = AssignmentMatrix::from_sequence(random_connected_order(p.graph(), first, rng));
    for (NodeId i = 0; i < n; ++i)
      for (Time t = 1; t <= n; ++t) x(i, t) += w * y(i, t);
  }
  return LpSolution(p, x, first);
}

Outcome stochastic_bound() {
  const std::size_t kTrials = 5000;
  const double z = 2.326;  // one-sided 99%
  std::mt19937_64 gen(1012);
  std::vector<std::pair<ProblemInstance, LpSolution>> cases;
  auto gap = gap_simple(3, 4);
  cases.emplace_back(gap, solve_relaxation(gap, 0));
  for (int k = 0; k < 8; ++k) {
    auto p = oracle::random_small_instance(gen, 6, 12, true);
    cases.emplace_back(p, mixed_solution(p, gen));
  }

  std::size_t pairs = 0, low = 0, invalid = 0;
  double worst = 1e9;
  for (const auto& [p, sol] : cases) {
    const std::size_t n = p.node_count();
    if (!check_solution(p, sol, 1e-6).ok()) ++invalid;
    auto cfg = RoundingConfig::theory();
    double cutoff = 1.0 / (12.0 * (1.0 + cfg.eps));
    std::vector<std::size_t> hits(n * n, 0);
    std::mt19937_64 rng(gen());
    Threshold theta = threshold_profile(p).values.front();
    for (std::size_t k = 0; k < kTrials; ++k) {
      auto o = trial(sol, p, theta, cfg, rng);
      for (NodeId v = 0; v < n; ++v)
        for (Time t = o.T[v]; t <= n; ++t) ++hits[v * n + (t - 1)];
    }
    for (NodeId v = 0; v < n; ++v)
      for (Time t = 1; t <= n; ++t) {
        double mass = sol.x().prefix(v, t);
        if (mass <= 1e-9 || mass >= cutoff) continue;
        ++pairs;
        std::size_t k = hits[v * n + (t - 1)];
        worst = std::min(worst, static_cast<double>(k) / kTrials / mass);
        if (!oracle::binomial_not_below(k, kTrials, mass, z)) ++low;
      }
  }
  return {low == 0 && pairs > 0 && invalid == 0,
          fmt("%zu solutions (%zu failing re-check), %zu (v,t) pairs with prefix mass below "
              "1/(12(1+eps)), %zu below the bound, min rate/mass %.2f",
              cases.size(), invalid, pairs, low, pairs ? worst : 0.0)};
}

struct Criterion {
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"diffusion matches random-order fixpoints", diffusion_oracle},
    {"connected sequence at most twice the optimum", sequence_vs_seedset},
    {"set cover reduction preserves the optimum", setcover_reduction},
    {"path barrier separates connected and plain optima", path_barrier_gap},
    {"pathological assignment fails the flow check", pathological_flow},
    {"relaxation is a lower bound and re-checks", lp_lower_bound},
    {"flow cuts close the gap_simple relaxation", integrality_gap},
    {"rounding is feasible and trials are well formed", rounding_correctness},
    {"worked example replay", worked_example_replay},
    {"lp-round at or below the best heuristic", table_direction},
    {"non-submodular and non-supermodular witnesses", witnesses},
    {"sampled activation probability covers prefix mass", stochastic_bound},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    int k = std::atoi(argv[i]);
    if (k < 1 || k > 12) {
      std::fprintf(stderr, "criterion must be 1..12, got '%s'\n", argv[i]);
      return 1;
    }
    which.push_back(k);
  }
  if (which.empty())
    for (int k = 1; k <= 12; ++k) which.push_back(k);

  int failed = 0;
  for (int k : which) {
    const Criterion& c = kCriteria[k - 1];
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", k, c.name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
