#include "tdiff/relaxation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "tdiff/errors.hpp"

namespace tdiff {

namespace {

constexpr std::size_t kNoPurge = static_cast<std::size_t>(-1);
constexpr double kPurgeMargin = 1e-6;

LpRow connectivity_row(const ProblemInstance& p, NodeId i, Time t) {
  const std::size_t n = p.node_count();
  LpRow row;
  for (NodeId j : p.graph().neighbors(i))
    for (Time u = 1; u < t; ++u) row.terms.push_back({lp_var(n, j, u), 1.0});
  row.terms.push_back({lp_var(n, i, t), -1.0});
  row.lower = 0.0;
  return row;
}

double connectivity_violation(const ProblemInstance& p, const AssignmentMatrix& x, NodeId i,
                              Time t) {
  double support = 0.0;
  for (NodeId j : p.graph().neighbors(i)) support += x.window(j, 1, t - 1);
  return x(i, t) - support;
}

AssignmentMatrix to_matrix(std::size_t n, const std::vector<double>& v) {
  AssignmentMatrix x(n);
  for (NodeId i = 0; i < n; ++i)
    for (Time t = 1; t <= n; ++t) x(i, t) = std::clamp(v[lp_var(n, i, t)], 0.0, 1.0);
  return x;
}

std::vector<std::vector<FlowCheck>> scan_sinks(const FlowNetwork& h, std::size_t n, double tol,
                                               unsigned threads) {
  std::vector<std::vector<FlowCheck>> out(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (NodeId i = 0; i < n; ++i) out[i] = h.check_node(i, tol);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < threads; ++k)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;)
        out[i] = h.check_node(static_cast<NodeId>(i), tol);
    });
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace

LpModel build_base_lp(const ProblemInstance& p, NodeId first) {
  const std::size_t n = p.node_count();
  if (first >= n) throw BadParameters("first node out of range");
  LpModel m;
  for (NodeId i = 0; i < n; ++i)
    for (Time t = 1; t <= n; ++t) m.add_variable(0.0, 1.0, t < p.theta(i) ? 1.0 : 0.0);
  m.set_bounds(lp_var(n, first, 1), 1.0, 1.0);

  for (NodeId i = 0; i < n; ++i) {
    LpRow row{{}, 1.0, 1.0};
    for (Time t = 1; t <= n; ++t) row.terms.push_back({lp_var(n, i, t), 1.0});
    m.add_row(std::move(row));
  }
  for (Time t = 1; t <= n; ++t) {
    LpRow row{{}, 1.0, 1.0};
    for (NodeId i = 0; i < n; ++i) row.terms.push_back({lp_var(n, i, t), 1.0});
    m.add_row(std::move(row));
  }
  for (NodeId i = 0; i < n; ++i)
    for (Time t = 2; t <= n; ++t) m.add_row(connectivity_row(p, i, t));
  return m;
}

LpRow cut_row(const ProblemInstance& p, const CutConstraint& c) {
  const std::size_t n = p.node_count();
  std::map<std::size_t, double> coef;
  for (auto [j, tau] : c.cut) coef[lp_var(n, j, tau)] += 1.0;
  for (Time tau = p.theta(c.sink_node); tau <= c.sink_time; ++tau)
    coef[lp_var(n, c.sink_node, tau)] -= 1.0;
  LpRow row;
  for (auto [v, a] : coef)
    if (a != 0.0) row.terms.push_back({v, a});
  row.lower = 0.0;
  return row;
}

LpSolution::LpSolution(const ProblemInstance& p, AssignmentMatrix x, NodeId first)
    : x_(std::move(x)), first_(first) {
  if (x_.size() != p.node_count()) throw BadParameters("assignment size does not match instance");
  weight_.resize(x_.size());
  for (NodeId i = 0; i < x_.size(); ++i) {
    weight_[i] = x_.window(i, 1, p.theta(i) - 1);
    objective_ += weight_[i];
  }
}

LpSolution solve_relaxation(const ProblemInstance& p, NodeId first,
                            const RelaxationOptions& options) {
  const std::size_t n = p.node_count();
  LpModel base = build_base_lp(p, first);
  // Implied by the permutation rows once x(first, 1) = 1.
  for (Time t = 2; t <= n; ++t) base.set_bounds(lp_var(n, first, t), 0.0, 0.0);
  for (NodeId i = 0; i < n; ++i)
    if (i != first) base.set_bounds(lp_var(n, i, 1), 0.0, 0.0);

  LpModel initial;
  for (std::size_t j = 0; j < base.variable_count(); ++j)
    initial.add_variable(base.lower(j), base.upper(j), base.cost(j));
  std::size_t eager = options.lazy_connectivity ? 2 * n : base.row_count();
  for (std::size_t r = 0; r < eager; ++r) initial.add_row(base.row(r));

  std::vector<char> pending;  // by lp_var(n, i, t), connectivity row not yet loaded
  if (options.lazy_connectivity) {
    pending.assign(n * n, 0);
    for (NodeId i = 0; i < n; ++i)
      for (Time t = 2; t <= n; ++t)
        if (i != first) pending[lp_var(n, i, t)] = 1;
  }

  auto backend = options.backend();
  backend->load(initial);
  struct LiveCut {
    LpRow row;
    std::size_t idle = 0;
  };
  const std::size_t fixed_rows = initial.row_count();
  std::vector<LiveCut> live;  // rows after the fixed ones, in LP order
  auto add = [&](LpRow row, bool purgeable) {
    backend->add_row(row);
    live.push_back({purgeable ? std::move(row) : LpRow{}, purgeable ? 0 : kNoPurge});
  };
  RelaxationStats stats;
  stats.connectivity_rows = options.lazy_connectivity ? 0 : n * (n - 1);

  double residual = 0.0;
  std::optional<AssignmentMatrix> last;
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    stats.lp_rows = fixed_rows + live.size();
    LpResult res = backend->solve();
    stats.lp_pivots += res.iterations;
    if (res.status != LpStatus::Optimal) throw SolverFailure("relaxation is infeasible");
    AssignmentMatrix x = to_matrix(n, res.x);
    stats.objective_trace.push_back(res.objective);
    ++stats.iterations;

    if (options.purge_after > 0) {
      std::vector<std::size_t> drop;
      std::vector<LiveCut> kept;
      for (std::size_t k = 0; k < live.size(); ++k) {
        LiveCut& c = live[k];
        if (c.idle == kNoPurge) {
          kept.push_back(std::move(c));
          continue;
        }
        double activity = 0.0;
        for (const auto& term : c.row.terms) activity += term.coef * res.x[term.var];
        bool slack = activity > c.row.lower + kPurgeMargin &&
                     (res.row_basic.empty() || res.row_basic[fixed_rows + k]);
        c.idle = slack ? c.idle + 1 : 0;
        if (c.idle >= options.purge_after)
          drop.push_back(fixed_rows + k);
        else
          kept.push_back(std::move(c));
      }
      backend->remove_rows(drop);
      live = std::move(kept);
      stats.purged_cuts += drop.size();
    }

    std::size_t added = 0;
    residual = 0.0;
    if (options.lazy_connectivity) {
      for (NodeId i = 0; i < n; ++i)
        for (Time t = 2; t <= n; ++t) {
          if (!pending[lp_var(n, i, t)]) continue;
          double v = connectivity_violation(p, x, i, t);
          if (v <= options.tol) continue;
          residual = std::max(residual, v);
          add(connectivity_row(p, i, t), false);
          pending[lp_var(n, i, t)] = 0;
          ++stats.connectivity_rows;
          ++added;
        }
    }
    if (options.flow_cuts) {
      FlowNetwork h(p, x, first);
      auto scans = scan_sinks(h, n, options.tol, options.threads);
      for (auto& per_node : scans)
        for (auto& check : per_node) {
          if (check.feasible()) continue;
          for (auto* c : {&check.cut, &check.back_cut}) {
            if (!*c) continue;
            using Side = RelaxationOptions::CutSide;
            bool back = c == &check.back_cut;
            if (options.cut_side == Side::Source && back) continue;
            // The sink-side cut equals the source-side one when back_cut is empty.
            if (options.cut_side == Side::Sink && !back && check.back_cut) continue;
            double v = (*c)->violation(p, x);
            if (v <= options.tol) continue;
            residual = std::max(residual, v);
            add(cut_row(p, **c), true);
            stats.cuts.push_back(std::move(**c));
            ++added;
          }
        }
    }
    stats.residual = residual;
    if (options.on_iteration) options.on_iteration(stats);
    if (added == 0) {
      LpSolution out(p, std::move(x), first);
      out.stats = std::move(stats);
      return out;
    }
    if (options.accept_unconverged) last = std::move(x);
  }
  if (last) {
    stats.converged = false;
    LpSolution out(p, std::move(*last), first);
    out.stats = std::move(stats);
    return out;
  }
  std::ostringstream msg;
  msg << "cutting-plane loop hit " << options.max_iterations << " iterations";
  throw IterationLimit(msg.str(), residual);
}

std::vector<NodeId> top_degree_nodes(const Graph& g, std::size_t k) {
  std::vector<NodeId> ids(g.node_count());
  for (NodeId u = 0; u < ids.size(); ++u) ids[u] = u;
  std::stable_sort(ids.begin(), ids.end(),
                   [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
  ids.resize(std::min(k, ids.size()));
  return ids;
}

LpSolution solve_with_first_node_guessing(const ProblemInstance& p,
                                          const RelaxationOptions& options,
                                          std::optional<std::vector<NodeId>> candidates) {
  std::vector<NodeId> pool;
  if (candidates) {
    pool = std::move(*candidates);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  } else {
    for (NodeId u = 0; u < p.node_count(); ++u) pool.push_back(u);
  }
  if (pool.empty()) throw BadParameters("no candidate first nodes");
  std::optional<LpSolution> best;
  for (NodeId u : pool) {
    LpSolution s = solve_relaxation(p, u, options);
    if (!best || s.objective() < best->objective() - options.tol) best = std::move(s);
  }
  return std::move(*best);
}

SolutionCheck check_solution(const ProblemInstance& p, const LpSolution& s, double tol) {
  SolutionCheck c;
  const std::size_t n = p.node_count();
  const AssignmentMatrix& x = s.x();
  auto fail = [&](const std::string& what, double v) {
    if (v > tol) {
      std::ostringstream m;
      m << what << " violated by " << v;
      c.failures.push_back(m.str());
    }
  };
  if (x.size() != n) {
    c.failures.push_back("assignment size does not match instance");
    return c;
  }
  for (double v : x.data()) c.bound = std::max({c.bound, -v, v - 1.0});
  for (NodeId i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (Time t = 1; t <= n; ++t) {
      row += x(i, t);
      col += x(static_cast<NodeId>(t - 1), i + 1);
    }
    c.permutation = std::max({c.permutation, std::abs(row - 1.0), std::abs(col - 1.0)});
  }
  for (NodeId i = 0; i < n; ++i)
    for (Time t = 2; t <= n; ++t)
      c.connectivity = std::max(c.connectivity, connectivity_violation(p, x, i, t));
  c.first_node = std::abs(x(s.first_node(), 1) - 1.0);
  double obj = 0.0;
  for (NodeId i = 0; i < n; ++i) obj += x.window(i, 1, p.theta(i) - 1);
  c.objective = std::abs(obj - s.objective());

  FlowNetwork dense(p, x, s.first_node(), FlowLayout::Dense);
  for (NodeId i = 0; i < n; ++i)
    for (Time t = p.theta(i); t <= n; ++t) {
      FlowCheck f = dense.check(i, t, kInfinity);
      c.flow = std::max(c.flow, f.demand - f.flow);
    }

  fail("variable bounds", c.bound);
  fail("permutation rows", c.permutation);
  fail("connectivity rows", c.connectivity);
  fail("first node", c.first_node);
  fail("objective", c.objective);
  fail("flow constraints", c.flow);
  return c;
}

}  // namespace tdiff
