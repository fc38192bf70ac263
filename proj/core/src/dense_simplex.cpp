#include <algorithm>
#include <cmath>

#include "tdiff/errors.hpp"
#include "tdiff/lp.hpp"

namespace tdiff {

namespace {

constexpr double kDrop = 1e-13;

// Deterministic spread in [1, 2) so perturbed costs are pairwise distinct.
double spread(std::size_t j) {
  double f = static_cast<double>(j) * 0.6180339887498949;
  return 1.0 + (f - std::floor(f));
}

}  // namespace

std::unique_ptr<LpBackend> make_dense_simplex() { return std::make_unique<DenseDualSimplex>(); }

std::size_t DenseDualSimplex::add_variable(double lower, double upper, double cost) {
  lower_.push_back(lower);
  upper_.push_back(upper);
  cost_.push_back(cost);
  value_.push_back(0.0);
  at_upper_.push_back(0);
  basic_row_.push_back(-1);
  return cost_.size() - 1;
}

void DenseDualSimplex::load(const LpModel& model) {
  structural_ = model.variable_count();
  lower_.clear();
  upper_.clear();
  cost_.clear();
  value_.clear();
  at_upper_.clear();
  basic_row_.clear();
  nonbasic_.clear();
  reduced_.clear();
  basis_.clear();
  slack_.clear();
  tab_.clear();
  rows_.clear();
  pivoted_ = false;
  for (std::size_t j = 0; j < structural_; ++j) {
    double lo = model.lower(j), hi = model.upper(j), c = model.cost(j);
    add_variable(lo, hi, c);
    bool up = c < 0.0 || (c == 0.0 && !std::isfinite(lo));
    double v = up ? hi : lo;
    if (!std::isfinite(v)) throw SolverFailure("variable lacks a finite bound on its cost side");
    at_upper_[j] = up;
    value_[j] = v;
    nonbasic_.push_back(j);
    reduced_.push_back(c);
  }
  for (const auto& row : model.rows()) add_row(row);
}

void DenseDualSimplex::add_row(const LpRow& row) {
  rows_.push_back(row);
  const std::size_t width = nonbasic_.size();
  std::vector<double> r(width, 0.0);
  std::vector<double> coef(structural_, 0.0);
  double activity = 0.0;
  for (const auto& t : row.terms) {
    if (t.var >= structural_) throw BadParameters("row references unknown variable");
    coef[t.var] += t.coef;
    activity += t.coef * value_[t.var];
  }
  // slack = a.x; express -a.x in nonbasic terms.
  std::vector<long> slot(cost_.size(), -1);
  for (std::size_t k = 0; k < width; ++k) slot[nonbasic_[k]] = static_cast<long>(k);
  for (std::size_t j = 0; j < structural_; ++j) {
    double a = coef[j];
    if (a == 0.0) continue;
    if (slot[j] >= 0) {
      r[static_cast<std::size_t>(slot[j])] -= a;
    } else {
      const auto& src = tab_[static_cast<std::size_t>(basic_row_[j])];
      for (std::size_t k = 0; k < width; ++k)
        if (src[k] != 0.0) r[k] += a * src[k];
    }
  }
  std::size_t s = add_variable(row.lower, row.upper, 0.0);
  value_[s] = activity;
  basic_row_[s] = static_cast<long>(basis_.size());
  basis_.push_back(s);
  slack_.push_back(s);
  tab_.push_back(std::move(r));
}

void DenseDualSimplex::remove_rows(std::span<const std::size_t> rows) {
  if (rows.empty()) return;
  std::vector<char> drop(basis_.size(), 0);
  for (std::size_t r : rows) {
    if (r >= slack_.size()) throw BadParameters("row index out of range");
    long k = basic_row_[slack_[r]];
    if (k < 0) throw InvariantViolation("cannot drop a binding row");
    drop[static_cast<std::size_t>(k)] = 1;
  }
  std::vector<char> drop_slack(slack_.size(), 0);
  for (std::size_t r : rows) drop_slack[r] = 1;
  std::size_t out = 0;
  for (std::size_t r = 0; r < slack_.size(); ++r)
    if (!drop_slack[r]) {
      slack_[out] = slack_[r];
      if (out != r) rows_[out] = std::move(rows_[r]);
      ++out;
    }
  slack_.resize(out);
  rows_.resize(out);

  out = 0;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (drop[k]) {
      basic_row_[basis_[k]] = -1;
      continue;
    }
    if (out != k) {
      basis_[out] = basis_[k];
      tab_[out] = std::move(tab_[k]);
    }
    basic_row_[basis_[out]] = static_cast<long>(out);
    ++out;
  }
  basis_.resize(out);
  tab_.resize(out);
}

void DenseDualSimplex::recompute_reduced_costs(const std::vector<double>& cost) {
  for (std::size_t k = 0; k < nonbasic_.size(); ++k) reduced_[k] = cost[nonbasic_[k]];
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    double cb = cost[basis_[r]];
    if (cb == 0.0) continue;
    const auto& row = tab_[r];
    for (std::size_t k = 0; k < row.size(); ++k)
      if (row[k] != 0.0) reduced_[k] -= cb * row[k];
  }
}

void DenseDualSimplex::recompute_basic_values() {
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    const auto& row = tab_[r];
    double v = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k)
      if (row[k] != 0.0) v -= row[k] * value_[nonbasic_[k]];
    value_[basis_[r]] = v;
  }
}

void DenseDualSimplex::shift_basics(std::size_t slot, double delta) {
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    double a = tab_[r][slot];
    if (a != 0.0) value_[basis_[r]] -= a * delta;
  }
}

void DenseDualSimplex::pivot(std::size_t r, std::size_t k) {
  auto& prow = tab_[r];
  const std::size_t width = prow.size();
  double inv = 1.0 / prow[k];
  prow[k] = 1.0;
  scratch_nz_.clear();
  for (std::size_t j = 0; j < width; ++j) {
    if (prow[j] == 0.0) continue;
    prow[j] *= inv;
    if (std::abs(prow[j]) < kDrop)
      prow[j] = 0.0;
    else
      scratch_nz_.push_back(j);
  }
  const bool dense = scratch_nz_.size() * 3 > width;
  for (std::size_t i = 0; i < tab_.size(); ++i) {
    if (i == r) continue;
    auto& row = tab_[i];
    double f = row[k];
    if (f == 0.0) continue;
    row[k] = 0.0;
    if (dense) {
      double* dst = row.data();
      const double* src = prow.data();
      for (std::size_t j = 0; j < width; ++j) dst[j] -= f * src[j];
    } else {
      for (std::size_t j : scratch_nz_) row[j] -= f * prow[j];
    }
  }
  double f = reduced_[k];
  reduced_[k] = 0.0;
  if (f != 0.0)
    for (std::size_t j : scratch_nz_) reduced_[j] -= f * prow[j];

  std::size_t leaving = basis_[r];
  std::size_t entering = nonbasic_[k];
  basic_row_[leaving] = -1;
  basic_row_[entering] = static_cast<long>(r);
  basis_[r] = entering;
  nonbasic_[k] = leaving;
}

bool DenseDualSimplex::dual_phase(std::size_t limit, std::size_t& iterations) {
  const double ptol = options_.primal_tol;
  const std::size_t width = nonbasic_.size();
  while (true) {
    std::size_t r = basis_.size();
    double worst = ptol;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      std::size_t b = basis_[i];
      double v = value_[b];
      double infeas = std::max(lower_[b] - v, v - upper_[b]);
      if (infeas > worst) {
        worst = infeas;
        r = i;
      }
    }
    if (r == basis_.size()) return true;
    if (iterations >= limit) throw IterationLimit("dual simplex iteration limit", worst);

    std::size_t p = basis_[r];
    bool increase = value_[p] < lower_[p];
    double target = increase ? lower_[p] : upper_[p];
    double dir = increase ? 1.0 : -1.0;
    const auto& row = tab_[r];

    // Harris two-pass ratio test, largest pivot among near-ties.
    auto eligible = [&](std::size_t k, double& d) {
      double a = row[k];
      std::size_t j = nonbasic_[k];
      if (std::abs(a) <= options_.pivot_tol || lower_[j] == upper_[j]) return false;
      bool up = at_upper_[j];
      double s = dir * a;
      if (up ? s <= 0.0 : s >= 0.0) return false;
      d = std::max(0.0, up ? -reduced_[k] : reduced_[k]);
      return true;
    };
    double bound = kInfinity;
    for (std::size_t k = 0; k < width; ++k) {
      double d;
      if (eligible(k, d)) bound = std::min(bound, (d + options_.dual_tol) / std::abs(row[k]));
    }
    if (bound == kInfinity) return false;
    std::size_t q = width;
    double best = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
      double d;
      if (eligible(k, d) && d / std::abs(row[k]) <= bound && std::abs(row[k]) > best) {
        best = std::abs(row[k]);
        q = k;
      }
    }

    double delta = (target - value_[p]) / -row[q];
    shift_basics(q, delta);
    value_[nonbasic_[q]] += delta;
    value_[p] = target;
    at_upper_[p] = !increase;
    pivot(r, q);
    ++iterations;
  }
}

DenseDualSimplex::Cleanup DenseDualSimplex::primal_cleanup(std::size_t limit,
                                                          std::size_t& iterations) {
  const double dtol = options_.dual_tol;
  const double ptol = options_.primal_tol;
  const std::size_t width = nonbasic_.size();
  // From a dual-optimal basis of the perturbed costs only a short walk is
  // needed; a long one or a rising objective means the tableau has drifted.
  const std::size_t budget = std::max<std::size_t>(1000, 2 * (width + basis_.size()));
  const double start = objective();
  std::size_t steps = 0, degenerate = 0;
  while (true) {
    // Dantzig pricing; Bland after a run of degenerate steps.
    const bool bland = degenerate > 50;
    std::size_t q = width;
    double best = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
      std::size_t j = nonbasic_[k];
      if (lower_[j] == upper_[j]) continue;
      double gain = at_upper_[j] ? reduced_[k] : -reduced_[k];
      if (gain <= dtol) continue;
      if (bland ? (q == width || j < nonbasic_[q]) : gain > best) {
        best = gain;
        q = k;
      }
    }
    if (q == width) return Cleanup::Optimal;
    if (iterations >= limit) throw IterationLimit("primal simplex iteration limit", 0.0);
    if (++steps > budget || objective() > start + 1e-7 * (1.0 + std::abs(start)))
      return Cleanup::Unstable;

    std::size_t j = nonbasic_[q];
    double sigma = at_upper_[j] ? -1.0 : 1.0;
    // Harris two-pass ratio test, largest pivot among near-ties.
    auto ratio = [&](std::size_t i, double slack, bool& to_upper) {
      double a = tab_[i][q];
      if (std::abs(a) <= options_.pivot_tol) return kInfinity;
      std::size_t b = basis_[i];
      double rate = -a * sigma;  // change of the basic value per unit step
      to_upper = rate > 0.0;
      double room = to_upper ? upper_[b] - value_[b] : value_[b] - lower_[b];
      if (!std::isfinite(room)) return kInfinity;
      return std::max(0.0, room + slack) / std::abs(rate);
    };
    double bound = upper_[j] - lower_[j];
    bool dummy = false;
    for (std::size_t i = 0; i < basis_.size(); ++i) bound = std::min(bound, ratio(i, ptol, dummy));
    if (!std::isfinite(bound)) return Cleanup::Unbounded;
    std::size_t leave = basis_.size();
    bool leave_to_upper = false;
    double pivot_size = 0.0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      bool up = false;
      if (ratio(i, 0.0, up) <= bound && std::abs(tab_[i][q]) > pivot_size) {
        pivot_size = std::abs(tab_[i][q]);
        leave = i;
        leave_to_upper = up;
      }
    }
    double step = upper_[j] - lower_[j];
    if (leave < basis_.size()) {
      bool up = false;
      step = std::min(step, ratio(leave, 0.0, up));
    }
    degenerate = step <= ptol ? degenerate + 1 : 0;

    double delta = sigma * step;
    shift_basics(q, delta);
    value_[j] += delta;
    if (leave == basis_.size()) {
      at_upper_[j] = !at_upper_[j];
      value_[j] = at_upper_[j] ? upper_[j] : lower_[j];
    } else {
      std::size_t p = basis_[leave];
      value_[p] = leave_to_upper ? upper_[p] : lower_[p];
      at_upper_[p] = leave_to_upper;
      pivot(leave, q);
    }
    ++iterations;
  }
}

double DenseDualSimplex::objective() const {
  double z = 0.0;
  for (std::size_t j = 0; j < structural_; ++j) z += cost_[j] * value_[j];
  return z;
}

void DenseDualSimplex::rebuild() {
  LpModel model;
  for (std::size_t j = 0; j < structural_; ++j) model.add_variable(lower_[j], upper_[j], cost_[j]);
  for (auto& row : rows_) model.add_row(std::move(row));
  load(model);
}

LpResult DenseDualSimplex::solve() {
  std::size_t limit = options_.iteration_limit;
  if (limit == 0) limit = 50 * (nonbasic_.size() + 2 * basis_.size()) + 1000;

  std::vector<double> work = cost_;
  if (options_.perturbation > 0.0) {
    for (std::size_t j : nonbasic_) {
      if (lower_[j] == upper_[j]) continue;
      double delta = options_.perturbation * spread(j) * (1.0 + std::abs(cost_[j]));
      work[j] += at_upper_[j] ? -delta : delta;
    }
  }

  LpResult result;
  std::size_t iterations = 0;
  recompute_reduced_costs(work);
  bool feasible = dual_phase(limit, iterations);
  if (!feasible && pivoted_) {
    // Rounding error accumulated over many pivots can fake an infeasibility
    // proof; confirm it on a fresh tableau.
    rebuild();
    return solve();
  }
  if (!feasible) {
    result.status = LpStatus::Infeasible;
    result.iterations = iterations;
    return result;
  }
  recompute_reduced_costs(cost_);
  switch (primal_cleanup(limit, iterations)) {
    case Cleanup::Optimal:
      break;
    case Cleanup::Unbounded:
      throw SolverFailure("LP is unbounded");
    case Cleanup::Unstable:
      if (!pivoted_) throw SolverFailure("simplex is numerically unstable");
      rebuild();
      return solve();
  }
  pivoted_ = pivoted_ || iterations > 0;
  recompute_basic_values();

  result.status = LpStatus::Optimal;
  result.x.assign(value_.begin(), value_.begin() + static_cast<long>(structural_));
  result.objective = objective();
  result.iterations = iterations;
  result.row_basic.resize(slack_.size());
  for (std::size_t r = 0; r < slack_.size(); ++r) result.row_basic[r] = basic_row_[slack_[r]] >= 0;
  return result;
}

}  // namespace tdiff
