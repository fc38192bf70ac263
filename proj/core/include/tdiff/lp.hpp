#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace tdiff {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct LpTerm {
  std::size_t var;
  double coef;
};

/// lower <= sum(coef * x[var]) <= upper
struct LpRow {
  std::vector<LpTerm> terms;
  double lower = -kInfinity;
  double upper = kInfinity;
};

/// Minimization LP with bounded variables and ranged rows.
class LpModel {
 public:
  std::size_t add_variable(double lower, double upper, double cost);
  std::size_t add_row(LpRow row);

  std::size_t variable_count() const noexcept { return cost_.size(); }
  std::size_t row_count() const noexcept { return rows_.size(); }

  double lower(std::size_t j) const { return lower_[j]; }
  double upper(std::size_t j) const { return upper_[j]; }
  double cost(std::size_t j) const { return cost_[j]; }
  const LpRow& row(std::size_t r) const { return rows_[r]; }
  const std::vector<LpRow>& rows() const noexcept { return rows_; }

  void set_bounds(std::size_t j, double lower, double upper);

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> cost_;
  std::vector<LpRow> rows_;
};

enum class LpStatus { Optimal, Infeasible };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
  /// Per row, in current order: the row's slack is basic, so the row can be
  /// removed without losing optimality.
  std::vector<char> row_basic;
};

/// Minimal solver surface used by the cutting-plane loop: load a model,
/// solve, append rows, re-solve from the previous basis.
class LpBackend {
 public:
  virtual ~LpBackend() = default;
  virtual void load(const LpModel& model) = 0;
  virtual void add_row(const LpRow& row) = 0;
  /// Drops rows (indices in insertion order after earlier removals) that
  /// are not binding at the last solution; the basis stays optimal.
  virtual void remove_rows(std::span<const std::size_t> rows) = 0;
  /// Throws IterationLimit when the pivot budget runs out.
  virtual LpResult solve() = 0;
};

using LpBackendFactory = std::unique_ptr<LpBackend> (*)();

/// Bounded dual simplex on a dense tableau over the nonbasic columns. Every
/// structural variable must have a finite bound on the side its cost pushes
/// toward, which makes the slack basis dual feasible from the start; added
/// rows keep the basis dual feasible, so re-solves after a cut start where
/// the last solve stopped.
class DenseDualSimplex final : public LpBackend {
 public:
  struct Options {
    double primal_tol = 1e-9;
    double dual_tol = 1e-9;
    double pivot_tol = 1e-7;
    /// Cost perturbation scale against dual degeneracy; removed before the
    /// final primal clean-up so the reported optimum uses the true costs.
    double perturbation = 1e-7;
    std::size_t iteration_limit = 0;  // 0 = automatic
  };

  DenseDualSimplex() = default;
  explicit DenseDualSimplex(Options options) : options_(options) {}

  void load(const LpModel& model) override;
  void add_row(const LpRow& row) override;
  void remove_rows(std::span<const std::size_t> rows) override;
  LpResult solve() override;

  std::size_t row_count() const noexcept { return basis_.size(); }

 private:
  std::size_t add_variable(double lower, double upper, double cost);
  void recompute_reduced_costs(const std::vector<double>& cost);
  void recompute_basic_values();
  void pivot(std::size_t row, std::size_t slot);
  void shift_basics(std::size_t slot, double delta);
  bool dual_phase(std::size_t limit, std::size_t& iterations);
  enum class Cleanup { Optimal, Unbounded, Unstable };
  Cleanup primal_cleanup(std::size_t limit, std::size_t& iterations);
  double objective() const;
  void rebuild();

  Options options_;
  // Rows in current order, kept to rebuild the tableau from scratch.
  std::vector<LpRow> rows_;
  bool pivoted_ = false;  // tableau has been pivoted since the last rebuild
  std::size_t structural_ = 0;
  // Per variable (structurals first, then one slack per row ever added).
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> cost_;
  std::vector<double> value_;
  std::vector<char> at_upper_;
  std::vector<long> basic_row_;  // -1 unless basic
  // Per nonbasic slot; the slot count stays equal to the structural count.
  std::vector<std::size_t> nonbasic_;
  std::vector<double> reduced_;
  // Per row: basic variable, slack variable, and coefficients over slots,
  // so that z_basic + sum_k tab[k] z_nonbasic[k] = 0.
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> slack_;
  std::vector<std::vector<double>> tab_;
  std::vector<std::size_t> scratch_nz_;
};

std::unique_ptr<LpBackend> make_dense_simplex();

}  // namespace tdiff
