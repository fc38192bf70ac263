#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>

#include "support/oracles.hpp"

using namespace tdiff;

namespace {

// Minimum over the vertices of a box-bounded LP; nullopt when infeasible.
std::optional<double> vertex_minimum(const LpModel& m) {
  const std::size_t nv = m.variable_count();
  struct Plane {
    std::vector<double> a;
    double b;
  };
  std::vector<Plane> planes;
  for (std::size_t j = 0; j < nv; ++j) {
    std::vector<double> a(nv, 0.0);
    a[j] = 1.0;
    planes.push_back({a, m.lower(j)});
    planes.push_back({a, m.upper(j)});
  }
  for (const auto& row : m.rows()) {
    std::vector<double> a(nv, 0.0);
    for (auto t : row.terms) a[t.var] += t.coef;
    if (std::isfinite(row.lower)) planes.push_back({a, row.lower});
    if (std::isfinite(row.upper)) planes.push_back({a, row.upper});
  }
  std::optional<double> best;
  std::vector<std::size_t> pick(nv);
  auto solve_pick = [&]() {
    std::vector<std::vector<double>> M(nv, std::vector<double>(nv + 1));
    for (std::size_t r = 0; r < nv; ++r) {
      for (std::size_t c = 0; c < nv; ++c) M[r][c] = planes[pick[r]].a[c];
      M[r][nv] = planes[pick[r]].b;
    }
    for (std::size_t c = 0; c < nv; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c; r < nv; ++r)
        if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
      if (std::abs(M[piv][c]) < 1e-12) return;
      std::swap(M[c], M[piv]);
      for (std::size_t r = 0; r < nv; ++r) {
        if (r == c) continue;
        double f = M[r][c] / M[c][c];
        for (std::size_t k = c; k <= nv; ++k) M[r][k] -= f * M[c][k];
      }
    }
    std::vector<double> x(nv);
    for (std::size_t c = 0; c < nv; ++c) x[c] = M[c][nv] / M[c][c];
    for (std::size_t j = 0; j < nv; ++j)
      if (x[j] < m.lower(j) - 1e-9 || x[j] > m.upper(j) + 1e-9) return;
    for (const auto& row : m.rows()) {
      double s = 0.0;
      for (auto t : row.terms) s += t.coef * x[t.var];
      if (s < row.lower - 1e-9 || s > row.upper + 1e-9) return;
    }
    double z = 0.0;
    for (std::size_t j = 0; j < nv; ++j) z += m.cost(j) * x[j];
    if (!best || z < *best) best = z;
  };
  auto rec = [&](auto&& self, std::size_t depth, std::size_t from) -> void {
    if (depth == nv) {
      solve_pick();
      return;
    }
    for (std::size_t k = from; k < planes.size(); ++k) {
      pick[depth] = k;
      self(self, depth + 1, k + 1);
    }
  };
  rec(rec, 0, 0);
  return best;
}

LpModel random_model(std::mt19937_64& rng, std::size_t nv, std::size_t rows) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_int_distribution<int> small(-3, 3);
  LpModel m;
  for (std::size_t j = 0; j < nv; ++j) m.add_variable(0.0, 1.0 + (rng() % 3), small(rng));
  for (std::size_t r = 0; r < rows; ++r) {
    LpRow row;
    for (std::size_t j = 0; j < nv; ++j)
      if (rng() % 4) row.terms.push_back({j, std::round(coef(rng) * 4) / 4});
    double mid = coef(rng);
    switch (rng() % 3) {
      case 0: row.lower = mid; break;
      case 1: row.upper = mid; break;
      default:
        row.lower = mid;
        row.upper = mid + std::abs(coef(rng));
    }
    m.add_row(row);
  }
  return m;
}

}  // namespace

TEST_SUITE("lp") {
  TEST_CASE("model validation") {
    LpModel m;
    CHECK(m.add_variable(0, 1, 1) == 0);
    CHECK_THROWS_AS(m.add_variable(2, 1, 0), BadParameters);
    LpRow bad;
    bad.terms.push_back({3, 1.0});
    CHECK_THROWS_AS(m.add_row(bad), BadParameters);
    CHECK_THROWS_AS(m.set_bounds(0, 1, 0), BadParameters);
  }

  TEST_CASE("small LP by hand") {
    // min -x - y  s.t.  x + 2y <= 2,  3x + y <= 3,  0 <= x, y <= 1
    LpModel m;
    m.add_variable(0, 1, -1);
    m.add_variable(0, 1, -1);
    m.add_row({{{0, 1.0}, {1, 2.0}}, -kInfinity, 2.0});
    m.add_row({{{0, 3.0}, {1, 1.0}}, -kInfinity, 3.0});
    auto lp = make_dense_simplex();
    lp->load(m);
    auto r = lp->solve();
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(-1.4));
    CHECK(r.x[0] == doctest::Approx(0.8));
    CHECK(r.x[1] == doctest::Approx(0.6));
  }

  TEST_CASE("infeasible model is reported") {
    LpModel m;
    m.add_variable(0, 1, 1);
    m.add_variable(0, 1, 1);
    m.add_row({{{0, 1.0}, {1, 1.0}}, 3.0, kInfinity});
    auto lp = make_dense_simplex();
    lp->load(m);
    CHECK(lp->solve().status == LpStatus::Infeasible);
  }

  TEST_CASE("matches vertex enumeration on random small LPs") {
    std::mt19937_64 rng(61);
    int optimal = 0, infeasible = 0;
    for (int k = 0; k < 300; ++k) {
      std::size_t nv = 1 + rng() % 3;
      LpModel m = random_model(rng, nv, 1 + rng() % 4);
      auto want = vertex_minimum(m);
      auto lp = make_dense_simplex();
      lp->load(m);
      auto got = lp->solve();
      if (!want) {
        CHECK(got.status == LpStatus::Infeasible);
        ++infeasible;
        continue;
      }
      ++optimal;
      REQUIRE(got.status == LpStatus::Optimal);
      CHECK(got.objective == doctest::Approx(*want).epsilon(1e-7));
    }
    CHECK(optimal > 50);
    CHECK(infeasible > 10);
  }

  TEST_CASE("adding rows one at a time matches a fresh solve") {
    std::mt19937_64 rng(62);
    for (int k = 0; k < 100; ++k) {
      std::size_t nv = 2 + rng() % 2;
      LpModel full = random_model(rng, nv, 4);
      LpModel head;
      for (std::size_t j = 0; j < nv; ++j) head.add_variable(full.lower(j), full.upper(j), full.cost(j));
      auto warm = make_dense_simplex();
      warm->load(head);
      warm->solve();
      LpResult last;
      bool infeasible = false;
      for (const auto& row : full.rows()) {
        warm->add_row(row);
        last = warm->solve();
        if (last.status == LpStatus::Infeasible) {
          infeasible = true;
          break;
        }
      }
      auto want = vertex_minimum(full);
      CHECK(infeasible == !want.has_value());
      if (want && !infeasible) CHECK(last.objective == doctest::Approx(*want).epsilon(1e-7));
    }
  }

  TEST_CASE("dropping non-binding rows keeps the optimum") {
    LpModel m;
    m.add_variable(0, 1, -1);
    m.add_variable(0, 1, -1);
    m.add_row({{{0, 1.0}, {1, 1.0}}, -kInfinity, 1.5});
    m.add_row({{{0, 1.0}}, -kInfinity, 5.0});
    auto lp = make_dense_simplex();
    lp->load(m);
    auto r = lp->solve();
    REQUIRE(r.row_basic.size() == 2);
    CHECK_FALSE(r.row_basic[0]);
    CHECK(r.row_basic[1]);
    CHECK_THROWS_AS(lp->remove_rows(std::vector<std::size_t>{0}), InvariantViolation);
    lp->remove_rows(std::vector<std::size_t>{1});
    auto again = lp->solve();
    CHECK(again.iterations == 0);
    CHECK(again.objective == doctest::Approx(-1.5));
    CHECK(again.row_basic.size() == 1);
  }

  TEST_CASE("iteration limit is enforced") {
    std::mt19937_64 rng(63);
    DenseDualSimplex::Options opt;
    opt.iteration_limit = 1;
    bool hit = false;
    for (int k = 0; k < 50 && !hit; ++k) {
      DenseDualSimplex lp(opt);
      lp.load(random_model(rng, 3, 4));
      try {
        lp.solve();
      } catch (const IterationLimit&) {
        hit = true;
      }
    }
    CHECK(hit);
  }
}
