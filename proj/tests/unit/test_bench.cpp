#include <doctest.h>

#include <sstream>

#include "support/oracles.hpp"

using namespace tdiff;

namespace {
std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::size_t commas(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), ',')); }

BenchSpec small_spec() {
  BenchSpec spec;
  spec.nodes = 12;
  spec.steps = {2, 4};
  spec.trials = 2;
  spec.methods = {"degree", "degree-connected", "lp-round"};
  spec.timing = false;
  return spec;
}
}  // namespace

TEST_SUITE("bench") {
  TEST_CASE("jaccard and top overlap") {
    CHECK(jaccard(NodeSet{1, 2, 3}, NodeSet{2, 3, 4}) == doctest::Approx(0.5));
    CHECK(jaccard(NodeSet{}, NodeSet{}) == 1.0);
    CHECK(jaccard(NodeSet{1}, NodeSet{2}) == 0.0);
    CHECK(jaccard(std::vector<NodeId>{3, 1, 1}, NodeSet{1, 3}) == 1.0);
    std::vector<double> score{5, 1, 4, 4, 0};
    CHECK(top_overlap(score, NodeSet{0, 2}) == 1.0);
    CHECK(top_overlap(score, NodeSet{0, 3}) == doctest::Approx(0.5));
    CHECK(top_overlap(score, NodeSet{1, 4}) == 0.0);
    CHECK(top_overlap(score, NodeSet{}) == 0.0);
  }

  TEST_CASE("known methods") {
    auto m = known_methods();
    for (HeuristicKind k : kAllHeuristics)
      CHECK(std::find(m.begin(), m.end(), std::string(to_string(k))) != m.end());
    CHECK(std::find(m.begin(), m.end(), std::string(kLpRoundMethod)) != m.end());
    CHECK(std::find(m.begin(), m.end(), std::string(kExactMethod)) != m.end());
    CHECK_THROWS_AS(run_method(worked_example(), "nope", {}), BadParameters);
  }

  TEST_CASE("every method returns a feasible seedset") {
    auto p = worked_example();
    for (const auto& m : known_methods()) {
      auto s = run_method(p, m, {});
      CHECK(simulate(p, s).feasible);
      CHECK(s.size() >= 1);
    }
    MethodOptions pin;
    pin.pin_highest_degree = true;
    CHECK(simulate(p, run_method(p, "lp-round", pin)).feasible);
  }

  TEST_CASE("csv shape") {
    auto report = run_bench(small_spec());
    auto rows = lines(report.csv());
    REQUIRE(rows.size() == 1 + 2 * 2 * 3 + 2 * 3);
    CHECK(rows[0] == kBenchHeader);
    for (const auto& r : rows) CHECK(commas(r) == 6);
    CHECK(rows[1].rfind("c2-t0,degree,", 0) == 0);
    CHECK(rows[13].rfind("c2-mean,degree,", 0) == 0);
    CHECK(report.trials.size() == 12);
    CHECK(report.means.size() == 6);
    for (const auto& r : report.trials) {
      CHECK(r.ok);
      REQUIRE(r.jaccard);
      if (r.method == "lp-round") CHECK(*r.jaccard == 1.0);
      CHECK(r.seconds == 0.0);
    }
  }

  TEST_CASE("means average the trial rows") {
    auto report = run_bench(small_spec());
    for (const auto& m : report.means) {
      double sum = 0;
      int k = 0;
      for (const auto& r : report.trials)
        if (r.step == m.step && r.method == m.method) {
          sum += r.size;
          ++k;
        }
      CHECK(m.size == doctest::Approx(sum / k));
    }
  }

  TEST_CASE("single method is its own reference") {
    BenchSpec spec;
    spec.nodes = 20;
    spec.trials = 1;
    spec.methods = {"degree"};
    auto report = run_bench(spec);
    REQUIRE(report.trials.size() == 1);
    CHECK(*report.trials[0].jaccard == 1.0);
  }

  TEST_CASE("no-timing output is byte identical across runs") {
    auto spec = small_spec();
    CHECK(run_bench(spec).csv() == run_bench(spec).csv());
    spec.jobs = 3;
    CHECK(run_bench(spec).csv() == run_bench(small_spec()).csv());
  }

  TEST_CASE("failed methods print NA") {
    BenchSpec spec;
    spec.nodes = 12;
    spec.trials = 1;
    spec.methods = {"exact", "degree"};
    spec.method_options.exact_cap = 5;
    spec.timing = false;
    auto report = run_bench(spec);
    REQUIRE(report.trials.size() == 2);
    CHECK_FALSE(report.trials[0].ok);
    CHECK_FALSE(report.trials[0].error.empty());
    auto rows = lines(report.csv());
    CHECK(rows[1] == "c5-t0,exact,NA,NA,NA,NA,0.000000");
    CHECK(report.trials[1].jaccard == 1.0);
  }

  TEST_CASE("bench instances are reproducible") {
    BenchSpec spec;
    spec.nodes = 30;
    CHECK(bench_instance(spec, 5, 0) == bench_instance(spec, 5, 0));
    CHECK_FALSE(bench_instance(spec, 5, 0) == bench_instance(spec, 5, 1));
    auto p = bench_instance(spec, 5, 2);
    for (Threshold t : p.thresholds()) CHECK(t % 5 == 0);
  }

  TEST_CASE("bad specs are rejected") {
    BenchSpec spec;
    spec.methods = {"nope"};
    CHECK_THROWS_AS(run_bench(spec), BadParameters);
    spec.methods = {"degree"};
    spec.trials = 0;
    CHECK_THROWS_AS(run_bench(spec), BadParameters);
  }
}
