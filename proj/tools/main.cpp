#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tdiff/tdiff.hpp"

namespace {

using namespace tdiff;

constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

// Usage errors: bad flags, unreadable or malformed inputs.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ProblemInstance load(const std::string& path) {
  try {
    return read_instance_file(path);
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out_path);
  f << text;
}

void emit_instance(const ProblemInstance& p, const std::string& out_path) {
  emit(save_instance(p), out_path);
}

NodeSet parse_ids(const std::vector<std::string>& items, std::size_t n) {
  std::vector<NodeId> ids;
  for (const auto& item : items) {
    std::stringstream ss(item);
    for (std::string tok; std::getline(ss, tok, ',');) {
      if (tok.empty()) continue;
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != tok.size()) throw UsageError("bad node id '" + tok + "'");
      if (v >= n) throw UsageError("node id " + tok + " out of range");
      ids.push_back(static_cast<NodeId>(v));
    }
  }
  return make_node_set(std::move(ids));
}

// "3,1,-,2": one time per node, '-' for never.
ActivationSequence parse_times(const std::string& text, std::size_t n) {
  std::vector<Time> times;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok == "-") {
      times.push_back(kNever);
      continue;
    }
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || v == 0 || v > n) throw UsageError("bad time '" + tok + "'");
    times.push_back(static_cast<Time>(v));
  }
  if (times.size() != n)
    throw UsageError("expected " + std::to_string(n) + " times, got " +
                     std::to_string(times.size()));
  return ActivationSequence(std::move(times));
}

std::string join(std::span<const NodeId> ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(ids[i]);
  }
  return s;
}

std::string format_times(const ActivationSequence& T) {
  std::string s;
  for (NodeId u = 0; u < T.size(); ++u) {
    if (u) s += ',';
    s += T.never(u) ? std::string("-") : std::to_string(T[u]);
  }
  return s;
}

struct GenerateArgs {
  std::string model = "pa";
  std::size_t nodes = 50;
  std::size_t step = 5;
  std::vector<std::size_t> outdeg{1, 2, 3, 4};
  double edge_prob = 0.3;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  if (a.nodes < 2) throw UsageError("--nodes must be at least 2");
  ProblemInstance p;
  if (a.model == "pa") {
    if (a.step == 0) throw UsageError("--step must be positive");
    p = random_thresholds(preferential_attachment(a.nodes, a.outdeg, a.seed), a.step, a.seed + 1);
  } else {
    p = random_instance(random_connected_graph(a.nodes, a.edge_prob, a.seed), a.seed + 1);
  }
  emit_instance(p, a.out);
  return 0;
}

struct GadgetArgs {
  std::string kind;
  std::size_t r = 4;
  bool powers_of_two = false;
  std::size_t h = 3;
  std::size_t w = 4;
  std::size_t ell = 2;
  std::size_t n = 5;
  std::size_t universe = 0;
  std::vector<std::string> sets;
  std::string out;
};

int cmd_gadget(const GadgetArgs& a) {
  ProblemInstance p;
  std::string note;
  if (a.kind == "path-barrier") {
    p = path_barrier(a.r, a.powers_of_two);
  } else if (a.kind == "gap-simple") {
    p = gap_simple(a.h, a.w);
  } else if (a.kind == "gap-flow") {
    p = gap_flow(a.ell, a.w);
  } else if (a.kind == "setcover") {
    std::vector<std::vector<std::size_t>> sets;
    for (const auto& s : a.sets) {
      std::vector<std::size_t> members;
      for (NodeId e : parse_ids({s}, a.universe)) members.push_back(e);
      sets.push_back(std::move(members));
    }
    auto gadget = setcover_gadget(a.universe, sets);
    p = std::move(gadget.instance);
    note = "# cover_opt " + std::to_string(gadget.cover_opt) + "\n";
  } else if (a.kind == "nonsubmodular" || a.kind == "nonsupermodular") {
    auto w = a.kind == "nonsubmodular" ? nonsubmodular_pair(a.n) : nonsupermodular_pair(a.n);
    p = std::move(w.instance);
    note = "# s1 " + join(w.s1) + "\n# s2 " + join(w.s2) + "\n";
  } else if (a.kind == "worked-example") {
    p = worked_example();
  } else {
    throw UsageError("unknown gadget kind '" + a.kind + "'");
  }
  emit(note + save_instance(p), a.out);
  return 0;
}

struct SolveArgs {
  std::string file;
  std::string method = std::string(kLpRoundMethod);
  std::uint64_t seed = 1;
  bool pin = false;
  std::size_t first_candidates = 3;
  std::size_t repeats = 5;
  std::size_t cap = kDefaultExactCap;
  bool theory = false;
  unsigned threads = 1;
  std::size_t max_rounds = kLpRoundMaxRounds;
};

int cmd_solve(const SolveArgs& a) {
  ProblemInstance p = load(a.file);
  MethodOptions opts;
  opts.rng_seed = a.seed;
  opts.pin_highest_degree = a.pin;
  opts.first_candidates = a.first_candidates;
  opts.rounding_repeats = a.repeats;
  opts.exact_cap = a.cap;
  opts.relaxation.threads = a.threads;
  opts.relaxation.max_iterations = a.max_rounds;
  if (a.theory) opts.rounding = RoundingConfig::theory();
  NodeSet s = run_method(p, a.method, opts);
  // run_method already simulated; repeat here so nothing unchecked is printed.
  if (!simulate(p, s).feasible) {
    std::cerr << "error: seedset is infeasible\n";
    return kExitFailure;
  }
  std::cout << "seedset " << s.size() << '\n' << join(s) << '\n';
  return 0;
}

struct ValidateArgs {
  std::string file;
  std::vector<std::string> seeds;
  std::string times;
  bool recover = false;
};

int cmd_validate(const ValidateArgs& a) {
  ProblemInstance p = load(a.file);
  ActivationSequence T = parse_times(a.times, p.node_count());
  NodeSet s;
  if (a.recover) {
    if (!a.seeds.empty()) throw UsageError("--recover and --seeds are exclusive");
    s = recover_seedset(p, T);
    std::cout << "seedset " << s.size() << '\n' << join(s) << '\n';
  } else {
    s = parse_ids(a.seeds, p.node_count());
  }
  SequenceReport r = validate_sequence(p, s, T);
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::cout << "consistent " << yn(r.consistent) << '\n'
            << "feasible " << yn(r.feasible) << '\n'
            << "connected " << yn(r.connected) << '\n'
            << "good";
  for (Threshold t : r.good_thresholds) std::cout << ' ' << t;
  std::cout << '\n';
  return r.consistent && r.feasible ? 0 : kExitFailure;
}

struct SimulateArgs {
  std::string file;
  std::vector<std::string> seeds;
};

int cmd_simulate(const SimulateArgs& a) {
  ProblemInstance p = load(a.file);
  NodeSet s = parse_ids(a.seeds, p.node_count());
  DiffusionResult r = simulate(p, s);
  std::cout << "active " << r.final_active.size() << " of " << p.node_count() << '\n'
            << "feasible " << (r.feasible ? "yes" : "no") << '\n'
            << "times " << format_times(r.activation_order) << '\n';
  return r.feasible ? 0 : kExitFailure;
}

struct BenchArgs {
  BenchSpec spec;
  bool pin = false;
  bool full_scale = false;
  bool no_timing = false;
  std::size_t first_candidates = 3;
  std::size_t repeats = 5;
  std::size_t cap = kDefaultExactCap;
  std::size_t max_rounds = kLpRoundMaxRounds;
  std::string out;
  bool show_errors = false;
};

int cmd_bench(BenchArgs a) {
  if (a.full_scale) a.spec.nodes = 200;
  a.spec.timing = !a.no_timing;
  a.spec.method_options.pin_highest_degree = a.pin;
  a.spec.method_options.first_candidates = a.first_candidates;
  a.spec.method_options.rounding_repeats = a.repeats;
  a.spec.method_options.exact_cap = a.cap;
  a.spec.method_options.relaxation.max_iterations = a.max_rounds;
  if (a.spec.steps.empty()) throw UsageError("--steps needs at least one value");
  for (std::size_t c : a.spec.steps)
    if (c == 0) throw UsageError("--steps values must be positive");
  BenchReport report;
  try {
    report = run_bench(a.spec);
  } catch (const BadParameters& e) {
    throw UsageError(e.what());
  }
  emit(report.csv(), a.out);
  bool failed = false;
  for (const auto& r : report.trials)
    if (!r.ok) {
      failed = true;
      if (a.show_errors) std::cerr << r.instance << ' ' << r.method << ": " << r.error << '\n';
    }
  return failed ? kExitFailure : 0;
}

struct ConditionArgs {
  std::string file;
  double eps = 0.1;
  std::size_t cap = kDefaultExactCap;
};

int cmd_condition(const ConditionArgs& a) {
  ProblemInstance p = load(a.file);
  if (!(a.eps >= 0.0 && a.eps < 1.0)) throw UsageError("--eps must lie in [0, 1)");
  std::size_t up = opt_seedset(scale_thresholds_up(p, a.eps), a.cap).size();
  std::size_t down = opt_seedset(scale_thresholds_down(p, a.eps), a.cap).size();
  std::cout << "opt_plus " << up << '\n'
            << "opt_minus " << down << '\n'
            << "kappa " << condition_number(p, a.eps, a.cap) << '\n';
  return 0;
}

struct BucketArgs {
  std::string file;
  double eps = 0.1;
  std::string out;
};

int cmd_bucket(const BucketArgs& a) {
  ProblemInstance p = load(a.file);
  if (!(a.eps > 0.0)) throw UsageError("--eps must be positive");
  emit_instance(bucket_thresholds(p, a.eps), a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seedset selection for threshold technology diffusion"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a random instance");
  generate->add_option("--model", gen.model, "pa (preferential attachment) or random")
      ->check(CLI::IsMember({"pa", "random"}));
  generate->add_option("--nodes", gen.nodes, "Node count");
  generate->add_option("--step", gen.step, "Threshold step c (pa model)");
  generate->add_option("--outdeg", gen.outdeg, "Out-degree choices (pa model)")->delimiter(',');
  generate->add_option("--edge-prob", gen.edge_prob, "Extra edge probability (random model)")
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("--seed", gen.seed, "RNG seed");
  generate->add_option("-o,--output", gen.out, "Output file (default stdout)");

  GadgetArgs gad;
  auto* gadget = app.add_subcommand("gadget", "Write a structured instance");
  gadget->add_option("--kind", gad.kind,
                     "path-barrier, gap-simple, gap-flow, setcover, nonsubmodular, "
                     "nonsupermodular, worked-example")
      ->required();
  gadget->add_option("--r", gad.r, "Path barrier size");
  gadget->add_flag("--powers-of-two", gad.powers_of_two, "Path barrier with power-of-two thresholds");
  gadget->add_option("--chains", gad.h, "gap-simple chain count");
  gadget->add_option("--tail", gad.w, "Tail length");
  gadget->add_option("--ell", gad.ell, "gap-flow seed candidates");
  gadget->add_option("--n", gad.n, "Witness size");
  gadget->add_option("--universe", gad.universe, "Set-cover universe size");
  gadget->add_option("--set", gad.sets, "Set-cover set as comma-separated elements (repeatable)");
  gadget->add_option("-o,--output", gad.out, "Output file (default stdout)");

  SolveArgs sol;
  auto* solve = app.add_subcommand("solve", "Compute a feasible seedset");
  solve->add_option("file", sol.file, "Instance file")->required();
  solve->add_option("--method", sol.method, "Heuristic name, lp-round or exact");
  solve->add_option("--seed", sol.seed, "RNG seed for rounding");
  solve->add_flag("--pin-highest-degree", sol.pin, "Use the highest-degree node as first activation");
  solve->add_option("--first-candidates", sol.first_candidates,
                    "First-node candidates by degree; 0 tries every node");
  solve->add_option("--repeats", sol.repeats, "Independent roundings, smallest kept");
  solve->add_option("--cap", sol.cap, "Node cap for exact");
  solve->add_flag("--theory", sol.theory, "Use the theoretical rounding parameters");
  solve->add_option("--threads", sol.threads, "Separation threads; 0 = all cores");
  solve->add_option("--max-rounds", sol.max_rounds,
                    "Cutting-plane rounds before lp-round uses the last LP point");

  ValidateArgs val;
  auto* validate = app.add_subcommand("validate", "Check an activation sequence");
  validate->add_option("file", val.file, "Instance file")->required();
  validate->add_option("--times", val.times, "Comma-separated time per node, '-' for never")
      ->required();
  validate->add_option("--seeds", val.seeds, "Seed ids, comma-separated");
  validate->add_flag("--recover", val.recover, "Derive the seedset from the sequence");

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run the cascade from a seedset");
  simulate_cmd->add_option("file", sim.file, "Instance file")->required();
  simulate_cmd->add_option("--seeds", sim.seeds, "Seed ids, comma-separated")->required();

  BenchArgs ben;
  auto* bench = app.add_subcommand("bench", "Compare methods on random instances; CSV output");
  bench->add_option("--nodes", ben.spec.nodes, "Nodes per instance");
  bench->add_option("--outdeg", ben.spec.outdeg_choices, "Out-degree choices")->delimiter(',');
  bench->add_option("--steps", ben.spec.steps, "Threshold steps c")->delimiter(',');
  bench->add_option("--trials", ben.spec.trials, "Instances per step");
  bench->add_option("--methods", ben.spec.methods, "Methods (default: heuristics and lp-round)")
      ->delimiter(',');
  bench->add_option("--seed", ben.spec.rng_seed, "RNG seed");
  bench->add_option("--jobs", ben.spec.jobs, "Trials run concurrently");
  bench->add_flag("--pin-highest-degree", ben.pin, "Use the highest-degree node as first activation");
  bench->add_flag("--full-scale", ben.full_scale, "200 nodes per instance");
  bench->add_flag("--no-timing", ben.no_timing, "Report 0 seconds so output is reproducible");
  bench->add_option("--first-candidates", ben.first_candidates,
                    "First-node candidates by degree; 0 tries every node");
  bench->add_option("--repeats", ben.repeats, "Independent roundings, smallest kept");
  bench->add_option("--cap", ben.cap, "Node cap for exact");
  bench->add_option("--max-rounds", ben.max_rounds,
                    "Cutting-plane rounds before lp-round uses the last LP point");
  bench->add_flag("--show-errors", ben.show_errors, "Print failed rows to stderr");
  bench->add_option("-o,--output", ben.out, "Output file (default stdout)");

  ConditionArgs con;
  auto* condition = app.add_subcommand("condition", "Condition number by exhaustive search");
  condition->add_option("file", con.file, "Instance file")->required();
  condition->add_option("--eps", con.eps, "Perturbation in [0, 1)");
  condition->add_option("--cap", con.cap, "Node cap");

  BucketArgs buc;
  auto* bucket = app.add_subcommand("bucket", "Round thresholds up to a geometric grid");
  bucket->add_option("file", buc.file, "Instance file")->required();
  bucket->add_option("--eps", buc.eps, "Grid ratio minus one");
  bucket->add_option("-o,--output", buc.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*gadget) return cmd_gadget(gad);
    if (*solve) return cmd_solve(sol);
    if (*validate) return cmd_validate(val);
    if (*simulate_cmd) return cmd_simulate(sim);
    if (*bench) return cmd_bench(ben);
    if (*condition) return cmd_condition(con);
    if (*bucket) return cmd_bucket(buc);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BadParameters& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
