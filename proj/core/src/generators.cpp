#include "tdiff/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "tdiff/errors.hpp"

namespace tdiff {

namespace {

Threshold clamp_theta(long long v, std::size_t n) {
  long long hi = static_cast<long long>(n);
  return static_cast<Threshold>(std::clamp<long long>(v, 2, std::max<long long>(hi, 2)));
}

}  // namespace

Graph preferential_attachment(std::size_t n, std::span<const std::size_t> outdeg_choices,
                              std::uint64_t rng_seed) {
  if (n < 2) throw BadParameters("preferential attachment needs n >= 2");
  if (outdeg_choices.empty()) throw BadParameters("no out-degree choices");
  for (std::size_t k : outdeg_choices)
    if (k == 0) throw BadParameters("out-degree choices must be positive");
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<std::size_t> pick_k(0, outdeg_choices.size() - 1);

  std::vector<Edge> edges{{0, 1}};
  std::vector<NodeId> ends{0, 1};  // each node once per incident edge
  for (NodeId u = 2; u < n; ++u) {
    std::size_t k = std::min<std::size_t>(outdeg_choices[pick_k(rng)], u);
    std::uniform_int_distribution<std::size_t> pick(0, ends.size() - 1);
    std::set<NodeId> chosen;
    while (chosen.size() < k) chosen.insert(ends[pick(rng)]);
    for (NodeId v : chosen) {
      edges.push_back({v, u});
      ends.push_back(v);
      ends.push_back(u);
    }
  }
  return Graph(n, edges);
}

std::vector<Threshold> threshold_support(std::size_t n, std::size_t step_c) {
  if (step_c == 0) throw BadParameters("threshold step must be >= 1");
  if (n < 2) throw BadParameters("instances need n >= 2");
  std::vector<Threshold> out;
  std::size_t top = (n + step_c - 1) / step_c;
  for (std::size_t k = 1; k <= top; ++k) {
    long long v = k == 1 ? static_cast<long long>(std::max<std::size_t>(2, step_c))
                         : static_cast<long long>(k * step_c);
    out.push_back(clamp_theta(v, n));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ProblemInstance random_thresholds(const Graph& g, std::size_t step_c, std::uint64_t rng_seed) {
  auto support = threshold_support(g.node_count(), step_c);
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<std::size_t> pick(0, support.size() - 1);
  std::vector<Threshold> theta(g.node_count());
  for (auto& t : theta) t = support[pick(rng)];
  return ProblemInstance(g, std::move(theta));
}

Graph random_connected_graph(std::size_t n, double p, std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  std::bernoulli_distribution coin(std::clamp(p, 0.0, 1.0));
  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<Edge> edges;
  for (NodeId u = 1; u < n; ++u) {
    std::uniform_int_distribution<NodeId> parent(0, u - 1);
    NodeId v = parent(rng);
    seen.insert({v, u});
    edges.push_back({v, u});
  }
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (!seen.count({u, v}) && coin(rng)) edges.push_back({u, v});
  return Graph(n, edges);
}

Graph random_graph(std::size_t n, double p, std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  std::bernoulli_distribution coin(std::clamp(p, 0.0, 1.0));
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({u, v});
  return Graph(n, edges);
}

ProblemInstance random_instance(const Graph& g, std::uint64_t rng_seed) {
  const std::size_t n = g.node_count();
  if (n < 2) throw BadParameters("instances need n >= 2");
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<Threshold> pick(2, static_cast<Threshold>(n));
  std::vector<Threshold> theta(n);
  for (auto& t : theta) t = pick(rng);
  return ProblemInstance(g, std::move(theta));
}

std::size_t min_set_cover(std::size_t universe_size,
                          const std::vector<std::vector<std::size_t>>& sets) {
  const std::size_t m = sets.size();
  if (m > 24) throw CapExceeded("set cover enumeration is capped at 24 sets");
  std::vector<std::uint32_t> mask(m, 0);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t e : sets[k]) mask[k] |= std::uint32_t{1} << e;
  const std::uint32_t full = universe_size == 32 ? ~0u : (std::uint32_t{1} << universe_size) - 1;
  std::size_t best = m + 1;
  for (std::uint32_t pick = 0; pick < (std::uint32_t{1} << m); ++pick) {
    std::size_t size = static_cast<std::size_t>(std::popcount(pick));
    if (size >= best) continue;
    std::uint32_t covered = 0;
    for (std::size_t k = 0; k < m; ++k)
      if (pick >> k & 1u) covered |= mask[k];
    if ((covered & full) == full) best = size;
  }
  if (best > m) throw UncoverableUniverse("sets do not cover the universe");
  return best;
}

SetCoverGadget setcover_gadget(std::size_t universe_size,
                               const std::vector<std::vector<std::size_t>>& sets) {
  if (universe_size == 0) throw BadParameters("universe must be non-empty");
  if (universe_size > 31) throw CapExceeded("universe is capped at 31 elements");
  const std::size_t m = sets.size();
  std::vector<char> covered(universe_size, 0);
  for (const auto& s : sets)
    for (std::size_t e : s) {
      if (e >= universe_size) throw BadParameters("set element outside the universe");
      covered[e] = 1;
    }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end())
    throw UncoverableUniverse("sets do not cover the universe");

  const std::size_t n = m + universe_size * (m + 1);
  auto copy = [&](std::size_t e, std::size_t c) { return static_cast<NodeId>(m + e * (m + 1) + c); };
  std::vector<Edge> edges;
  for (NodeId a = 0; a < m; ++a)
    for (NodeId b = a + 1; b < m; ++b) edges.push_back({a, b});
  for (NodeId k = 0; k < m; ++k) {
    std::set<std::size_t> elems(sets[k].begin(), sets[k].end());
    for (std::size_t e : elems)
      for (std::size_t c = 0; c <= m; ++c) edges.push_back({k, copy(e, c)});
  }
  std::vector<Threshold> theta(n, 2);
  for (std::size_t k = 0; k < m; ++k)
    theta[k] = clamp_theta(static_cast<long long>((m + 1) * universe_size + 1), n);

  SetCoverGadget out{ProblemInstance(Graph(n, edges), std::move(theta)), m, 0};
  out.cover_opt = min_set_cover(universe_size, sets);
  return out;
}

ProblemInstance path_barrier(std::size_t r, bool powers_of_two) {
  if (r < 2) throw BadParameters("path barrier needs r >= 2");
  const std::size_t n = 2 * r + 1;
  auto shape = [&](std::size_t v) -> long long {
    if (!powers_of_two) return static_cast<long long>(v);
    return static_cast<long long>(std::bit_floor(v));
  };
  std::vector<Edge> edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  std::vector<Threshold> theta(n);
  for (std::size_t i = 1; i <= n; ++i) {
    long long v;
    if (i == r + 1)
      v = static_cast<long long>(n);
    else if (i <= r)
      v = shape(i);
    else
      v = shape(2 * r + 2 - i);
    theta[i - 1] = clamp_theta(v, n);
  }
  return ProblemInstance(Graph(n, edges), std::move(theta));
}

ProblemInstance gap_simple(std::size_t h, std::size_t w) {
  if (h < 1 || w < 1) throw BadParameters("gap_simple needs h, w >= 1");
  const std::size_t n = w * h + h + 1;
  auto tail = [&](std::size_t i, std::size_t j) { return static_cast<NodeId>(h + 1 + (i - 1) * w + (j - 1)); };
  std::vector<Edge> edges;
  std::vector<Threshold> theta(n, 2);
  theta[0] = clamp_theta(static_cast<long long>(n), n);
  for (NodeId i = 1; i <= h; ++i) {
    edges.push_back({0, i});
    edges.push_back({i, tail(i, 1)});
    for (std::size_t j = 1; j < w; ++j) edges.push_back({tail(i, j), tail(i, j + 1)});
    theta[i] = clamp_theta(static_cast<long long>(n - h + 2), n);
  }
  return ProblemInstance(Graph(n, edges), std::move(theta));
}

ProblemInstance gap_flow(std::size_t ell, std::size_t w) {
  if (ell < 1 || w < 1) throw BadParameters("gap_flow needs ell, w >= 1");
  if (w % ell != 0) throw BadParameters("gap_flow needs ell to divide w");
  const std::size_t n = (w + 2) * ell + 1;
  auto seed = [&](std::size_t i) { return static_cast<NodeId>(i); };
  auto blocker = [&](std::size_t i) { return static_cast<NodeId>(ell + i); };
  auto tail = [&](std::size_t i, std::size_t j) {
    return static_cast<NodeId>(2 * ell + 1 + (i - 1) * w + (j - 1));
  };
  std::vector<Edge> edges;
  std::vector<Threshold> theta(n);
  theta[0] = clamp_theta(static_cast<long long>(n), n);
  for (std::size_t i = 1; i <= ell; ++i) {
    edges.push_back({0, seed(i)});
    edges.push_back({0, blocker(i)});
    theta[seed(i)] = clamp_theta(static_cast<long long>((w + 1) * ell + 3), n);
    theta[blocker(i)] = clamp_theta(static_cast<long long>((i - 1) * (w + 1) + w / ell + 2), n);
    for (std::size_t j = 1; j <= w; ++j) {
      edges.push_back({seed(i), tail(i, j)});
      edges.push_back({blocker(i), tail(i, j)});
      theta[tail(i, j)] = clamp_theta(static_cast<long long>((i - 1) * (w + 1) + 3), n);
    }
  }
  return ProblemInstance(Graph(n, edges), std::move(theta));
}

WitnessPair nonsubmodular_pair(std::size_t n) {
  if (n < 5) throw BadParameters("witness families need n >= 5");
  const std::size_t size = 2 * n + 1;
  const NodeId hub = static_cast<NodeId>(2 * n);
  std::vector<Edge> edges;
  for (std::size_t base : {std::size_t{0}, n})
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        edges.push_back({static_cast<NodeId>(base + a), static_cast<NodeId>(base + b)});
  for (NodeId u = 0; u < hub; ++u) edges.push_back({u, hub});
  std::vector<Threshold> theta(size, static_cast<Threshold>(n + 2));
  theta[hub] = static_cast<Threshold>(size);
  NodeSet s1(n);
  for (NodeId u = 0; u < n; ++u) s1[u] = u;
  return {ProblemInstance(Graph(size, edges), std::move(theta)), std::move(s1), NodeSet{hub}};
}

WitnessPair nonsupermodular_pair(std::size_t n) {
  if (n < 5) throw BadParameters("witness families need n >= 5");
  auto v = [](std::size_t i) { return static_cast<NodeId>(i - 1); };
  std::vector<Edge> edges;
  for (std::size_t a = 1; a <= n - 4; ++a)
    for (std::size_t b = a + 1; b <= n - 4; ++b) edges.push_back({v(a), v(b)});
  edges.push_back({v(1), v(n - 3)});
  edges.push_back({v(1), v(n - 2)});
  edges.push_back({v(n - 3), v(n - 1)});
  edges.push_back({v(n - 2), v(n)});
  edges.push_back({v(n - 3), v(n - 2)});
  std::vector<Threshold> theta(n, 2);
  for (std::size_t i = n - 3; i <= n; ++i) theta[v(i)] = static_cast<Threshold>(n);
  return {ProblemInstance(Graph(n, edges), std::move(theta)), NodeSet{v(n - 3)}, NodeSet{v(n - 2)}};
}

ProblemInstance worked_example() {
  enum : NodeId { A, B, C, D, E, F };
  std::vector<Edge> edges{{A, B}, {B, C}, {A, C}, {C, D}, {A, D},
                          {C, F}, {C, E}, {E, F}, {B, E}};
  return ProblemInstance(Graph(6, edges), {5, 2, 3, 5, 4, 6});
}

}  // namespace tdiff
