#include "tdiff/diffusion.hpp"

#include <algorithm>
#include <numeric>

#include "tdiff/errors.hpp"

namespace tdiff {

ActivationSequence ActivationSequence::from_order(std::span<const NodeId> order, std::size_t n) {
  ActivationSequence T(n);
  for (std::size_t k = 0; k < order.size(); ++k) T[order[k]] = static_cast<Time>(k + 1);
  return T;
}

bool ActivationSequence::is_permutation() const {
  const std::size_t n = time_.size();
  std::vector<char> used(n + 1, 0);
  for (Time t : time_) {
    if (t == kNever || t < 1 || t > n || used[t]) return false;
    used[t] = 1;
  }
  return true;
}

std::size_t ActivationSequence::active_by(Time t) const {
  return static_cast<std::size_t>(
      std::count_if(time_.begin(), time_.end(), [t](Time x) { return x <= t; }));
}

std::vector<Time> ActivationSequence::distinct_times() const {
  std::vector<Time> out;
  for (Time t : time_) {
    if (t != kNever) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Cascade::Cascade(const ProblemInstance& p)
    : p_(&p), time_(p.node_count(), kNever), parent_(p.node_count()), size_(p.node_count(), 1) {
  std::iota(parent_.begin(), parent_.end(), NodeId{0});
}

NodeId Cascade::find(NodeId u) {
  while (parent_[u] != u) {
    parent_[u] = parent_[parent_[u]];
    u = parent_[u];
  }
  return u;
}

void Cascade::activate(NodeId u) {
  time_[u] = ++clock_;
  ++active_count_;
  for (NodeId v : p_->graph().neighbors(u)) {
    if (!active(v)) continue;
    NodeId a = find(u);
    NodeId b = find(v);
    if (a == b) continue;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
}

std::size_t Cascade::joined_component_size(NodeId u) {
  std::size_t total = 1;
  auto nbrs = p_->graph().neighbors(u);
  // Distinct roots among active neighbors; degrees are small so a linear
  // scan over the roots seen so far is fine.
  std::vector<NodeId> roots;
  for (NodeId v : nbrs) {
    if (!active(v)) continue;
    NodeId r = find(v);
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) {
      roots.push_back(r);
      total += size_[r];
    }
  }
  return total;
}

void Cascade::add_seed(NodeId u) {
  if (!active(u)) activate(u);
}

void Cascade::run() {
  const std::size_t n = time_.size();
  NodeId u = 0;
  while (u < n) {
    if (!active(u) && joined_component_size(u) >= p_->theta(u)) {
      activate(u);
      u = 0;  // smallest-id eligible node goes next
      continue;
    }
    ++u;
  }
}

NodeSet Cascade::active_nodes() const {
  NodeSet out;
  for (NodeId u = 0; u < time_.size(); ++u) {
    if (active(u)) out.push_back(u);
  }
  return out;
}

DiffusionResult simulate(const ProblemInstance& p, std::span<const NodeId> seeds) {
  Cascade cascade(p);
  NodeSet sorted = make_node_set({seeds.begin(), seeds.end()});
  for (NodeId s : sorted) cascade.add_seed(s);
  cascade.run();
  DiffusionResult result;
  result.final_active = cascade.active_nodes();
  result.activation_order = cascade.order();
  result.feasible = cascade.all_active();
  return result;
}

std::size_t influence(const ProblemInstance& p, std::span<const NodeId> seeds) {
  return simulate(p, seeds).final_active.size();
}

bool is_prefix_connected(const Graph& g, const ActivationSequence& T) {
  std::vector<NodeId> prefix;
  for (Time t : T.distinct_times()) {
    prefix.clear();
    for (NodeId u = 0; u < T.size(); ++u) {
      if (T[u] <= t) prefix.push_back(u);
    }
    if (!induces_connected(g, prefix)) return false;
  }
  return true;
}

std::vector<Threshold> good_thresholds(const ProblemInstance& p, const ActivationSequence& T) {
  std::vector<Threshold> good;
  for (Threshold theta : threshold_profile(p).values) {
    if (T.active_by(theta - 1) >= theta - 1) good.push_back(theta);
  }
  return good;
}

SequenceReport validate_sequence(const ProblemInstance& p, std::span<const NodeId> seeds,
                                 const ActivationSequence& T) {
  const Graph& g = p.graph();
  const std::size_t n = p.node_count();
  std::vector<char> is_seed(n, 0);
  for (NodeId s : seeds) is_seed[s] = 1;

  SequenceReport report;
  report.feasible = std::all_of(T.times().begin(), T.times().end(),
                                [n](Time t) { return t != kNever && t >= 1 && t <= n; });

  report.consistent = true;
  std::vector<NodeId> earlier;
  for (NodeId u = 0; u < n && report.consistent; ++u) {
    if (is_seed[u] || T.never(u)) continue;
    earlier.clear();
    for (NodeId v = 0; v < n; ++v) {
      if (v == u || T[v] < T[u]) earlier.push_back(v);
    }
    for (const NodeSet& piece : connected_components(g, earlier)) {
      if (std::binary_search(piece.begin(), piece.end(), u)) {
        if (piece.size() < p.theta(u)) report.consistent = false;
        break;
      }
    }
  }

  report.connected = is_prefix_connected(g, T);
  report.good_thresholds = good_thresholds(p, T);
  report.all_good = report.good_thresholds.size() == threshold_profile(p).count();
  return report;
}

NodeSet recover_seedset(const ProblemInstance& p, const ActivationSequence& T) {
  if (!is_prefix_connected(p.graph(), T)) {
    throw NotConnected("activation sequence is not prefix-connected");
  }
  NodeSet seeds;
  for (NodeId u = 0; u < p.node_count(); ++u) {
    if (T[u] < p.theta(u)) seeds.push_back(u);
  }
  return seeds;
}

}  // namespace tdiff
