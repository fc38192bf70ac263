#include "tdiff/max_flow.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "tdiff/errors.hpp"

namespace tdiff {

MaxFlow::MaxFlow(std::size_t nodes, double eps) : eps_(eps), adj_(nodes) {}

std::size_t MaxFlow::add_node() {
  adj_.emplace_back();
  return adj_.size() - 1;
}

std::size_t MaxFlow::add_arc(std::size_t from, std::size_t to, double capacity) {
  if (from >= adj_.size() || to >= adj_.size()) throw BadParameters("arc endpoint out of range");
  if (capacity < 0.0) throw BadParameters("negative arc capacity");
  std::size_t id = arcs_.size() / 2;
  adj_[from].push_back(arcs_.size());
  arcs_.push_back({to, capacity, 0.0});
  adj_[to].push_back(arcs_.size());
  arcs_.push_back({from, 0.0, 0.0});
  return id;
}

void MaxFlow::set_capacity(std::size_t arc, double capacity) {
  if (capacity < 0.0) throw BadParameters("negative arc capacity");
  if (capacity + eps_ < arcs_[2 * arc].flow)
    throw InvariantViolation("capacity below current flow");
  arcs_[2 * arc].cap = capacity;
}

void MaxFlow::clear_flow() {
  for (auto& a : arcs_) a.flow = 0.0;
  total_ = 0.0;
}

bool MaxFlow::build_levels(std::size_t s, std::size_t t) {
  level_.assign(adj_.size(), -1);
  std::deque<std::size_t> queue{s};
  level_[s] = 0;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t e : adj_[u]) {
      std::size_t v = arcs_[e].to;
      if (level_[v] < 0 && residual(e) > eps_) {
        level_[v] = level_[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return level_[t] >= 0;
}

double MaxFlow::augment(std::size_t u, std::size_t t, double limit) {
  if (u == t) return limit;
  for (std::size_t& i = next_[u]; i < adj_[u].size(); ++i) {
    std::size_t e = adj_[u][i];
    std::size_t v = arcs_[e].to;
    double r = residual(e);
    if (r <= eps_ || level_[v] != level_[u] + 1) continue;
    double pushed = augment(v, t, std::min(limit, r));
    if (pushed > eps_) {
      arcs_[e].flow += pushed;
      arcs_[e ^ 1].flow -= pushed;
      return pushed;
    }
  }
  return 0.0;
}

double MaxFlow::run(std::size_t s, std::size_t t) {
  if (s == t) throw BadParameters("source equals sink");
  while (build_levels(s, t)) {
    next_.assign(adj_.size(), 0);
    while (true) {
      double pushed = augment(s, t, std::numeric_limits<double>::infinity());
      if (pushed <= eps_) break;
      if (std::isinf(pushed)) throw InvariantViolation("unbounded flow");
      total_ += pushed;
    }
  }
  return total_;
}

std::vector<char> MaxFlow::residual_reachable(std::size_t s) const {
  std::vector<char> seen(adj_.size(), 0);
  std::vector<std::size_t> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t e : adj_[u]) {
      std::size_t v = arcs_[e].to;
      if (!seen[v] && residual(e) > eps_) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

std::vector<char> MaxFlow::residual_coreachable(std::size_t t) const {
  std::vector<char> seen(adj_.size(), 0);
  std::vector<std::size_t> stack{t};
  seen[t] = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t e : adj_[v]) {
      std::size_t u = arcs_[e].to;  // e ^ 1 runs u -> v
      if (!seen[u] && residual(e ^ 1) > eps_) {
        seen[u] = 1;
        stack.push_back(u);
      }
    }
  }
  return seen;
}

}  // namespace tdiff
