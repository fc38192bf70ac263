#include "tdiff/flow_network.hpp"

#include "tdiff/errors.hpp"
#include "tdiff/lp.hpp"

namespace tdiff {

AssignmentMatrix AssignmentMatrix::from_sequence(const ActivationSequence& T) {
  AssignmentMatrix x(T.size());
  for (NodeId u = 0; u < T.size(); ++u) {
    if (T.never(u)) continue;
    if (T[u] < 1 || T[u] > T.size()) throw InvariantViolation("activation time out of range");
    x(u, T[u]) = 1.0;
  }
  return x;
}

double AssignmentMatrix::window(NodeId i, Time lo, Time hi) const {
  double s = 0.0;
  for (Time t = lo; t <= hi && t <= n_; ++t) s += (*this)(i, t);
  return s;
}

double CutConstraint::lhs(const AssignmentMatrix& x) const {
  double s = 0.0;
  for (auto [j, tau] : cut) s += x(j, tau);
  return s;
}

double CutConstraint::rhs(const ProblemInstance& p, const AssignmentMatrix& x) const {
  return x.window(sink_node, p.theta(sink_node), sink_time);
}

double CutConstraint::violation(const ProblemInstance& p, const AssignmentMatrix& x) const {
  return rhs(p, x) - lhs(x);
}

FlowNetwork::FlowNetwork(const ProblemInstance& p, const AssignmentMatrix& x, NodeId source,
                         FlowLayout layout)
    : p_(&p), x_(x), source_(source) {
  const std::size_t n = p.node_count();
  if (x.size() != n) throw BadParameters("assignment size does not match instance");
  if (source >= n) throw BadParameters("source node out of range");
  const Graph& g = p.graph();
  const std::size_t cells = n * n;

  std::size_t nodes = 2 * cells + (layout == FlowLayout::DelayChain ? cells : 0);
  base_ = MaxFlow(nodes + 1);
  sink_ = nodes;
  for (NodeId i = 0; i < n; ++i)
    for (Time t = 1; t <= n; ++t) base_.add_arc(plus(i, t), minus(i, t), x(i, t));

  if (layout == FlowLayout::DelayChain) {
    auto delay = [&](NodeId i, Time t) { return 2 * cells + x_.index(i, t); };
    for (NodeId i = 0; i < n; ++i) {
      for (Time t = 1; t < n; ++t) {
        base_.add_arc(minus(i, t), delay(i, t), kInfinity);
        if (t + 1 < n) base_.add_arc(delay(i, t), delay(i, t + 1), kInfinity);
        for (NodeId j : g.neighbors(i)) base_.add_arc(delay(i, t), plus(j, t + 1), kInfinity);
      }
    }
  } else {
    for (NodeId i = 0; i < n; ++i)
      for (Time t = 1; t < n; ++t)
        for (NodeId j : g.neighbors(i))
          for (Time u = t + 1; u <= n; ++u) base_.add_arc(minus(i, t), plus(j, u), kInfinity);
  }

  sink_arc_.resize(cells);
  for (NodeId i = 0; i < n; ++i)
    for (Time t = 1; t <= n; ++t) sink_arc_[x_.index(i, t)] = base_.add_arc(minus(i, t), sink_, 0.0);
}

// Sink arcs are per-query plumbing and are not counted.
std::size_t FlowNetwork::arc_count() const { return sink_arc_.empty() ? 0 : sink_arc_.front(); }

FlowCheck FlowNetwork::finish(MaxFlow& net, NodeId i, Time t, double tol) const {
  FlowCheck out;
  out.node = i;
  out.time = t;
  out.flow = net.run(plus(source_, 1), sink_);
  out.demand = x_.window(i, p_->theta(i), t);
  if (out.flow >= out.demand - tol) return out;

  auto reach = net.residual_reachable(plus(source_, 1));
  auto coreach = net.residual_coreachable(sink_);
  CutConstraint c, back;
  c.sink_node = back.sink_node = i;
  c.sink_time = back.sink_time = t;
  const std::size_t n = p_->node_count();
  for (NodeId j = 0; j < n; ++j)
    for (Time tau = 1; tau <= n; ++tau) {
      if (reach[plus(j, tau)] && !reach[minus(j, tau)]) c.cut.emplace_back(j, tau);
      if (!coreach[plus(j, tau)] && coreach[minus(j, tau)]) back.cut.emplace_back(j, tau);
    }
  if (back.cut != c.cut) out.back_cut = std::move(back);
  out.cut = std::move(c);
  return out;
}

FlowCheck FlowNetwork::check(NodeId i, Time t, double tol) const {
  if (i >= p_->node_count() || t > p_->node_count()) throw BadParameters("sink out of range");
  if (t < p_->theta(i)) throw BadParameters("sink time precedes threshold");
  MaxFlow net = base_;
  for (Time tau = p_->theta(i); tau <= t; ++tau) net.set_capacity(sink_arc_[x_.index(i, tau)], kInfinity);
  return finish(net, i, t, tol);
}

std::vector<FlowCheck> FlowNetwork::check_node(NodeId i, double tol) const {
  if (i >= p_->node_count()) throw BadParameters("sink out of range");
  MaxFlow net = base_;
  std::vector<FlowCheck> out;
  for (Time t = p_->theta(i); t <= p_->node_count(); ++t) {
    net.set_capacity(sink_arc_[x_.index(i, t)], kInfinity);
    out.push_back(finish(net, i, t, tol));
  }
  return out;
}

double FlowNetwork::max_flow_value(NodeId i, Time t) const { return check(i, t, kInfinity).flow; }

}  // namespace tdiff
