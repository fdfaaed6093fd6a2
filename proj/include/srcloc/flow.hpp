// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Node-capacitated flows. Every connectivity function of the library is a
// max-flow in a split network: node v becomes v_in -> v_out with capacity
// q_v, and each edge uv becomes u_out -> v_in with capacity 1 (both
// orientations for undirected edges). Nodes listed as "kept" stay whole.

#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "srcloc/biset.hpp"
#include "srcloc/graph.hpp"
#include "srcloc/instance.hpp"
#include "srcloc/numeric.hpp"

namespace srcloc {

enum class ArcRole : std::uint8_t { kEdge, kNode, kSupply, kSource, kOther };

struct Arc {
  int tail = 0;
  int head = 0;
  Count capacity = 0;
  Rational cost = 0;
  ArcRole role = ArcRole::kOther;
  Node origin = -1;        // node of a kNode / kSupply / kSource arc
  std::vector<int> edges;  // original edges merged into a kEdge arc
};

class ArcNetwork {
 public:
  explicit ArcNetwork(int node_count = 0) : node_count_(node_count) {}

  int add_node() { return node_count_++; }
  int node_count() const { return node_count_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  // Parallel arcs with the same endpoints, role and cost collapse into one
  // arc whose capacity is the sum (saturating at infinity).
  int add_arc(int tail, int head, Count capacity, const Rational& cost = 0, ArcRole role = ArcRole::kOther,
              Node origin = -1, int edge = -1) {
    if (tail < 0 || tail >= node_count_ || head < 0 || head >= node_count_) {
      throw Error(ErrorKind::kInvalidArgument, "arc endpoint outside the network");
    }
    if (capacity < 0) throw Error(ErrorKind::kInvalidArgument, "negative arc capacity");
    auto& bucket = index_[{tail, head, static_cast<int>(role)}];
    for (int id : bucket) {
      Arc& a = arcs_[id];
      if (a.cost == cost && a.origin == origin) {
        a.capacity = saturating_add(a.capacity, capacity);
        if (edge >= 0) a.edges.push_back(edge);
        return id;
      }
    }
    Arc a{tail, head, capacity, cost, role, origin, {}};
    if (edge >= 0) a.edges.push_back(edge);
    arcs_.push_back(std::move(a));
    bucket.push_back(static_cast<int>(arcs_.size()) - 1);
    return static_cast<int>(arcs_.size()) - 1;
  }

  int source = -1;
  int sink = -1;

 private:
  int node_count_ = 0;
  std::vector<Arc> arcs_;
  std::map<std::tuple<int, int, int>, std::vector<int>> index_;
};

struct MinCostFlowResult {
  Count flow = 0;
  Rational cost = 0;
};

// Residual-graph engine over an ArcNetwork: shortest augmenting paths for
// max-flow, successive shortest paths (Bellman-Ford) for min-cost flow.
class FlowEngine {
 public:
  explicit FlowEngine(const ArcNetwork& net) : source_(net.source), sink_(net.sink), adj_(net.node_count()) {
    if (source_ < 0 || sink_ < 0 || source_ == sink_) {
      throw Error(ErrorKind::kInvalidArgument, "flow network needs distinct source and sink");
    }
    for (const Arc& a : net.arcs()) {
      arc_pos_.push_back(static_cast<int>(res_.size()));
      add_residual(a.tail, a.head, a.capacity, a.cost);
    }
  }

  Count max_flow(Count limit = kInfinity) {
    Count flow = 0;
    while (flow < limit) {
      std::vector<int> parent(adj_.size(), -1);
      std::vector<bool> seen(adj_.size(), false);
      std::deque<int> queue{source_};
      seen[source_] = true;
      while (!queue.empty() && !seen[sink_]) {
        const int x = queue.front();
        queue.pop_front();
        for (int r : adj_[x]) {
          const Residual& e = res_[r];
          if (e.cap > 0 && !seen[e.to]) {
            seen[e.to] = true;
            parent[e.to] = r;
            queue.push_back(e.to);
          }
        }
      }
      if (!seen[sink_]) break;
      Count bottleneck = kInfinity;
      for (int x = sink_; x != source_; x = res_[res_[parent[x]].rev].to) {
        bottleneck = std::min(bottleneck, res_[parent[x]].cap);
      }
      if (is_infinite(bottleneck) && is_infinite(limit)) return kInfinity;
      const Count push = std::min(bottleneck, saturating_sub(limit, flow));
      augment(parent, push);
      flow = saturating_add(flow, push);
    }
    return flow;
  }

  // Sends up to `amount` units at minimum cost; all arc costs must be
  // nonnegative. Returns the amount actually sent and its cost.
  MinCostFlowResult min_cost_flow(Count amount) {
    MinCostFlowResult out;
    while (out.flow < amount) {
      const int n = static_cast<int>(adj_.size());
      std::vector<std::optional<Rational>> dist(n);
      std::vector<int> parent(n, -1);
      std::vector<bool> queued(n, false);
      std::deque<int> queue{source_};
      dist[source_] = Rational(0);
      queued[source_] = true;
      while (!queue.empty()) {
        const int x = queue.front();
        queue.pop_front();
        queued[x] = false;
        for (int r : adj_[x]) {
          const Residual& e = res_[r];
          if (e.cap <= 0) continue;
          Rational candidate = *dist[x] + e.cost;
          if (!dist[e.to] || candidate < *dist[e.to]) {
            dist[e.to] = std::move(candidate);
            parent[e.to] = r;
            if (!queued[e.to]) {
              queued[e.to] = true;
              queue.push_back(e.to);
            }
          }
        }
      }
      if (!dist[sink_]) break;
      Count bottleneck = kInfinity;
      for (int x = sink_; x != source_; x = res_[res_[parent[x]].rev].to) {
        bottleneck = std::min(bottleneck, res_[parent[x]].cap);
      }
      const Count push = std::min(bottleneck, amount - out.flow);
      augment(parent, push);
      out.flow += push;
      out.cost += *dist[sink_] * push;
    }
    return out;
  }

  // Nodes reachable from the source in the residual network. After a
  // max-flow this is the source side of the source-side-minimal min cut.
  std::vector<bool> source_side() const {
    std::vector<bool> seen(adj_.size(), false);
    std::deque<int> queue{source_};
    seen[source_] = true;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int r : adj_[x]) {
        if (res_[r].cap > 0 && !seen[res_[r].to]) {
          seen[res_[r].to] = true;
          queue.push_back(res_[r].to);
        }
      }
    }
    return seen;
  }

  Count arc_flow(int arc) const { return res_[res_[arc_pos_.at(arc)].rev].cap; }

 private:
  struct Residual {
    int to;
    int rev;
    Count cap;
    Rational cost;
  };

  void add_residual(int from, int to, Count cap, const Rational& cost) {
    const int f = static_cast<int>(res_.size());
    res_.push_back({to, f + 1, cap, cost});
    res_.push_back({from, f, 0, -cost});
    adj_[from].push_back(f);
    adj_[to].push_back(f + 1);
  }

  void augment(const std::vector<int>& parent, Count push) {
    for (int x = sink_; x != source_; x = res_[res_[parent[x]].rev].to) {
      Residual& e = res_[parent[x]];
      e.cap = saturating_sub(e.cap, push);
      Residual& back = res_[e.rev];
      back.cap = saturating_add(back.cap, push);
    }
  }

  int source_;
  int sink_;
  std::vector<std::vector<int>> adj_;
  std::vector<Residual> res_;
  std::vector<int> arc_pos_;
};

struct SplitNetwork {
  ArcNetwork network;
  std::vector<int> in_node;
  std::vector<int> out_node;
};

// Splits every node not in `keep` into in/out halves joined by an arc of
// capacity q_v; each edge becomes out -> in arcs of capacity 1. When
// `edge_costs` is given, edge arcs carry those costs.
inline SplitNetwork split_transform(const Graph& g, std::span<const Count> q, std::span<const Node> keep,
                                    std::span<const Rational> edge_costs = {}) {
  const int n = g.node_count();
  if (static_cast<int>(q.size()) != n) throw Error(ErrorKind::kInvalidArgument, "capacity vector size mismatch");
  if (!edge_costs.empty() && edge_costs.size() != g.edges().size()) {
    throw Error(ErrorKind::kInvalidArgument, "edge cost vector size mismatch");
  }
  std::vector<bool> kept(n, false);
  for (Node v : keep) {
    if (!g.has_node(v)) throw Error(ErrorKind::kInvalidArgument, "kept node out of range");
    kept[v] = true;
  }
  SplitNetwork sn;
  sn.in_node.resize(n);
  sn.out_node.resize(n);
  for (Node v = 0; v < n; ++v) {
    if (q[v] <= 0) throw Error(ErrorKind::kInvalidArgument, "node " + std::to_string(v) + " has capacity q = 0");
    if (kept[v]) {
      sn.in_node[v] = sn.out_node[v] = sn.network.add_node();
    } else {
      sn.in_node[v] = sn.network.add_node();
      sn.out_node[v] = sn.network.add_node();
      sn.network.add_arc(sn.in_node[v], sn.out_node[v], q[v], 0, ArcRole::kNode, v);
    }
  }
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Rational cost = edge_costs.empty() ? Rational(0) : edge_costs[i];
    const Edge& e = edges[i];
    sn.network.add_arc(sn.out_node[e.u], sn.in_node[e.v], 1, cost, ArcRole::kEdge, -1, static_cast<int>(i));
    if (!g.directed()) {
      sn.network.add_arc(sn.out_node[e.v], sn.in_node[e.u], 1, cost, ArcRole::kEdge, -1, static_cast<int>(i));
    }
  }
  return sn;
}

namespace detail {

inline std::vector<Node> distinct_sources(const Graph& g, std::span<const Node> sources) {
  std::vector<bool> seen(g.node_count(), false);
  std::vector<Node> out;
  for (Node u : sources) {
    if (!g.has_node(u)) throw Error(ErrorKind::kInvalidArgument, "source node out of range");
    if (!seen[u]) {
      seen[u] = true;
      out.push_back(u);
    }
  }
  return out;
}

// Network for lambda^{p,q}(S, v): a super-source feeds each u in S with
// `supply(u)` units; v is the sink and is never split.
template <typename SupplyFn>
SplitNetwork supplied_network(const Graph& g, std::span<const Count> q, std::span<const Node> sources, Node v,
                              SupplyFn supply, std::span<const Rational> edge_costs = {}) {
  if (!g.has_node(v)) throw Error(ErrorKind::kInvalidArgument, "target node out of range");
  const Node keep[] = {v};
  SplitNetwork sn = split_transform(g, q, keep, edge_costs);
  const int super = sn.network.add_node();
  for (Node u : distinct_sources(g, sources)) {
    const Count amount = supply(u);
    if (amount > 0) sn.network.add_arc(super, sn.in_node[u], amount, 0, ArcRole::kSupply, u);
  }
  sn.network.source = super;
  sn.network.sink = sn.in_node[v];
  return sn;
}

}  // namespace detail

// lambda^q_G(S, v): max flow from S \ {v} to v with unit edges and node
// capacities q. Source nodes themselves may be cut (at cost q_u).
inline Count lambda_q(const Graph& g, std::span<const Count> q, std::span<const Node> sources, Node v,
                      Count limit = kInfinity) {
  auto sn = detail::supplied_network(g, q, sources, v, [&](Node u) { return u == v ? Count{0} : kInfinity; });
  return FlowEngine(sn.network).max_flow(limit);
}

// lambda^{p,q}_G(S, v): a new node feeds each u in S with p_u parallel
// edges, then max flow to v.
inline Count lambda_pq(const Graph& g, std::span<const Count> p, std::span<const Count> q,
                       std::span<const Node> sources, Node v, Count limit = kInfinity) {
  if (static_cast<int>(p.size()) != g.node_count()) throw Error(ErrorKind::kInvalidArgument, "supply vector size mismatch");
  auto sn = detail::supplied_network(g, q, sources, v, [&](Node u) { return p[u]; });
  return FlowEngine(sn.network).max_flow(limit);
}

// lambda^q_G(s, t) between two nodes that are both exempt from cuts; this is
// the connectivity f_st(I) of augmentation problems.
inline Count pair_connectivity(const Graph& g, std::span<const Count> q, Node s, Node t, Count limit = kInfinity) {
  if (!g.has_node(s) || !g.has_node(t) || s == t) throw Error(ErrorKind::kInvalidArgument, "pair connectivity needs two distinct nodes");
  const Node keep[] = {s, t};
  SplitNetwork sn = split_transform(g, q, keep);
  sn.network.source = sn.in_node[s];
  sn.network.sink = sn.in_node[t];
  return FlowEngine(sn.network).max_flow(limit);
}

enum class ConnectivityKind { kLambda, kKappaHat, kKappaPrime, kKappaDirected };

inline const char* connectivity_kind_name(ConnectivityKind k) {
  switch (k) {
    case ConnectivityKind::kLambda:
      return "lambda";
    case ConnectivityKind::kKappaHat:
      return "kappa_hat";
    case ConnectivityKind::kKappaPrime:
      return "kappa_prime";
    case ConnectivityKind::kKappaDirected:
      return "kappa_directed";
  }
  return "?";
}

// Directed in/out split: v -> (2v, 2v+1) joined by a unit arc, edge uv ->
// (2u+1, 2v).
inline Graph in_out_split(const Graph& g) {
  if (!g.directed()) throw Error(ErrorKind::kIncompatible, "in/out node splitting needs a directed graph");
  std::vector<Edge> edges;
  for (Node v = 0; v < g.node_count(); ++v) edges.push_back({2 * v, 2 * v + 1});
  for (const Edge& e : g.edges()) edges.push_back({2 * e.u + 1, 2 * e.v});
  return Graph(2 * g.node_count(), true, std::move(edges));
}

// The named connectivity functions as (p,q) presets:
//   lambda: p = q = inf;  kappa_hat: p = inf, q = 1;  kappa_prime: p = q = 1.
// kappa_directed runs edge-connectivity on the in/out split from S_out to
// v_in and is infinite when v is in S.
inline Count connectivity(ConnectivityKind kind, const Graph& g, std::span<const Node> sources, Node v,
                          Count limit = kInfinity) {
  const int n = g.node_count();
  if (!g.has_node(v)) throw Error(ErrorKind::kInvalidArgument, "target node out of range");
  switch (kind) {
    case ConnectivityKind::kLambda: {
      const std::vector<Count> inf(n, kInfinity);
      return lambda_pq(g, inf, inf, sources, v, limit);
    }
    case ConnectivityKind::kKappaHat: {
      const std::vector<Count> p(n, kInfinity), q(n, 1);
      return lambda_pq(g, p, q, sources, v, limit);
    }
    case ConnectivityKind::kKappaPrime: {
      const std::vector<Count> one(n, 1);
      return lambda_pq(g, one, one, sources, v, limit);
    }
    case ConnectivityKind::kKappaDirected: {
      if (!g.directed()) throw Error(ErrorKind::kIncompatible, "kappa_directed is only defined on directed graphs");
      if (std::find(sources.begin(), sources.end(), v) != sources.end()) return kInfinity;
      const Graph split = in_out_split(g);
      std::vector<Node> outs;
      for (Node u : sources) outs.push_back(2 * u + 1);
      const std::vector<Count> inf(split.node_count(), kInfinity);
      return lambda_pq(split, inf, inf, outs, 2 * v, limit);
    }
  }
  return 0;
}

struct CutCertificate {
  std::vector<int> cut_edges;   // indices into the graph's edge list
  std::vector<Node> cut_nodes;
  Count value = 0;
};

// Dual witness of lambda_q from the residual reachability set after a
// max-flow (the source-side-minimal minimum cut).
inline CutCertificate min_cut_certificate(const Graph& g, std::span<const Count> q, std::span<const Node> sources,
                                          Node v) {
  auto sn = detail::supplied_network(g, q, sources, v, [&](Node u) { return u == v ? Count{0} : kInfinity; });
  CutCertificate cert;
  if (sn.network.arcs().empty()) return cert;
  FlowEngine engine(sn.network);
  const Count flow = engine.max_flow();
  const auto reach = engine.source_side();
  for (const Arc& a : sn.network.arcs()) {
    if (!reach[a.tail] || reach[a.head]) continue;
    if (a.role == ArcRole::kEdge) {
      cert.cut_edges.insert(cert.cut_edges.end(), a.edges.begin(), a.edges.end());
    } else if (a.role == ArcRole::kNode) {
      cert.cut_nodes.push_back(a.origin);
    } else {
      throw std::logic_error("infinite supply arc in a finite min cut");
    }
  }
  std::sort(cert.cut_edges.begin(), cert.cut_edges.end());
  std::sort(cert.cut_nodes.begin(), cert.cut_nodes.end());
  cert.value = static_cast<Count>(cert.cut_edges.size());
  for (Node w : cert.cut_nodes) cert.value = saturating_add(cert.value, q[w]);
  if (cert.value != flow) throw std::logic_error("min-cut certificate disagrees with max-flow value");
  return cert;
}

// The source-side-minimal minimum (s,t)-cut as a biset: X holds nodes whose
// both halves are reachable, X+ additionally the nodes cut through their
// capacity arc. Its value q(boundary) + |delta_G| equals pair_connectivity.
inline Biset min_cut_biset(const Graph& g, std::span<const Count> q, Node s, Node t) {
  NodeSet::check_universe(g.node_count());
  const Node keep[] = {s, t};
  SplitNetwork sn = split_transform(g, q, keep);
  sn.network.source = sn.in_node[s];
  sn.network.sink = sn.in_node[t];
  FlowEngine engine(sn.network);
  engine.max_flow();
  const auto reach = engine.source_side();
  NodeSet inner, outer;
  for (Node w = 0; w < g.node_count(); ++w) {
    if (reach[sn.in_node[w]]) {
      outer.insert(w);
      if (reach[sn.out_node[w]]) inner.insert(w);
    }
  }
  return Biset(inner, outer);
}

// mu(S, v): minimum total edge cost of a subgraph carrying d_v units of
// (p,q)-flow from S to v; +inf when lambda^{p,q}(S, v) < d_v.
inline Cost mu(const Graph& g, std::span<const Rational> edge_costs, std::span<const Count> p,
               std::span<const Count> q, std::span<const Node> sources, Node v, Count demand) {
  if (demand <= 0) return Cost(0);
  if (static_cast<int>(p.size()) != g.node_count()) throw Error(ErrorKind::kInvalidArgument, "supply vector size mismatch");
  for (const auto& c : edge_costs) {
    if (c < 0) throw Error(ErrorKind::kInvalidArgument, "negative edge cost");
  }
  const std::vector<Rational> zero(g.edges().size(), Rational(0));
  auto sn = detail::supplied_network(g, q, sources, v, [&](Node u) { return p[u]; },
                                     edge_costs.empty() ? std::span<const Rational>(zero) : edge_costs);
  if (sn.network.arcs().empty()) return Cost::infinity();
  const auto res = FlowEngine(sn.network).min_cost_flow(demand);
  if (res.flow < demand) return Cost::infinity();
  return Cost(res.cost);
}

// ---------------------------------------------------------------------------
// Feasibility predicates shared by solvers, oracles and the CLI verifier.

inline Count ssl_connectivity(const SslInstance& inst, std::span<const Node> sources, Node v, Count limit = kInfinity) {
  const auto p = inst.supplies();
  const auto q = inst.capacities();
  return lambda_pq(inst.graph, p, q, sources, v, limit);
}

// First node whose demand is not met by S, if any.
inline std::optional<Node> ssl_demand_violation(const SslInstance& inst, std::span<const Node> sources) {
  for (Node v = 0; v < inst.node_count(); ++v) {
    const Count d = inst.nodes[v].demand;
    if (d > 0 && ssl_connectivity(inst, sources, v, d) < d) return v;
  }
  return std::nullopt;
}

inline Cost ssl_mu(const SslInstance& inst, std::span<const Node> sources, Node v) {
  const auto p = inst.supplies();
  const auto q = inst.capacities();
  const auto costs = inst.costs_or_zero();
  return mu(inst.graph, costs, p, q, sources, v, inst.nodes[v].demand);
}

// First node whose flow-cost bound is exceeded by S, if any.
inline std::optional<Node> ssl_budget_violation(const SslInstance& inst, std::span<const Node> sources) {
  for (Node v = 0; v < inst.node_count(); ++v) {
    const Cost& b = inst.nodes[v].flow_cost_bound;
    if (!b.is_finite()) continue;
    if (ssl_mu(inst, sources, v) > b) return v;
  }
  return std::nullopt;
}

inline bool ssl_feasible(const SslInstance& inst, std::span<const Node> sources) {
  if (ssl_demand_violation(inst, sources)) return false;
  return !inst.has_flow_cost_bounds() || !ssl_budget_violation(inst, sources);
}

inline Count demand_connectivity(const SnaInstance& inst, const Graph& augmented, const Demand& d,
                                 Count limit = kInfinity) {
  return pair_connectivity(augmented, inst.capacity, d.s, d.v, limit);
}

// Index of the first demand not met by G + I, if any.
inline std::optional<int> sna_violation(const SnaInstance& inst, std::span<const int> chosen) {
  const Graph augmented = inst.graph.plus(inst.edges_of(chosen));
  for (std::size_t i = 0; i < inst.demands.size(); ++i) {
    const Demand& d = inst.demands[i];
    if (demand_connectivity(inst, augmented, d, d.r) < d.r) return static_cast<int>(i);
  }
  return std::nullopt;
}

inline bool sna_feasible(const SnaInstance& inst, std::span<const int> chosen) { return !sna_violation(inst, chosen); }

inline std::vector<int> all_candidates(const SnaInstance& inst) {
  std::vector<int> all(inst.candidates.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return all;
}

// Everything with finite cost: the most a solution can use.
inline std::vector<int> usable_candidates(const SnaInstance& inst) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(inst.candidates.size()); ++i) {
    const int one[] = {i};
    if (inst.cost_of(one).is_finite()) out.push_back(i);
  }
  return out;
}

inline std::vector<Node> usable_sources(const SslInstance& inst) {
  std::vector<Node> out;
  for (Node v = 0; v < inst.node_count(); ++v) {
    if (inst.nodes[v].cost.is_finite()) out.push_back(v);
  }
  return out;
}

}  // namespace srcloc
