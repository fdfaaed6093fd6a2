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

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srcloc/graph.hpp"
#include "srcloc/numeric.hpp"

namespace srcloc {

// Per-node data of a source location instance.
struct NodeAttrs {
  Cost cost{0};
  Count demand = 0;
  Count supply = 1;    // p
  Count capacity = 1;  // q
  Cost flow_cost_bound = Cost::infinity();  // b

  friend bool operator==(const NodeAttrs&, const NodeAttrs&) = default;
};

// Source location with (p,q)-connectivity: pick S minimising c(S) such that
// lambda^{p,q}(S, v) >= d_v for every v. With edge costs and finite bounds
// b_v it is the flow-cost-bounded variant: additionally mu(S, v) <= b_v.
struct SslInstance {
  Graph graph;
  std::vector<NodeAttrs> nodes;
  std::vector<Rational> edge_costs;  // empty, or one entry per graph edge

  int node_count() const { return graph.node_count(); }

  Count max_demand() const {
    Count k = 0;
    for (const auto& a : nodes) k = std::max(k, a.demand);
    return k;
  }

  Count total_demand() const {
    Count t = 0;
    for (const auto& a : nodes) t += a.demand;
    return t;
  }

  bool has_flow_cost_bounds() const {
    return !edge_costs.empty() ||
           std::any_of(nodes.begin(), nodes.end(), [](const NodeAttrs& a) { return a.flow_cost_bound.is_finite(); });
  }

  std::vector<Count> supplies() const {
    std::vector<Count> p;
    for (const auto& a : nodes) p.push_back(a.supply);
    return p;
  }

  std::vector<Count> capacities() const {
    std::vector<Count> q;
    for (const auto& a : nodes) q.push_back(a.capacity);
    return q;
  }

  std::vector<Rational> costs_or_zero() const {
    return edge_costs.empty() ? std::vector<Rational>(graph.edges().size(), Rational(0)) : edge_costs;
  }

  Cost cost_of(std::span<const Node> sources) const {
    Cost c{0};
    for (Node v : sources) c += nodes.at(v).cost;
    return c;
  }

  void validate() const {
    if (static_cast<int>(nodes.size()) != graph.node_count()) {
      throw Error(ErrorKind::kInvalidArgument, "node attribute count does not match graph");
    }
    if (!edge_costs.empty() && edge_costs.size() != graph.edges().size()) {
      throw Error(ErrorKind::kInvalidArgument, "edge cost count does not match graph");
    }
    for (const auto& c : edge_costs) {
      if (c < 0) throw Error(ErrorKind::kInvalidArgument, "negative edge cost");
    }
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      const auto& a = nodes[v];
      const std::string where = "node " + std::to_string(v);
      if (a.cost < Cost(0)) throw Error(ErrorKind::kInvalidArgument, where + ": negative cost");
      if (a.demand < 0 || is_infinite(a.demand)) throw Error(ErrorKind::kInvalidArgument, where + ": demand must be a finite nonnegative integer");
      if (a.capacity < 1) throw Error(ErrorKind::kInvalidArgument, where + ": capacity q must be at least 1");
      if (a.supply < 0) throw Error(ErrorKind::kInvalidArgument, where + ": negative supply");
      if (a.flow_cost_bound < Cost(0)) throw Error(ErrorKind::kInvalidArgument, where + ": negative flow-cost bound");
    }
  }

  // Caps p and q at max(k, 1). Feasibility only ever compares connectivity
  // against demands of at most k, so this never changes the answer.
  SslInstance normalized() const {
    SslInstance out = *this;
    const Count cap = std::max<Count>(max_demand(), 1);
    for (auto& a : out.nodes) {
      a.supply = std::min(a.supply, cap);
      a.capacity = std::min(a.capacity, cap);
    }
    return out;
  }

  friend bool operator==(const SslInstance&, const SslInstance&) = default;
};

enum class CostMode { kEdge, kNode };

inline const char* cost_mode_name(CostMode m) { return m == CostMode::kEdge ? "edge" : "node"; }

struct Demand {
  Node s = 0;
  Node v = 0;
  Count r = 1;

  Edge edge() const { return {s, v}; }
  friend bool operator==(const Demand&, const Demand&) = default;
};

// Survivable network augmentation: choose I from the candidate multiset F so
// that the q-connectivity of every demand pair in G + I reaches r.
struct SnaInstance {
  Graph graph;
  std::vector<Count> capacity;        // q, one per node
  std::vector<Edge> candidates;       // F
  std::vector<Cost> candidate_costs;  // edge mode: one per candidate
  std::vector<Cost> node_costs;       // node mode: one per node
  std::vector<Demand> demands;
  CostMode mode = CostMode::kEdge;

  int node_count() const { return graph.node_count(); }
  bool directed() const { return graph.directed(); }

  std::vector<Edge> demand_edges() const {
    std::vector<Edge> d;
    for (const auto& x : demands) d.push_back(x.edge());
    return d;
  }

  Count max_requirement() const {
    Count k = 0;
    for (const auto& d : demands) k = std::max(k, d.r);
    return k;
  }

  Count total_requirement() const {
    Count t = 0;
    for (const auto& d : demands) t += d.r;
    return t;
  }

  // p_max: the largest multiplicity of a parallel class of F.
  Count max_parallel() const {
    std::map<Edge, Count> classes;
    for (Edge e : candidates) {
      if (!directed() && e.u > e.v) std::swap(e.u, e.v);
      ++classes[e];
    }
    Count best = 0;
    for (const auto& [e, c] : classes) best = std::max(best, c);
    return best;
  }

  bool is_star_at(Node a) const {
    return std::all_of(candidates.begin(), candidates.end(), [&](const Edge& e) { return e.touches(a); });
  }

  // The center of F when F is a star. Ambiguous only when F is one parallel
  // class; then prefer a common tail, then the demand root, then the lowest
  // index.
  std::optional<Node> star_center() const {
    if (candidates.empty()) {
      if (auto r = root()) return r;
      return node_count() > 0 ? std::optional<Node>(0) : std::nullopt;
    }
    std::vector<Node> centers;
    for (Node c : {candidates[0].u, candidates[0].v}) {
      if (is_star_at(c) && std::find(centers.begin(), centers.end(), c) == centers.end()) centers.push_back(c);
    }
    if (centers.empty()) return std::nullopt;
    if (centers.size() == 1) return centers[0];
    if (directed()) {
      for (Node c : centers) {
        if (std::all_of(candidates.begin(), candidates.end(), [&](const Edge& e) { return e.u == c; })) return c;
      }
    }
    if (auto r = root()) {
      if (std::find(centers.begin(), centers.end(), *r) != centers.end()) return r;
    }
    return *std::min_element(centers.begin(), centers.end());
  }

  bool rooted_at(Node s) const {
    return std::all_of(demands.begin(), demands.end(),
                       [&](const Demand& d) { return directed() ? d.s == s : d.edge().touches(s); });
  }

  std::optional<Node> root() const {
    if (demands.empty()) return std::nullopt;
    for (Node c : {demands[0].s, demands[0].v}) {
      if (rooted_at(c)) return c;
    }
    return std::nullopt;
  }

  std::vector<Edge> edges_of(std::span<const int> chosen) const {
    std::vector<Edge> out;
    for (int i : chosen) out.push_back(candidates.at(i));
    return out;
  }

  // Edge mode: sum of candidate costs. Node mode: cost of the endpoint set.
  Cost cost_of(std::span<const int> chosen) const {
    Cost c{0};
    if (mode == CostMode::kEdge) {
      for (int i : chosen) c += candidate_costs.at(i);
      return c;
    }
    std::vector<bool> seen(node_count(), false);
    for (int i : chosen) {
      for (Node x : {candidates.at(i).u, candidates.at(i).v}) {
        if (!seen[x]) {
          seen[x] = true;
          c += node_costs.at(x);
        }
      }
    }
    return c;
  }

  void validate() const {
    const int n = node_count();
    if (static_cast<int>(capacity.size()) != n) throw Error(ErrorKind::kInvalidArgument, "capacity count does not match graph");
    for (int v = 0; v < n; ++v) {
      if (capacity[v] < 1) throw Error(ErrorKind::kInvalidArgument, "node " + std::to_string(v) + ": capacity q must be at least 1");
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const Edge& e = candidates[i];
      if (!graph.has_node(e.u) || !graph.has_node(e.v)) throw Error(ErrorKind::kInvalidArgument, "candidate " + std::to_string(i) + " has an invalid endpoint");
      if (e.u == e.v) throw Error(ErrorKind::kInvalidArgument, "candidate " + std::to_string(i) + " is a self-loop");
    }
    if (mode == CostMode::kEdge) {
      if (candidate_costs.size() != candidates.size()) throw Error(ErrorKind::kInvalidArgument, "candidate cost count does not match candidates");
      for (const auto& c : candidate_costs) {
        if (c < Cost(0)) throw Error(ErrorKind::kInvalidArgument, "negative candidate cost");
      }
    } else {
      if (static_cast<int>(node_costs.size()) != n) throw Error(ErrorKind::kInvalidArgument, "node cost count does not match graph");
      for (const auto& c : node_costs) {
        if (c < Cost(0)) throw Error(ErrorKind::kInvalidArgument, "negative node cost");
      }
    }
    for (std::size_t i = 0; i < demands.size(); ++i) {
      const Demand& d = demands[i];
      if (!graph.has_node(d.s) || !graph.has_node(d.v) || d.s == d.v) {
        throw Error(ErrorKind::kInvalidArgument, "demand " + std::to_string(i) + " has invalid endpoints");
      }
      if (d.r < 1 || is_infinite(d.r)) throw Error(ErrorKind::kInvalidArgument, "demand " + std::to_string(i) + ": requirement must be a positive integer");
    }
  }

  friend bool operator==(const SnaInstance&, const SnaInstance&) = default;
};

}  // namespace srcloc
