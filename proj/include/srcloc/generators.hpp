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

// Seeded random instances. All randomness flows from one std::mt19937_64 so
// a seed fixes the instance byte for byte.

#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "srcloc/flow.hpp"
#include "srcloc/graph.hpp"
#include "srcloc/instance.hpp"
#include "srcloc/reductions.hpp"

namespace srcloc {

using Rng = std::mt19937_64;

enum class PqMode { kLambda, kKappaHat, kKappaPrime, kGeneral };

inline const char* pq_mode_name(PqMode m) {
  switch (m) {
    case PqMode::kLambda:
      return "lambda";
    case PqMode::kKappaHat:
      return "kappa_hat";
    case PqMode::kKappaPrime:
      return "kappa_prime";
    case PqMode::kGeneral:
      return "general";
  }
  return "?";
}

inline PqMode parse_pq_mode(const std::string& s) {
  if (s == "lambda") return PqMode::kLambda;
  if (s == "kappa_hat") return PqMode::kKappaHat;
  if (s == "kappa_prime") return PqMode::kKappaPrime;
  if (s == "general") return PqMode::kGeneral;
  throw Error(ErrorKind::kInvalidArgument, "unknown p/q mode '" + s + "'");
}

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// `edge_count` edges between uniformly random distinct endpoints.
inline Graph random_graph(Rng& rng, int n, int edge_count, bool directed) {
  if (n < 0 || edge_count < 0) throw Error(ErrorKind::kInvalidArgument, "negative graph size");
  if (n < 2 && edge_count > 0) throw Error(ErrorKind::kInvalidArgument, "edges need at least two nodes");
  std::vector<Edge> edges;
  for (int i = 0; i < edge_count; ++i) {
    const Node u = uniform_int(rng, 0, n - 1);
    Node v = uniform_int(rng, 0, n - 2);
    if (v >= u) ++v;
    edges.push_back({u, v});
  }
  return Graph(n, directed, std::move(edges));
}

inline Cost random_cost(Rng& rng, int max_cost, bool fractional) {
  const int num = uniform_int(rng, 1, std::max(1, max_cost));
  if (!fractional || !coin(rng, 0.3)) return Cost(num);
  return Cost(Rational(2 * num - 1, 2));
}

struct SslParams {
  int nodes = 6;
  int edges = 8;
  bool directed = true;
  int max_demand = 2;
  int max_cost = 9;
  double demand_rate = 0.6;
  PqMode mode = PqMode::kGeneral;
  bool fractional_costs = false;
  bool ensure_feasible = true;
};

// Demands are clamped to lambda^{p,q}(V, v) when ensure_feasible is set.
inline SslInstance random_ssl(Rng& rng, const SslParams& params) {
  if (params.nodes < 1) throw Error(ErrorKind::kInvalidArgument, "SSL instance needs at least one node");
  if (params.max_demand < 0) throw Error(ErrorKind::kInvalidArgument, "negative max demand");
  SslInstance inst;
  inst.graph = random_graph(rng, params.nodes, params.edges, params.directed);
  const Count k = std::max(1, params.max_demand);
  for (int v = 0; v < params.nodes; ++v) {
    NodeAttrs a;
    a.cost = random_cost(rng, params.max_cost, params.fractional_costs);
    a.demand = coin(rng, params.demand_rate) ? uniform_int(rng, 1, std::max(1, params.max_demand)) : 0;
    if (params.max_demand == 0) a.demand = 0;
    switch (params.mode) {
      case PqMode::kLambda:
        a.supply = a.capacity = kInfinity;
        break;
      case PqMode::kKappaHat:
        a.supply = kInfinity;
        a.capacity = 1;
        break;
      case PqMode::kKappaPrime:
        a.supply = a.capacity = 1;
        break;
      case PqMode::kGeneral:
        a.capacity = uniform_int(rng, 1, static_cast<int>(k));
        a.supply = uniform_int(rng, static_cast<int>(a.capacity), static_cast<int>(k));
        break;
    }
    inst.nodes.push_back(a);
  }
  if (params.ensure_feasible) {
    std::vector<Node> all(params.nodes);
    for (int v = 0; v < params.nodes; ++v) all[v] = v;
    for (int v = 0; v < params.nodes; ++v) {
      auto& d = inst.nodes[v].demand;
      if (d > 0) d = std::min(d, ssl_connectivity(inst, all, v, d));
    }
  }
  return inst;
}

// Adds edge costs and flow-cost bounds b_v >= mu(V, v); a share of the
// nodes keeps b_v = inf.
inline SslInstance random_ssl_flow_bounds(Rng& rng, const SslParams& params, int max_edge_cost = 5,
                                          double bounded_rate = 0.7, int max_slack = 3) {
  SslParams p = params;
  p.ensure_feasible = true;
  SslInstance inst = random_ssl(rng, p);
  for (int i = 0; i < inst.graph.edge_count(); ++i) inst.edge_costs.push_back(uniform_int(rng, 1, max_edge_cost));
  std::vector<Node> all(inst.node_count());
  for (int v = 0; v < inst.node_count(); ++v) all[v] = v;
  for (int v = 0; v < inst.node_count(); ++v) {
    if (inst.nodes[v].demand == 0 || !coin(rng, bounded_rate)) continue;
    const Cost base = ssl_mu(inst, all, v);
    if (!base.is_finite()) continue;
    inst.nodes[v].flow_cost_bound = base + Cost(uniform_int(rng, 0, max_slack));
  }
  return inst;
}

// Directed stars: every edge leaves a, every edge enters a, one of the two
// drawn per instance, or each edge oriented independently. A path through a
// can chain an entering and a leaving star edge, which breaks submodularity
// of lambda^q_{G+I}(s, v), so mixed stars are opt-in.
enum class StarOrientation { kOut, kIn, kUniform, kMixed };

struct SnaParams {
  int nodes = 6;
  int base_edges = 4;
  int candidates = 6;
  int demands = 3;
  int max_requirement = 2;
  int max_cost = 9;
  bool directed = true;
  bool rooted = true;           // demands share the root s
  bool root_is_center = false;  // s = a
  int max_capacity = 1;         // q drawn from [1, max_capacity]
  CostMode mode = CostMode::kEdge;
  bool fractional_costs = false;
  StarOrientation orientation = StarOrientation::kUniform;
};

// An a-based instance: F is a star at a, parallel classes capped at k, and
// requirements clamped to lambda^q_{G+F} so the instance is feasible.
inline SnaInstance random_abased_sna(Rng& rng, const SnaParams& params) {
  const int n = params.nodes;
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "SNA instance needs at least two nodes");
  SnaInstance inst;
  inst.graph = random_graph(rng, n, params.base_edges, params.directed);
  inst.mode = params.mode;
  for (int v = 0; v < n; ++v) inst.capacity.push_back(uniform_int(rng, 1, std::max(1, params.max_capacity)));
  const Node a = uniform_int(rng, 0, n - 1);
  const Count k = std::max(1, params.max_requirement);
  std::vector<Count> parallel(n, 0);
  StarOrientation orient = params.orientation;
  if (orient == StarOrientation::kUniform) orient = coin(rng, 0.5) ? StarOrientation::kOut : StarOrientation::kIn;
  for (int i = 0; i < params.candidates; ++i) {
    Node x = uniform_int(rng, 0, n - 2);
    if (x >= a) ++x;
    if (parallel[x] >= k) continue;
    ++parallel[x];
    const bool enter = orient == StarOrientation::kIn || (orient == StarOrientation::kMixed && coin(rng, 0.5));
    inst.candidates.push_back(params.directed && enter ? Edge{x, a} : Edge{a, x});
    if (params.mode == CostMode::kEdge) inst.candidate_costs.push_back(random_cost(rng, params.max_cost, params.fractional_costs));
  }
  if (params.mode == CostMode::kNode) {
    for (int v = 0; v < n; ++v) inst.node_costs.push_back(random_cost(rng, params.max_cost, params.fractional_costs));
  }
  Node s = params.root_is_center ? a : uniform_int(rng, 0, n - 1);
  const Graph full = inst.graph.plus(inst.candidates);
  std::vector<bool> used(n, false);
  for (int j = 0; j < params.demands; ++j) {
    Node u = params.rooted ? s : uniform_int(rng, 0, n - 1);
    Node v = uniform_int(rng, 0, n - 2);
    if (v >= u) ++v;
    if (params.rooted) {
      if (used[v]) continue;
      used[v] = true;
    }
    const Count want = uniform_int(rng, 1, static_cast<int>(k));
    const Count r = std::min(want, pair_connectivity(full, inst.capacity, u, v, want));
    if (r > 0) inst.demands.push_back({u, v, r});
  }
  return inst;
}

// Each membership with probability `rate`; every element lands in at least
// one set.
inline SetCoverSystem random_set_system(Rng& rng, int sets, int elements, double rate = 0.4) {
  if (sets < 1 || elements < 1) throw Error(ErrorKind::kInvalidArgument, "set system needs sets and elements");
  SetCoverSystem sys;
  sys.element_count = elements;
  sys.sets.resize(sets);
  for (int b = 0; b < elements; ++b) {
    bool placed = false;
    for (int i = 0; i < sets; ++i) {
      if (coin(rng, rate)) {
        sys.sets[i].push_back(b);
        placed = true;
      }
    }
    if (!placed) sys.sets[uniform_int(rng, 0, sets - 1)].push_back(b);
  }
  return sys;
}

}  // namespace srcloc
