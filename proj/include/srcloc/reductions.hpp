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
#include <bit>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srcloc/graph.hpp"
#include "srcloc/instance.hpp"
#include "srcloc/numeric.hpp"

namespace srcloc {

// Correspondence between source sets S of an SSL instance and candidate
// subsets I of the rooted SNA instance it maps to.
struct SourceEdgeMap {
  Node root = 0;
  std::vector<Node> ssl_node;           // SNA node -> SSL node, -1 for the root
  std::vector<Node> sna_node;           // SSL node -> SNA node
  std::vector<std::vector<int>> edges;  // SSL node -> its candidates root-v
  std::vector<Node> owner;              // candidate -> SSL node

  // I(S): every candidate joining the root to a node of S.
  std::vector<int> select(std::span<const Node> sources) const {
    std::vector<int> out;
    for (Node v : sources) out.insert(out.end(), edges.at(v).begin(), edges.at(v).end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // S(I): SSL nodes touched by I.
  std::vector<Node> pull_back(std::span<const int> chosen) const {
    std::vector<Node> out;
    for (int i : chosen) out.push_back(owner.at(i));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

struct RootedSna {
  SnaInstance instance;
  SourceEdgeMap map;
};

// SSL -> s-based rooted SNA with node costs: a new root s = n of cost 0,
// p_v parallel candidates s-v, and demands r_sv = d_v for d_v > 0. Supplies
// and capacities are first capped at max(k, 1).
inline RootedSna ssl_to_rooted_sna(const SslInstance& input) {
  input.validate();
  if (input.has_flow_cost_bounds()) {
    throw Error(ErrorKind::kIncompatible, "flow-cost bounds have no rooted SNA counterpart");
  }
  const SslInstance ssl = input.normalized();
  const int n = ssl.node_count();
  const Count cap = std::max<Count>(ssl.max_demand(), 1);

  RootedSna out;
  SnaInstance& sna = out.instance;
  sna.graph = ssl.graph.with_node_count(n + 1);
  sna.mode = CostMode::kNode;
  sna.capacity = ssl.capacities();
  sna.capacity.push_back(cap);
  for (const auto& a : ssl.nodes) sna.node_costs.push_back(a.cost);
  sna.node_costs.push_back(Cost(0));

  SourceEdgeMap& map = out.map;
  map.root = n;
  map.edges.resize(n);
  for (Node v = 0; v < n; ++v) {
    map.ssl_node.push_back(v);
    map.sna_node.push_back(v);
    for (Count j = 0; j < ssl.nodes[v].supply; ++j) {
      map.edges[v].push_back(static_cast<int>(sna.candidates.size()));
      map.owner.push_back(v);
      sna.candidates.push_back({n, v});
    }
    if (ssl.nodes[v].demand > 0) sna.demands.push_back({n, v, ssl.nodes[v].demand});
  }
  map.ssl_node.push_back(-1);
  return out;
}

struct SslFromSna {
  SslInstance instance;
  SourceEdgeMap map;
};

// Inverse of ssl_to_rooted_sna: drops the root and turns its candidate
// multiplicities into supplies. Every violated precondition is named.
inline SslFromSna rooted_sna_to_ssl(const SnaInstance& sna, Node s) {
  sna.validate();
  const auto reject = [](const std::string& clause) { throw Error(ErrorKind::kPrecondition, clause); };
  if (!sna.graph.has_node(s)) reject("root " + std::to_string(s) + " is not a node");
  if (sna.mode != CostMode::kNode) reject("instance must use node costs");
  if (sna.node_costs[s] != Cost(0)) reject("root must have cost 0");
  for (const Edge& e : sna.graph.edges()) {
    if (e.touches(s)) reject("root must have no edges in G");
  }
  for (std::size_t i = 0; i < sna.candidates.size(); ++i) {
    const Edge& e = sna.candidates[i];
    if (sna.directed() ? e.u != s : !e.touches(s)) {
      reject("candidate " + std::to_string(i) + " does not leave the root");
    }
  }
  const int n = sna.node_count();
  std::vector<Count> demand(n, 0);
  for (std::size_t i = 0; i < sna.demands.size(); ++i) {
    const Demand& d = sna.demands[i];
    if (sna.directed() ? d.s != s : !d.edge().touches(s)) {
      reject("demand " + std::to_string(i) + " is not rooted at the root");
    }
    const Node v = d.s == s ? d.v : d.s;
    if (demand[v] != 0) reject("node " + std::to_string(v) + " has two demands");
    demand[v] = d.r;
  }

  SslFromSna out;
  SourceEdgeMap& map = out.map;
  map.root = s;
  map.sna_node.clear();
  map.ssl_node.assign(n, -1);
  for (Node w = 0; w < n; ++w) {
    if (w == s) continue;
    map.ssl_node[w] = static_cast<Node>(map.sna_node.size());
    map.sna_node.push_back(w);
  }
  const int m = n - 1;
  map.edges.resize(m);
  for (std::size_t i = 0; i < sna.candidates.size(); ++i) {
    const Node v = map.ssl_node[sna.candidates[i].other(s)];
    map.edges[v].push_back(static_cast<int>(i));
    map.owner.push_back(v);
  }
  std::vector<Edge> edges;
  for (const Edge& e : sna.graph.edges()) edges.push_back({map.ssl_node[e.u], map.ssl_node[e.v]});
  SslInstance& ssl = out.instance;
  ssl.graph = Graph(m, sna.directed(), std::move(edges));
  for (Node v = 0; v < m; ++v) {
    const Node w = map.sna_node[v];
    NodeAttrs a;
    a.cost = sna.node_costs[w];
    a.demand = demand[w];
    a.supply = static_cast<Count>(map.edges[v].size());
    a.capacity = sna.capacity[w];
    ssl.nodes.push_back(a);
  }
  return out;
}

struct SplitSsl {
  SslInstance instance;
  int original_node_count = 0;

  static Node in(Node v) { return 2 * v; }
  static Node out(Node v) { return 2 * v + 1; }

  std::vector<Node> forward(std::span<const Node> sources) const {
    std::vector<Node> o;
    for (Node v : sources) o.push_back(out(v));
    return o;
  }

  std::vector<Node> pull_back(std::span<const Node> sources) const {
    std::vector<Node> o;
    for (Node w : sources) o.push_back(w / 2);
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
    return o;
  }
};

// Directed node-connectivity SL -> edge-connectivity SL by in/out splitting
// (p = q = inf). v_in has cost inf and carries the demand d_v; v_out has cost
// c_v and demand 0. The d_v parallel arcs v_out -> v_in let a source at v
// satisfy its own demand; they close only cycles otherwise.
inline SplitSsl kappa_split(const SslInstance& input) {
  input.validate();
  if (!input.graph.directed()) {
    throw Error(ErrorKind::kIncompatible, "node-connectivity splitting needs a directed graph");
  }
  const int n = input.node_count();
  std::vector<Edge> edges;
  for (Node v = 0; v < n; ++v) edges.push_back({SplitSsl::in(v), SplitSsl::out(v)});
  for (const Edge& e : input.graph.edges()) edges.push_back({SplitSsl::out(e.u), SplitSsl::in(e.v)});
  for (Node v = 0; v < n; ++v) {
    for (Count j = 0; j < input.nodes[v].demand; ++j) edges.push_back({SplitSsl::out(v), SplitSsl::in(v)});
  }
  SplitSsl out;
  out.original_node_count = n;
  out.instance.graph = Graph(2 * n, true, std::move(edges));
  for (Node v = 0; v < n; ++v) {
    NodeAttrs in_attrs, out_attrs;
    in_attrs.cost = Cost::infinity();
    in_attrs.demand = input.nodes[v].demand;
    out_attrs.cost = input.nodes[v].cost;
    for (NodeAttrs* a : {&in_attrs, &out_attrs}) {
      a->supply = kInfinity;
      a->capacity = kInfinity;
    }
    out.instance.nodes.push_back(in_attrs);
    out.instance.nodes.push_back(out_attrs);
  }
  return out;
}

// A set system: sets[i] lists the elements of set i.
struct SetCoverSystem {
  int element_count = 0;
  std::vector<std::vector<int>> sets;

  int set_count() const { return static_cast<int>(sets.size()); }

  void validate() const {
    if (element_count < 0) throw Error(ErrorKind::kInvalidArgument, "negative element count");
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (int b : sets[i]) {
        if (b < 0 || b >= element_count) {
          throw Error(ErrorKind::kInvalidArgument, "set " + std::to_string(i) + " names element " + std::to_string(b));
        }
      }
    }
  }

  std::vector<int> uncovered(std::span<const int> chosen) const {
    std::vector<bool> hit(element_count, false);
    for (int i : chosen) {
      for (int b : sets.at(i)) hit[b] = true;
    }
    std::vector<int> out;
    for (int b = 0; b < element_count; ++b) {
      if (!hit[b]) out.push_back(b);
    }
    return out;
  }
};

struct SetCoverOptimum {
  bool feasible = false;
  int size = 0;
  std::vector<int> sets;
};

// Minimum-cardinality cover by enumerating set subsets in order of size.
inline SetCoverOptimum exact_set_cover(const SetCoverSystem& sys, int max_sets = 20) {
  sys.validate();
  const int m = sys.set_count();
  if (m > max_sets) throw Error(ErrorKind::kCapExceeded, "set cover oracle limited to " + std::to_string(max_sets) + " sets");
  SetCoverOptimum best;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    const int size = std::popcount(mask);
    if (best.feasible && (size > best.size)) continue;
    std::vector<int> chosen;
    for (int i = 0; i < m; ++i) {
      if ((mask >> i) & 1U) chosen.push_back(i);
    }
    if (!sys.uncovered(chosen).empty()) continue;
    if (!best.feasible || size < best.size || (size == best.size && chosen < best.sets)) {
      best = {true, size, chosen};
    }
  }
  return best;
}

struct SetCoverGadget {
  SnaInstance instance;
  int copies = 0;
  // Node layout: sets [0, |A|), then M+1 blocks of |B| element nodes, then s.
  Node set_node(int i) const { return i; }
  Node element_node(int copy, int b) const { return set_count + copy * element_count + b; }
  Node root() const { return instance.node_count() - 1; }
  int set_count = 0;
  int element_count = 0;
  std::optional<Count> known_optimum;  // equals the set-cover optimum
};

// Directed rooted s-based SNA whose optimum equals the set-cover optimum
// for every M >= 1. G has an arc set -> element for each membership (and to
// every copy); F = {sv : v != s} at unit cost; r_sv = 1 on element nodes.
inline SetCoverGadget setcover_gadget(const SetCoverSystem& sys, std::optional<int> copies = std::nullopt,
                                      CostMode mode = CostMode::kEdge) {
  sys.validate();
  const int a = sys.set_count();
  const int b = sys.element_count;
  if (a == 0 || b == 0) throw Error(ErrorKind::kInvalidArgument, "set cover gadget needs sets and elements");
  const int m = copies.value_or((a + b) * (a + b));
  if (m < 1) throw Error(ErrorKind::kInvalidArgument, "gadget needs at least one copy");
  SetCoverGadget out;
  out.copies = m;
  out.set_count = a;
  out.element_count = b;
  const int n = a + (m + 1) * b + 1;
  const Node s = n - 1;
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i) {
    for (int copy = 0; copy <= m; ++copy) {
      for (int e : sys.sets[i]) edges.push_back({out.set_node(i), out.element_node(copy, e)});
    }
  }
  SnaInstance& sna = out.instance;
  sna.graph = Graph(n, true, std::move(edges));
  sna.capacity.assign(n, 1);
  sna.mode = mode;
  for (Node v = 0; v < s; ++v) {
    sna.candidates.push_back({s, v});
    if (v >= a) sna.demands.push_back({s, v, 1});
  }
  if (mode == CostMode::kEdge) {
    sna.candidate_costs.assign(sna.candidates.size(), Cost(1));
  } else {
    sna.node_costs.assign(n, Cost(1));
    sna.node_costs[s] = Cost(0);
  }
  if (a <= 20) {
    const auto opt = exact_set_cover(sys);
    if (opt.feasible) out.known_optimum = opt.size;
  }
  return out;
}

}  // namespace srcloc
