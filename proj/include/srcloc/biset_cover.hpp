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

// Biset covering for undirected a-based augmentation. One stage raises the
// connectivity of a demand set by one: its tight bisets are covered by a
// star from the center a onto a transversal of the minimal tight bisets.
// Stages run for l = 1..k on the demands exactly l - 1 short of r - k + l.

#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srcloc/biset.hpp"
#include "srcloc/flow.hpp"
#include "srcloc/instance.hpp"
#include "srcloc/numeric.hpp"
#include "srcloc/reductions.hpp"
#include "srcloc/submodular.hpp"

namespace srcloc {

// r(X): the largest requirement of a demand covering X, 0 if none.
inline Count requirement_of_biset(const SnaInstance& inst, const Biset& b) {
  Count r = 0;
  for (const Demand& d : inst.demands) {
    if (covers(d.edge(), b, inst.directed())) r = std::max(r, d.r);
  }
  return r;
}

// h(X) = max(r(X) - q(boundary) - |delta_G(X)|, 0).
inline Count deficiency(const SnaInstance& inst, const Biset& b) {
  const Count r = requirement_of_biset(inst, b);
  if (r == 0) return 0;
  Count cut = delta_count(inst.graph.edges(), b, inst.directed());
  for (Node w : b.boundary().members()) cut = saturating_add(cut, inst.capacity[w]);
  return std::max<Count>(r - cut, 0);
}

inline bool is_tight(const SnaInstance& inst, const Biset& b) { return deficiency(inst, b) == 1; }

// One augmentation stage: G + I as the base graph, the unused candidates,
// and the chosen demands with requirement lambda^q_{G+I} + 1.
struct DsnaStage {
  SnaInstance instance;
  std::vector<int> original;  // stage candidate -> candidate of the parent
};

inline DsnaStage make_dsna(const SnaInstance& inst, std::span<const int> chosen, std::span<const int> demand_ids) {
  DsnaStage out;
  SnaInstance& d = out.instance;
  d.graph = inst.graph.plus(inst.edges_of(chosen));
  d.capacity = inst.capacity;
  d.mode = inst.mode;
  d.node_costs = inst.node_costs;
  std::vector<bool> used(inst.candidates.size(), false);
  for (int i : chosen) used.at(i) = true;
  for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
    if (used[i]) continue;
    d.candidates.push_back(inst.candidates[i]);
    if (inst.mode == CostMode::kEdge) d.candidate_costs.push_back(inst.candidate_costs[i]);
    out.original.push_back(static_cast<int>(i));
  }
  for (int id : demand_ids) {
    Demand dem = inst.demands.at(id);
    dem.r = pair_connectivity(d.graph, d.capacity, dem.s, dem.v) + 1;
    d.demands.push_back(dem);
  }
  return out;
}

inline constexpr int kDefaultEnumerationCap = 12;

// All bisets with h = 1, by enumeration of the 3^n bisets.
inline BisetFamily tight_bisets(const SnaInstance& inst, int enumeration_cap = kDefaultEnumerationCap) {
  const int n = inst.node_count();
  if (n > enumeration_cap) {
    throw Error(ErrorKind::kCapExceeded, "biset enumeration limited to " + std::to_string(enumeration_cap) +
                                             " nodes, instance has " + std::to_string(n));
  }
  std::vector<Biset> out;
  for_each_biset(n, [&](const Biset& b) {
    if (is_tight(inst, b)) out.push_back(b);
  });
  return BisetFamily(std::move(out));
}

// Members with the root outside the outer part.
inline BisetFamily rooted_part(const BisetFamily& family, Node root) {
  std::vector<Biset> out;
  for (const Biset& b : family) {
    if (!b.outer().contains(root)) out.push_back(b);
  }
  return BisetFamily(std::move(out));
}

// Minimal tight bisets from flows: for every deficient demand, the
// source-side-minimal minimum cut in each orientation (only v -> root when
// `root` is given), kept when tight, then inclusion-minimalized.
inline BisetFamily minimal_tight_bisets_fast(const SnaInstance& inst, std::optional<Node> root = std::nullopt) {
  NodeSet::check_universe(inst.node_count());
  BisetFamily candidates;
  const auto consider = [&](Node from, Node to) {
    const Biset b = min_cut_biset(inst.graph, inst.capacity, from, to);
    if (is_tight(inst, b)) candidates.add(b);
  };
  for (const Demand& d : inst.demands) {
    if (pair_connectivity(inst.graph, inst.capacity, d.s, d.v, d.r) >= d.r) continue;
    if (root) {
      if (!d.edge().touches(*root)) throw Error(ErrorKind::kPrecondition, "demand not rooted at the given root");
      const Node leaf = d.edge().other(*root);
      consider(leaf, *root);
      continue;
    }
    consider(d.s, d.v);
    if (!inst.directed()) consider(d.v, d.s);
  }
  return minimal_members(candidates);
}

struct MengerVerdict {
  bool feasible = true;
  std::optional<Biset> witness;  // |delta_I(X)| < h(X)
  std::optional<int> demand;     // flow path only: the violated demand
};

// Flow path: recompute every demand in G + I; on failure the witness is the
// minimal minimum cut of the violated demand in G + I.
inline MengerVerdict menger_feasible(const SnaInstance& inst, std::span<const int> chosen) {
  MengerVerdict out;
  const auto bad = sna_violation(inst, chosen);
  if (!bad) return out;
  out.feasible = false;
  out.demand = *bad;
  if (inst.node_count() <= NodeSet::kMaxNodes) {
    const Demand& d = inst.demands[*bad];
    out.witness = min_cut_biset(inst.graph.plus(inst.edges_of(chosen)), inst.capacity, d.s, d.v);
  }
  return out;
}

// Enumeration path: the first biset (in biset order) with |delta_I| < h.
inline MengerVerdict menger_feasible_enumerated(const SnaInstance& inst, std::span<const int> chosen,
                                                int enumeration_cap = kDefaultEnumerationCap) {
  if (inst.node_count() > enumeration_cap) throw Error(ErrorKind::kCapExceeded, "biset enumeration cap exceeded");
  const auto added = inst.edges_of(chosen);
  std::vector<Biset> all;
  for_each_biset(inst.node_count(), [&](const Biset& b) { all.push_back(b); });
  std::sort(all.begin(), all.end());
  MengerVerdict out;
  for (const Biset& b : all) {
    const Count h = deficiency(inst, b);
    if (h > 0 && delta_count(added, b, inst.directed()) < h) {
      out.feasible = false;
      out.witness = b;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transversals.

struct TransversalResult {
  bool feasible = false;
  std::optional<int> empty_hyperedge;  // a hyperedge no finite-cost node hits
  NodeSet nodes;
  std::vector<Node> order;
  Cost cost{0};
  int degree = 0;     // Delta
  Rational bound = 0;  // H(Delta)
};

// Greedy hitting set: most newly hit hyperedges per unit cost, ties to the
// lowest node, free nodes first.
inline TransversalResult greedy_transversal(const TransversalProblem& problem) {
  TransversalResult out;
  out.degree = problem.max_degree();
  out.bound = harmonic(out.degree);
  for (std::size_t i = 0; i < problem.hyperedges.size(); ++i) {
    bool hittable = false;
    for (Node v : problem.hyperedges[i].members()) hittable = hittable || problem.costs.at(v).is_finite();
    if (!hittable) {
      out.empty_hyperedge = static_cast<int>(i);
      return out;
    }
  }
  CoverProblem cover;
  cover.costs = problem.costs;
  cover.progress = [&](const Subset& s) {
    NodeSet u;
    for (Node v = 0; v < problem.node_count; ++v) {
      if (s[v]) u.insert(v);
    }
    return Cost(static_cast<std::int64_t>(std::count_if(problem.hyperedges.begin(), problem.hyperedges.end(),
                                                        [&](NodeSet h) { return h.intersects(u); })));
  };
  cover.target = Cost(static_cast<std::int64_t>(problem.hyperedges.size()));
  const GreedyTrace trace = wolsey_greedy(cover);
  out.feasible = trace.feasible;
  out.order = trace.picks();
  out.nodes = NodeSet::of(out.order);
  out.cost = problem.cost_of(out.nodes);
  return out;
}

// Per-node star edge choice: e_v and its node cost c_v.
struct StarChoice {
  Node center = -1;
  std::vector<int> edge;  // e_v, -1 when v has no candidate
  std::vector<Cost> cost;
};

// Edge costs: e_v is the cheapest candidate a-v and c_v its cost. Node costs:
// e_v is the first candidate a-v and c_v the node cost, 0 for `paid` nodes.
// The center itself costs 0 and contributes no edge.
inline StarChoice star_choice(const SnaInstance& inst, Node a, NodeSet paid = {}) {
  const int n = inst.node_count();
  StarChoice out;
  out.center = a;
  out.edge.assign(n, -1);
  out.cost.assign(n, Cost::infinity());
  for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
    const Edge& e = inst.candidates[i];
    if (!e.touches(a)) throw Error(ErrorKind::kIncompatible, "candidate " + std::to_string(i) + " is not in the star at " + std::to_string(a));
    const Node v = e.other(a);
    const Cost c = inst.mode == CostMode::kEdge ? inst.candidate_costs[i] : (paid.contains(v) ? Cost(0) : inst.node_costs[v]);
    if (out.edge[v] < 0 || c < out.cost[v]) {
      out.edge[v] = static_cast<int>(i);
      out.cost[v] = c;
    }
  }
  out.cost[a] = Cost(0);
  return out;
}

// I = {e_v : v in U, v != a}.
inline std::vector<int> star_cover_from_transversal(const StarChoice& choice, NodeSet transversal) {
  std::vector<int> out;
  for (Node v : transversal.members()) {
    if (v == choice.center) continue;
    if (v >= static_cast<int>(choice.edge.size()) || choice.edge[v] < 0) {
      throw Error(ErrorKind::kPrecondition, "transversal node " + std::to_string(v) + " has no star edge");
    }
    out.push_back(choice.edge[v]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

enum class StarCondition { kSymmetric, kRootOutside };

inline const char* star_condition_name(StarCondition c) {
  return c == StarCondition::kSymmetric ? "symmetric, center outside every boundary"
                                        : "center outside every outer part";
}

// The side condition under which a star on a transversal covers the whole
// family; returns an offending member if it fails.
inline std::optional<Biset> star_condition_violation(const BisetFamily& family, Node a, StarCondition cond, int n) {
  if (cond == StarCondition::kRootOutside) {
    for (const Biset& b : family) {
      if (b.outer().contains(a)) return b;
    }
    return std::nullopt;
  }
  for (const Biset& b : family) {
    if (b.boundary().contains(a)) return b;
    if (!family.contains(complement(b, n))) return b;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Stage solver.

struct DsnaOptions {
  // Enumerate the full tight family (n <= cap) to check the side conditions
  // and the fast path; larger instances rely on the flow re-verification.
  int check_enumeration_limit = 10;
  bool use_enumeration = false;  // take the minimal family from enumeration
};

struct DsnaReport {
  bool rooted = false;  // family restricted to the root side; center = root
  Node center = -1;
  BisetFamily minimal;  // C
  int gamma = 0;
  int degree = 0;       // Delta(C)
  TransversalResult transversal;
  std::vector<int> chosen;  // stage candidate indices
  Cost cost{0};
  bool enumeration_checked = false;
  bool uncrossable = true;  // D- or T-uncrossable when enumeration_checked
};

// Covers the tight bisets of a D-SNA instance by a star at `a`. With `root`
// equal to `a` only bisets with the root outside are covered (enough for
// undirected rooted demands); otherwise the symmetric side condition is used.
inline DsnaReport solve_abased_dsna(const SnaInstance& inst, Node a, std::optional<Node> root = std::nullopt,
                                    NodeSet paid = {}, const DsnaOptions& options = {}) {
  if (inst.directed()) throw Error(ErrorKind::kIncompatible, "biset covering stage needs an undirected instance");
  const int n = inst.node_count();
  DsnaReport out;
  out.center = a;
  out.rooted = root.has_value() && *root == a;
  const std::optional<Node> side = out.rooted ? root : std::nullopt;
  const StarCondition cond = out.rooted ? StarCondition::kRootOutside : StarCondition::kSymmetric;

  if (options.use_enumeration || n <= options.check_enumeration_limit) {
    BisetFamily family = tight_bisets(inst, std::max(n, kDefaultEnumerationCap));
    if (side) family = rooted_part(family, *side);
    if (auto bad = star_condition_violation(family, a, cond, n)) {
      throw Error(ErrorKind::kPrecondition, std::string("star cover side condition (") + star_condition_name(cond) +
                                                ") fails on tight biset " + bad->str());
    }
    const BisetFamily minimal = minimal_members(family);
    if (minimal != minimal_tight_bisets_fast(inst, side)) {
      throw std::logic_error("fast minimal tight bisets disagree with enumeration");
    }
    out.enumeration_checked = true;
    if (side) {
      NodeSet leaves;
      for (const Demand& d : inst.demands) leaves.insert(d.edge().other(*side));
      out.uncrossable = is_t_uncrossable(family, leaves);
    } else {
      const auto dedges = inst.demand_edges();
      out.uncrossable = is_d_uncrossable(family, dedges, false);
    }
    out.minimal = minimal;
  } else {
    out.minimal = minimal_tight_bisets_fast(inst, side);
    if (auto bad = star_condition_violation(out.minimal, a, StarCondition::kRootOutside, n);
        bad && cond == StarCondition::kRootOutside) {
      throw Error(ErrorKind::kPrecondition, "root inside minimal tight biset " + bad->str());
    }
    for (const Biset& b : out.minimal) {
      if (b.boundary().contains(a)) throw Error(ErrorKind::kInfeasible, "center lies on the boundary of tight biset " + b.str());
    }
  }
  out.gamma = max_boundary(out.minimal);
  out.degree = max_inner_degree(out.minimal, n);

  const StarChoice choice = star_choice(inst, a, paid);
  TransversalProblem problem;
  problem.node_count = n;
  problem.costs = choice.cost;
  for (const Biset& b : out.minimal) problem.hyperedges.push_back(b.inner());
  out.transversal = greedy_transversal(problem);
  if (!out.transversal.feasible) {
    const std::string which = out.transversal.empty_hyperedge
                                  ? out.minimal.members()[*out.transversal.empty_hyperedge].str()
                                  : std::string("?");
    throw Error(ErrorKind::kInfeasible, "no star edge can cover tight biset " + which);
  }
  out.chosen = star_cover_from_transversal(choice, out.transversal.nodes);
  out.cost = inst.cost_of(out.chosen);
  if (inst.mode == CostMode::kNode) {
    Cost c{0};
    for (int i : out.chosen) c += choice.cost[inst.candidates[i].other(a)];
    out.cost = c;
  }
  const MengerVerdict verdict = menger_feasible(inst, out.chosen);
  if (!verdict.feasible) {
    throw Error(ErrorKind::kPrecondition,
                "star cover misses tight biset " + (verdict.witness ? verdict.witness->str() : std::string("?")));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sequential augmentation.

// Delta_l: (4l - 3)^2 in general, 2l - 1 when rooted at the center.
inline Count stage_degree_bound(Count l, bool rooted) { return rooted ? 2 * l - 1 : (4 * l - 3) * (4 * l - 3); }

// Edge costs: sum_l H(Delta_l) / (k - l + 1).
// Node costs: sum_l H(Delta_l) * min{p_max / (k - l + 1), 1}.
inline Rational theorem4_bound(Count k, bool rooted, CostMode mode, Count p_max = 1) {
  Rational total = 0;
  for (Count l = 1; l <= k; ++l) {
    const Rational h = harmonic(stage_degree_bound(l, rooted));
    const Rational weight = mode == CostMode::kEdge ? Rational(1, k - l + 1) : std::min(Rational(p_max, k - l + 1), Rational(1));
    total += h * weight;
  }
  return total;
}

struct StageReport {
  Count index = 0;          // l
  std::vector<int> demands;  // ids of D_l in the parent instance
  std::vector<int> chosen;   // parent candidate indices added in this stage
  Cost cost{0};
  int gamma = 0;
  int degree = 0;
  Count degree_bound = 0;      // Delta_l
  Count family_degree_bound = 0;  // (4 gamma + 1)^2 or 2 gamma + 1
  bool uncrossable = true;
  bool enumeration_checked = false;
};

struct SeqBisetSolution {
  bool feasible = false;
  std::optional<InfeasibleDemand> witness;
  Node center = -1;
  bool rooted = false;
  Count k = 0;
  Count p_max = 0;
  std::vector<int> chosen;
  Cost cost{0};
  std::vector<StageReport> stages;
  Rational theorem_bound = 0;
};

// k stages; stage l raises by one the demands with
// lambda^q_{G+I}(s, v) = r_sv - k + l - 1 using unused candidates only.
inline SeqBisetSolution solve_abased_sna_undirected(const SnaInstance& inst, std::optional<Node> center = std::nullopt,
                                                    const DsnaOptions& options = {}) {
  inst.validate();
  if (inst.directed()) throw Error(ErrorKind::kIncompatible, "sequential biset solver needs an undirected instance");
  const auto a = center ? center : inst.star_center();
  if (!a || !inst.is_star_at(*a)) throw Error(ErrorKind::kIncompatible, "sequential biset solver needs F to be a star");
  SeqBisetSolution out;
  out.center = *a;
  const auto root = inst.root();
  out.rooted = root && *root == *a && inst.rooted_at(*a);
  out.k = inst.max_requirement();
  out.p_max = inst.max_parallel();
  out.theorem_bound = theorem4_bound(out.k, out.rooted, inst.mode, out.p_max);
  if (auto w = sna_infeasibility(inst)) {
    out.witness = w;
    return out;
  }
  const std::optional<Node> stage_root = out.rooted ? std::optional<Node>(*a) : std::nullopt;
  NodeSet paid;
  for (Count l = 1; l <= out.k; ++l) {
    const Graph current = inst.graph.plus(inst.edges_of(out.chosen));
    StageReport stage;
    stage.index = l;
    for (std::size_t i = 0; i < inst.demands.size(); ++i) {
      const Demand& d = inst.demands[i];
      const Count lam = pair_connectivity(current, inst.capacity, d.s, d.v, d.r);
      if (lam == d.r - out.k + l - 1) stage.demands.push_back(static_cast<int>(i));
    }
    stage.degree_bound = stage_degree_bound(l, out.rooted);
    if (!stage.demands.empty()) {
      const DsnaStage dsna = make_dsna(inst, out.chosen, stage.demands);
      DsnaReport rep;
      try {
        rep = solve_abased_dsna(dsna.instance, *a, stage_root, paid, options);
      } catch (const Error& e) {
        throw Error(e.kind(), "stage " + std::to_string(l) + ": " + e.what());
      }
      for (int i : rep.chosen) stage.chosen.push_back(dsna.original[i]);
      stage.cost = rep.cost;
      stage.gamma = rep.gamma;
      stage.degree = rep.degree;
      stage.uncrossable = rep.uncrossable;
      stage.enumeration_checked = rep.enumeration_checked;
      out.chosen.insert(out.chosen.end(), stage.chosen.begin(), stage.chosen.end());
      std::sort(out.chosen.begin(), out.chosen.end());
      if (inst.mode == CostMode::kNode) {
        for (int i : stage.chosen) {
          paid.insert(inst.candidates[i].u);
          paid.insert(inst.candidates[i].v);
        }
      }
    }
    stage.family_degree_bound = out.rooted ? 2 * stage.gamma + 1 : (4 * stage.gamma + 1) * (4 * stage.gamma + 1);
    const Graph after = inst.graph.plus(inst.edges_of(out.chosen));
    for (std::size_t i = 0; i < inst.demands.size(); ++i) {
      const Demand& d = inst.demands[i];
      const Count target = d.r - out.k + l;
      if (target > 0 && pair_connectivity(after, inst.capacity, d.s, d.v, target) < target) {
        const Biset w = min_cut_biset(after, inst.capacity, d.s, d.v);
        throw Error(ErrorKind::kInfeasible, "stage " + std::to_string(l) + " left demand " + std::to_string(i) +
                                                " short; witness biset " + w.str());
      }
    }
    out.stages.push_back(std::move(stage));
  }
  out.cost = inst.cost_of(out.chosen);
  out.feasible = !sna_violation(inst, out.chosen);
  if (!out.feasible) throw std::logic_error("sequential solution fails verification");
  return out;
}

struct SslUndirectedSolution {
  bool feasible = false;
  std::optional<Node> witness;
  std::vector<Node> sources;
  Cost cost{0};
  SeqBisetSolution sna;
};

// Reduce to rooted SNA (root = center), run the stages, pull back.
inline SslUndirectedSolution solve_ssl_undirected(const SslInstance& inst) {
  SslUndirectedSolution out;
  if (inst.graph.directed()) throw Error(ErrorKind::kIncompatible, "undirected SSL solver got a directed graph");
  if (auto w = ssl_infeasibility(inst)) {
    out.witness = w;
    return out;
  }
  const RootedSna rooted = ssl_to_rooted_sna(inst);
  out.sna = solve_abased_sna_undirected(rooted.instance, rooted.map.root);
  out.sources = rooted.map.pull_back(out.sna.chosen);
  out.cost = inst.cost_of(out.sources);
  out.feasible = out.sna.feasible && !ssl_demand_violation(inst, out.sources);
  if (out.sna.feasible && !out.feasible) throw std::logic_error("pulled-back source set fails verification");
  return out;
}

}  // namespace srcloc
