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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "srcloc/flow.hpp"
#include "srcloc/instance.hpp"
#include "srcloc/numeric.hpp"
#include "srcloc/reductions.hpp"

namespace srcloc {

using Subset = std::vector<bool>;

inline std::vector<int> members_of(const Subset& s) {
  std::vector<int> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

inline Subset subset_of(std::size_t size, std::span<const int> members) {
  Subset s(size, false);
  for (int i : members) s.at(i) = true;
  return s;
}

using ProgressFn = std::function<Cost(const Subset&)>;

// Minimise cost(A) subject to progress(A) = target, for a non-decreasing
// progress function. Elements of infinite cost are never picked.
struct CoverProblem {
  std::vector<Cost> costs;
  ProgressFn progress;
  Cost target;

  std::size_t size() const { return costs.size(); }
};

// Target g(U') where U' is every element of finite cost.
inline Cost full_progress(const std::vector<Cost>& costs, const ProgressFn& progress) {
  Subset all(costs.size(), false);
  for (std::size_t i = 0; i < costs.size(); ++i) all[i] = costs[i].is_finite();
  return progress(all);
}

// Per-run cache of progress evaluations keyed by subset.
class MemoProgress {
 public:
  explicit MemoProgress(ProgressFn fn) : fn_(std::move(fn)) {}

  Cost operator()(const Subset& s) {
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    ++evaluations_;
    Cost v = fn_(s);
    cache_.emplace(s, v);
    return v;
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  ProgressFn fn_;
  std::unordered_map<Subset, Cost> cache_;
  std::size_t evaluations_ = 0;
};

struct GreedyStep {
  int element = -1;
  Cost gain;
  Cost cost;
};

struct GreedyTrace {
  bool feasible = false;
  std::vector<GreedyStep> steps;
  Subset chosen;
  Cost cost{0};
  Cost initial_value;
  Cost final_value;
  Cost alpha{0};                 // max single-element gain over the start set
  std::optional<Rational> bound;  // H(alpha) when alpha is integral
  std::size_t evaluations = 0;

  std::vector<int> picks() const {
    std::vector<int> out;
    for (const auto& s : steps) out.push_back(s.element);
    return out;
  }
};

// Wolsey's greedy: repeatedly add the element of largest gain per unit cost
// (ties to the lowest index; zero-cost elements with positive gain first).
// `initial` seeds the set; gains and alpha are measured relative to it.
inline GreedyTrace wolsey_greedy(const CoverProblem& problem, const Subset& initial = {}) {
  const std::size_t n = problem.size();
  MemoProgress eval(problem.progress);
  GreedyTrace trace;
  trace.chosen = initial.empty() ? Subset(n, false) : initial;
  if (trace.chosen.size() != n) throw Error(ErrorKind::kInvalidArgument, "initial set has the wrong size");

  Cost current = eval(trace.chosen);
  trace.initial_value = current;
  if (!current.is_finite()) throw Error(ErrorKind::kPrecondition, "greedy started from a set of infinite progress");
  for (std::size_t u = 0; u < n; ++u) {
    if (trace.chosen[u] || !problem.costs[u].is_finite()) continue;
    Subset with = trace.chosen;
    with[u] = true;
    const Cost v = eval(with);
    if (v.is_finite()) trace.alpha = std::max(trace.alpha, v - current);
  }
  if (trace.alpha.is_integer() && trace.alpha >= Cost(0)) trace.bound = harmonic_of(trace.alpha);

  while (current < problem.target) {
    int best = -1;
    Cost best_gain, best_cost;
    bool best_free = false;
    for (std::size_t u = 0; u < n; ++u) {
      if (trace.chosen[u] || !problem.costs[u].is_finite()) continue;
      Subset with = trace.chosen;
      with[u] = true;
      const Cost value = eval(with);
      if (!value.is_finite()) continue;
      const Cost gain = value - current;
      if (gain <= Cost(0)) continue;
      const Cost& c = problem.costs[u];
      const bool free = c == Cost(0);
      if (free) {
        if (!best_free) {
          best = static_cast<int>(u);
          best_gain = gain;
          best_cost = c;
          best_free = true;
        }
        continue;
      }
      if (best_free) continue;
      // gain / c > best_gain / best_cost, compared by cross-multiplication.
      if (best < 0 || gain.value() * best_cost.value() > best_gain.value() * c.value()) {
        best = static_cast<int>(u);
        best_gain = gain;
        best_cost = c;
      }
    }
    if (best < 0) break;
    trace.chosen[best] = true;
    trace.steps.push_back({best, best_gain, best_cost});
    trace.cost += best_cost;
    current += best_gain;
  }
  trace.final_value = current;
  trace.feasible = current >= problem.target;
  trace.evaluations = eval.evaluations();
  return trace;
}

// ---------------------------------------------------------------------------
// Progress functions of augmentation problems.

// g(I) = sum over demands of min(r, f_uv(I)), f_uv(I) = lambda^q_{G+I}(u, v).
inline Count progress_g_edge(const SnaInstance& inst, std::span<const int> chosen) {
  const Graph augmented = inst.graph.plus(inst.edges_of(chosen));
  Count total = 0;
  for (const Demand& d : inst.demands) total += demand_connectivity(inst, augmented, d, d.r);
  return total;
}

// F_S: candidates of the star at `a` whose other endpoint lies in S.
inline std::vector<int> star_edges_to(const SnaInstance& inst, Node a, std::span<const Node> nodes) {
  std::vector<bool> in(inst.node_count(), false);
  for (Node z : nodes) in.at(z) = true;
  std::vector<int> out;
  for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
    const Edge& e = inst.candidates[i];
    if (!e.touches(a)) throw Error(ErrorKind::kIncompatible, "candidate " + std::to_string(i) + " is not in the star at " + std::to_string(a));
    if (in[e.other(a)]) out.push_back(static_cast<int>(i));
  }
  return out;
}

// g'(S) = g(F_S).
inline Count progress_g_node(const SnaInstance& inst, Node a, std::span<const Node> nodes) {
  if (!inst.is_star_at(a)) throw Error(ErrorKind::kIncompatible, "node progress needs F to be a star at " + std::to_string(a));
  const auto chosen = star_edges_to(inst, a, nodes);
  return progress_g_edge(inst, chosen);
}

// ---------------------------------------------------------------------------
// Bound calculators.

inline Rational theorem3_edge_bound(Count demand_count) { return harmonic(demand_count); }

inline Rational theorem3_node_bound(Count total_requirement, Count demand_count, Count p_max) {
  return harmonic(std::min(total_requirement, saturating_mul(demand_count, p_max)));
}

// H(d(V)) + H(c(E)) with c(E) scaled to an integer.
inline Rational theorem5_bound(Count total_demand, Count scaled_edge_cost) {
  return harmonic(total_demand) + harmonic(scaled_edge_cost);
}

// ---------------------------------------------------------------------------
// Greedy a-based SNA.

struct InfeasibleDemand {
  int demand = -1;
  Count achieved = 0;
};

struct SnaSolution {
  bool feasible = false;
  std::optional<InfeasibleDemand> witness;
  CostMode mode = CostMode::kEdge;
  Node center = -1;
  std::vector<int> chosen;   // candidate indices
  std::vector<Node> nodes;   // node mode: the picked endpoints S
  Cost cost{0};
  GreedyTrace trace;
  Rational theorem_bound = 0;  // H(|D|) or H(min{r(D), |D| p_max})
  Rational factor = 1;         // 2 on undirected inputs
  // The instance is feasible but no single pick raises the progress: a
  // demand needs two star edges chained through the center.
  bool stalled = false;
};

inline std::optional<InfeasibleDemand> sna_infeasibility(const SnaInstance& inst) {
  const Graph full = inst.graph.plus(inst.edges_of(usable_candidates(inst)));
  for (std::size_t i = 0; i < inst.demands.size(); ++i) {
    const Demand& d = inst.demands[i];
    const Count got = demand_connectivity(inst, full, d, d.r);
    if (got < d.r) return InfeasibleDemand{static_cast<int>(i), got};
  }
  return std::nullopt;
}

// Wolsey greedy over candidates (edge costs) or over the leaves of the star
// (node costs). The center defaults to SnaInstance::star_center().
inline SnaSolution solve_abased_sna(const SnaInstance& inst, std::optional<Node> center = std::nullopt) {
  inst.validate();
  SnaSolution out;
  out.mode = inst.mode;
  out.factor = inst.directed() ? 1 : 2;
  const Count m = static_cast<Count>(inst.demands.size());
  if (auto w = sna_infeasibility(inst)) {
    out.witness = w;
    return out;
  }
  if (inst.mode == CostMode::kEdge) {
    out.theorem_bound = theorem3_edge_bound(m);
    if (auto a = center ? center : inst.star_center()) out.center = *a;
    CoverProblem problem;
    problem.costs = inst.candidate_costs;
    problem.progress = [&](const Subset& s) { return Cost(progress_g_edge(inst, members_of(s))); };
    problem.target = Cost(inst.total_requirement());
    out.trace = wolsey_greedy(problem);
    out.chosen = members_of(out.trace.chosen);
  } else {
    const auto a = center ? center : inst.star_center();
    if (!a || !inst.is_star_at(*a)) throw Error(ErrorKind::kIncompatible, "node-cost greedy needs F to be a star");
    out.center = *a;
    out.theorem_bound = theorem3_node_bound(inst.total_requirement(), m, inst.max_parallel());
    CoverProblem problem;
    problem.costs = inst.node_costs;
    problem.costs[*a] = Cost::infinity();  // the center is never a leaf pick
    const int n = inst.node_count();
    problem.progress = [&, n](const Subset& s) {
      std::vector<Node> nodes;
      for (Node z = 0; z < n; ++z) {
        if (s[z]) nodes.push_back(z);
      }
      return Cost(progress_g_node(inst, *a, nodes));
    };
    problem.target = Cost(inst.total_requirement());
    out.trace = wolsey_greedy(problem);
    out.nodes = members_of(out.trace.chosen);
    out.chosen = star_edges_to(inst, *a, out.nodes);
  }
  out.cost = inst.cost_of(out.chosen);
  out.feasible = out.trace.feasible && !sna_violation(inst, out.chosen);
  if (out.trace.feasible && !out.feasible) throw std::logic_error("greedy reached its target but the solution fails verification");
  out.stalled = !out.trace.feasible;
  return out;
}

struct SslSolution {
  bool feasible = false;
  std::optional<Node> witness;  // a node whose demand cannot be met even by S = V
  std::vector<Node> sources;
  Cost cost{0};
  SnaSolution sna;
};

inline std::optional<Node> ssl_infeasibility(const SslInstance& inst) {
  return ssl_demand_violation(inst, usable_sources(inst));
}

// Reduce to rooted SNA, run the node-cost greedy, pull back.
inline SslSolution solve_ssl(const SslInstance& inst) {
  SslSolution out;
  if (auto w = ssl_infeasibility(inst)) {
    out.witness = w;
    return out;
  }
  const RootedSna rooted = ssl_to_rooted_sna(inst);
  out.sna = solve_abased_sna(rooted.instance, rooted.map.root);
  out.sources = rooted.map.pull_back(out.sna.chosen);
  out.cost = inst.cost_of(out.sources);
  out.feasible = out.sna.feasible && !ssl_demand_violation(inst, out.sources);
  if (out.sna.feasible && !out.feasible) throw std::logic_error("pulled-back source set fails verification");
  return out;
}

// ---------------------------------------------------------------------------
// Double submodular cover.

enum class DoubleCoverStatus { kSolved, kPhase1Infeasible, kPhase2Infeasible };

inline const char* double_cover_status_name(DoubleCoverStatus s) {
  switch (s) {
    case DoubleCoverStatus::kSolved:
      return "solved";
    case DoubleCoverStatus::kPhase1Infeasible:
      return "phase-1 infeasible";
    case DoubleCoverStatus::kPhase2Infeasible:
      return "phase-2 infeasible";
  }
  return "?";
}

struct DoubleCoverProblem {
  std::vector<Cost> costs;
  ProgressFn f;
  Cost f_target;
  ProgressFn g;  // may return -inf until f is covered
  Cost g_target;
};

struct DoubleCoverTrace {
  DoubleCoverStatus status = DoubleCoverStatus::kPhase1Infeasible;
  GreedyTrace phase1;
  GreedyTrace phase2;
  Subset chosen;
  Cost cost{0};
  std::optional<Rational> bound;  // H(alpha_f) + H(alpha_h)
};

// Phase 1 covers f; phase 2 covers the residual h(S) = g(S_f u S). g(S_f)
// must be finite once f is covered, otherwise the input breaks the ordering
// property and this throws.
inline DoubleCoverTrace solve_double_cover(const DoubleCoverProblem& problem) {
  DoubleCoverTrace out;
  out.phase1 = wolsey_greedy({problem.costs, problem.f, problem.f_target});
  out.chosen = out.phase1.chosen;
  out.cost = out.phase1.cost;
  if (!out.phase1.feasible) return out;
  if (!problem.g(out.phase1.chosen).is_finite()) {
    throw Error(ErrorKind::kPrecondition, "g is still -inf after f is covered");
  }
  out.phase2 = wolsey_greedy({problem.costs, problem.g, problem.g_target}, out.phase1.chosen);
  out.chosen = out.phase2.chosen;
  out.cost = out.phase1.cost + out.phase2.cost;
  if (out.phase1.bound && out.phase2.bound) out.bound = *out.phase1.bound + *out.phase2.bound;
  out.status = out.phase2.feasible ? DoubleCoverStatus::kSolved : DoubleCoverStatus::kPhase2Infeasible;
  return out;
}

struct FlowBoundsSolution {
  bool feasible = false;
  std::optional<Node> demand_witness;  // lambda^{p,q}(V, v) < d_v
  std::optional<Node> budget_witness;  // mu(V, v) > b_v
  std::vector<Node> sources;
  Cost cost{0};
  DoubleCoverTrace trace;
  BigInt scale = 1;              // L: common denominator of edge costs and bounds
  Count scaled_edge_cost = 0;    // L * c(E)
  Rational theorem_bound = 0;    // H(d(V)) + H(L c(E))
};

// f(S) = sum min(lambda^{p,q}(S, v), d_v) and g(S) = L * sum min(-mu(S, v), -b_v)
// over nodes with finite b_v.
inline FlowBoundsSolution solve_ssl_flow_bounds(const SslInstance& inst) {
  inst.validate();
  FlowBoundsSolution out;
  const int n = inst.node_count();
  const std::vector<Node> all = usable_sources(inst);
  out.demand_witness = ssl_demand_violation(inst, all);
  if (!out.demand_witness) out.budget_witness = ssl_budget_violation(inst, all);
  if (out.demand_witness || out.budget_witness) return out;

  BigInt scale = 1;
  Rational total_edge_cost = 0;
  for (const auto& c : inst.edge_costs) {
    scale = lcm_of_denominators(scale, c);
    total_edge_cost += c;
  }
  std::vector<Node> bounded;
  for (Node v = 0; v < n; ++v) {
    const Cost& b = inst.nodes[v].flow_cost_bound;
    if (b.is_finite()) {
      scale = lcm_of_denominators(scale, b.value());
      bounded.push_back(v);
    }
  }
  out.scale = scale;
  const Rational scaled = total_edge_cost * Rational(scale);
  out.scaled_edge_cost = numerator(scaled).convert_to<Count>();
  out.theorem_bound = theorem5_bound(inst.total_demand(), out.scaled_edge_cost);

  const auto sources_of = [n](const Subset& s) {
    std::vector<Node> src;
    for (Node v = 0; v < n; ++v) {
      if (s[v]) src.push_back(v);
    }
    return src;
  };
  DoubleCoverProblem problem;
  for (const auto& a : inst.nodes) problem.costs.push_back(a.cost);
  problem.f = [&](const Subset& s) {
    const auto src = sources_of(s);
    Count total = 0;
    for (Node v = 0; v < n; ++v) {
      const Count d = inst.nodes[v].demand;
      if (d > 0) total += ssl_connectivity(inst, src, v, d);
    }
    return Cost(total);
  };
  problem.f_target = Cost(inst.total_demand());
  const Rational factor(scale);
  problem.g = [&, factor](const Subset& s) {
    const auto src = sources_of(s);
    Cost total{0};
    for (Node v : bounded) {
      const Cost m = ssl_mu(inst, src, v);
      const Cost& b = inst.nodes[v].flow_cost_bound;
      total += std::min(-m, -b);
      if (!total.is_finite()) return total;
    }
    return total * factor;
  };
  Cost g_target{0};
  for (Node v : bounded) g_target -= inst.nodes[v].flow_cost_bound;
  problem.g_target = g_target * factor;

  out.trace = solve_double_cover(problem);
  out.sources = members_of(out.trace.chosen);
  out.cost = inst.cost_of(out.sources);
  out.feasible = out.trace.status == DoubleCoverStatus::kSolved && ssl_feasible(inst, out.sources);
  if (out.trace.status == DoubleCoverStatus::kSolved && !out.feasible) {
    throw std::logic_error("double cover reached both targets but the solution fails verification");
  }
  return out;
}

}  // namespace srcloc
