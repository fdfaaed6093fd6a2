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

#include <bit>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "srcloc/generators.hpp"
#include "srcloc/oracle.hpp"
#include "srcloc/submodular.hpp"

namespace srcloc {
namespace {

// Weighted coverage: element i covers the bits of sets[i].
ProgressFn coverage(std::vector<std::uint32_t> sets) {
  return [sets](const Subset& s) {
    std::uint32_t u = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (s[i]) u |= sets[i];
    }
    return Cost(static_cast<std::int64_t>(std::popcount(u)));
  };
}

// Exhaustive minimum over subsets reaching `target`.
Cost brute_cover(const std::vector<Cost>& costs, const ProgressFn& f, const Cost& target) {
  Cost best = Cost::infinity();
  const std::size_t n = costs.size();
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    Subset s(n, false);
    Cost c{0};
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) {
        s[i] = true;
        c += costs[i];
      }
    }
    if (f(s) >= target && c < best) best = c;
  }
  return best;
}

TEST(WolseyGreedyTest, PicksByRatioWithLowestIndexTies) {
  CoverProblem p;
  p.costs = {Cost(2), Cost(2), Cost(3), Cost(1)};
  p.progress = coverage({0b0011, 0b1100, 0b1111, 0b0001});
  p.target = Cost(4);
  const auto t = wolsey_greedy(p);
  ASSERT_TRUE(t.feasible);
  // Ratios 1, 1, 4/3, 1: element 2 first, target reached.
  EXPECT_EQ(t.picks(), std::vector<int>{2});
  EXPECT_EQ(t.cost, Cost(3));
  EXPECT_EQ(t.alpha, Cost(4));
  ASSERT_TRUE(t.bound.has_value());
  EXPECT_EQ(*t.bound, harmonic(4));
}

TEST(WolseyGreedyTest, TieBreaksToLowestIndex) {
  CoverProblem p;
  p.costs = {Cost(1), Cost(1)};
  p.progress = coverage({0b1, 0b1});
  p.target = Cost(1);
  EXPECT_EQ(wolsey_greedy(p).picks(), std::vector<int>{0});
}

TEST(WolseyGreedyTest, ZeroCostFirstInfiniteSkipped) {
  CoverProblem p;
  p.costs = {Cost::infinity(), Cost(5), Cost(0)};
  p.progress = coverage({0b111, 0b110, 0b001});
  p.target = Cost(3);
  const auto t = wolsey_greedy(p);
  ASSERT_TRUE(t.feasible);
  EXPECT_EQ(t.picks(), (std::vector<int>{2, 1}));
  EXPECT_EQ(t.cost, Cost(5));
  EXPECT_EQ(t.alpha, Cost(2));  // the infinite-cost element does not count
}

TEST(WolseyGreedyTest, ReportsShortfall) {
  CoverProblem p;
  p.costs = {Cost(1)};
  p.progress = coverage({0b01});
  p.target = Cost(2);
  const auto t = wolsey_greedy(p);
  EXPECT_FALSE(t.feasible);
  EXPECT_EQ(t.final_value, Cost(1));
}

TEST(WolseyGreedyTest, InitialSetShiftsGains) {
  CoverProblem p;
  p.costs = {Cost(1), Cost(1), Cost(1)};
  p.progress = coverage({0b0111, 0b1000, 0b0110});
  p.target = Cost(4);
  const auto t = wolsey_greedy(p, Subset{true, false, false});
  EXPECT_EQ(t.initial_value, Cost(3));
  EXPECT_EQ(t.alpha, Cost(1));
  EXPECT_EQ(t.picks(), std::vector<int>{1});
  EXPECT_EQ(t.cost, Cost(1));
  EXPECT_THROW(wolsey_greedy(p, Subset{true}), Error);
}

TEST(WolseyGreedyTest, HarmonicGuaranteeOnRandomCoverage) {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = uniform_int(rng, 1, 8);
    std::vector<std::uint32_t> sets;
    std::vector<Cost> costs;
    std::uint32_t universe = 0;
    for (int i = 0; i < n; ++i) {
      sets.push_back(static_cast<std::uint32_t>(uniform_int(rng, 0, 63)));
      universe |= sets.back();
      costs.push_back(random_cost(rng, 9, coin(rng, 0.3)));
    }
    CoverProblem p{costs, coverage(sets), Cost(static_cast<std::int64_t>(std::popcount(universe)))};
    const auto t = wolsey_greedy(p);
    ASSERT_TRUE(t.feasible);
    const Cost opt = brute_cover(costs, p.progress, p.target);
    ASSERT_TRUE(t.bound.has_value());
    EXPECT_LE(t.cost, opt * *t.bound) << trial;
  }
}

TEST(ProgressTest, EdgeProgressIsMonotoneSubmodularWithUnitSteps) {
  Rng rng(42);
  for (int trial = 0; trial < 15; ++trial) {
    SnaParams params;
    params.nodes = 5;
    params.candidates = 5;
    params.directed = true;
    params.max_capacity = 2;
    const SnaInstance inst = random_abased_sna(rng, params);
    const int m = static_cast<int>(inst.candidates.size());
    std::vector<Count> g(1U << m);
    for (std::uint32_t mask = 0; mask < g.size(); ++mask) g[mask] = progress_g_edge(inst, detail::mask_members(mask));
    const Count demands = static_cast<Count>(inst.demands.size());
    for (std::uint32_t a = 0; a < g.size(); ++a) {
      for (int i = 0; i < m; ++i) {
        if ((a >> i) & 1U) continue;
        const Count gain = g[a | (1U << i)] - g[a];
        ASSERT_GE(gain, 0);
        ASSERT_LE(gain, demands);
        for (int j = 0; j < m; ++j) {
          if (j == i || ((a >> j) & 1U)) continue;
          const Count later = g[a | (1U << j) | (1U << i)] - g[a | (1U << j)];
          ASSERT_LE(later, gain) << "trial " << trial << " set " << a << " i " << i << " j " << j;
        }
      }
    }
  }
}

TEST(ProgressTest, NodeProgressUsesStarEdges) {
  SnaInstance inst;
  inst.graph = Graph(3, true);
  inst.capacity = {1, 1, 1};
  inst.candidates = {{0, 1}, {0, 2}, {0, 2}};
  inst.mode = CostMode::kNode;
  inst.node_costs = {Cost(0), Cost(1), Cost(1)};
  inst.demands = {{0, 2, 2}, {0, 1, 1}};
  EXPECT_EQ(star_edges_to(inst, 0, std::vector<Node>{2}), (std::vector<int>{1, 2}));
  EXPECT_EQ(progress_g_node(inst, 0, std::vector<Node>{2}), 2);
  EXPECT_EQ(progress_g_node(inst, 0, std::vector<Node>{1, 2}), 3);
  EXPECT_THROW(progress_g_node(inst, 1, std::vector<Node>{2}), Error);
}

TEST(BoundsTest, Formulas) {
  EXPECT_EQ(theorem3_edge_bound(3), Rational(11, 6));
  EXPECT_EQ(theorem3_node_bound(5, 3, 1), Rational(11, 6));
  EXPECT_EQ(theorem3_node_bound(2, 3, 4), Rational(3, 2));
  EXPECT_EQ(theorem5_bound(2, 3), Rational(3, 2) + Rational(11, 6));
}

TEST(SolveSnaTest, InfeasibleInstanceNamesDemand) {
  SnaInstance inst;
  inst.graph = Graph(3, true);
  inst.capacity = {1, 1, 1};
  inst.candidates = {{0, 1}};
  inst.candidate_costs = {Cost(1)};
  inst.demands = {{0, 1, 1}, {0, 2, 1}};
  const auto sol = solve_abased_sna(inst);
  EXPECT_FALSE(sol.feasible);
  ASSERT_TRUE(sol.witness.has_value());
  EXPECT_EQ(sol.witness->demand, 1);
  EXPECT_EQ(sol.witness->achieved, 0);
}

TEST(SolveSnaTest, WithinBoundOfExactOnDirectedInstances) {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    SnaParams params;
    params.nodes = uniform_int(rng, 3, 6);
    params.candidates = uniform_int(rng, 2, 7);
    params.demands = uniform_int(rng, 1, 3);
    params.directed = true;
    params.mode = coin(rng, 0.5) ? CostMode::kEdge : CostMode::kNode;
    params.fractional_costs = coin(rng, 0.3);
    const SnaInstance inst = random_abased_sna(rng, params);
    const auto sol = solve_abased_sna(inst);
    const auto ex = exact_sna(inst);
    ASSERT_EQ(sol.feasible, ex.feasible) << trial;
    if (!ex.feasible) continue;
    EXPECT_GE(sol.cost, ex.optimum);
    EXPECT_LE(sol.cost, ex.optimum * (sol.theorem_bound * sol.factor)) << trial;
  }
}

TEST(SolveSnaTest, UndirectedRootedAtCenterIsFeasible) {
  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    SnaParams params;
    params.directed = false;
    params.root_is_center = true;
    params.mode = coin(rng, 0.5) ? CostMode::kEdge : CostMode::kNode;
    const SnaInstance inst = random_abased_sna(rng, params);
    const auto sol = solve_abased_sna(inst);
    ASSERT_TRUE(sol.feasible) << trial;
    EXPECT_FALSE(sol.stalled);
    EXPECT_EQ(sol.factor, 2);
    EXPECT_TRUE(sna_feasible(inst, sol.chosen));
  }
}

// Two star edges chained through the center: neither helps alone.
SnaInstance chained_star(bool directed) {
  SnaInstance inst;
  inst.graph = Graph(3, directed);
  inst.capacity = {1, 1, 1};
  inst.candidates = {{0, 1}, {1, 2}};
  inst.candidate_costs = {Cost(1), Cost(1)};
  inst.demands = {{0, 2, 1}};
  return inst;
}

TEST(SolveSnaTest, ChainedStarEdgesBreakSubmodularity) {
  for (bool directed : {true, false}) {
    const SnaInstance inst = chained_star(directed);
    const Count none = progress_g_edge(inst, std::vector<int>{});
    const Count both = progress_g_edge(inst, std::vector<int>{0, 1});
    EXPECT_EQ(progress_g_edge(inst, std::vector<int>{0}), none);
    EXPECT_EQ(progress_g_edge(inst, std::vector<int>{1}), none);
    EXPECT_EQ(both, none + 1);
    const auto sol = solve_abased_sna(inst, 1);
    EXPECT_FALSE(sol.feasible);
    EXPECT_TRUE(sol.stalled);
    EXPECT_FALSE(sol.witness.has_value());
  }
}

TEST(SolveSnaTest, MixedStarsStillVerifyWhenNotStalled) {
  Rng rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    SnaParams params;
    params.directed = coin(rng, 0.5);
    params.orientation = StarOrientation::kMixed;
    const SnaInstance inst = random_abased_sna(rng, params);
    const auto sol = solve_abased_sna(inst);
    EXPECT_NE(sol.feasible, sol.stalled) << trial;
    if (sol.feasible) EXPECT_TRUE(sna_feasible(inst, sol.chosen));
  }
}

TEST(SolveSslTest, MatchesExactFeasibilityAndBound) {
  Rng rng(45);
  for (int trial = 0; trial < 25; ++trial) {
    SslParams params;
    params.nodes = uniform_int(rng, 2, 6);
    params.edges = uniform_int(rng, 1, 9);
    params.directed = true;
    params.mode = static_cast<PqMode>(uniform_int(rng, 0, 3));
    params.ensure_feasible = coin(rng, 0.8);
    const SslInstance inst = random_ssl(rng, params);
    const auto sol = solve_ssl(inst);
    const auto ex = exact_ssl(inst);
    ASSERT_EQ(sol.feasible, ex.feasible) << trial;
    if (!ex.feasible) {
      EXPECT_TRUE(sol.witness.has_value());
      continue;
    }
    EXPECT_TRUE(ssl_feasible(inst, sol.sources));
    EXPECT_LE(sol.cost, ex.optimum * sol.sna.theorem_bound) << trial;
  }
}

TEST(DoubleCoverTest, StatusesAndPrecondition) {
  DoubleCoverProblem p;
  p.costs = {Cost(1), Cost(2)};
  p.f = coverage({0b1, 0b10});
  p.f_target = Cost(1);
  p.g = [](const Subset& s) { return s[1] ? Cost(0) : Cost(-1); };
  p.g_target = Cost(0);
  auto t = solve_double_cover(p);
  EXPECT_EQ(t.status, DoubleCoverStatus::kSolved);
  EXPECT_EQ(t.cost, Cost(3));
  EXPECT_EQ(members_of(t.chosen), (std::vector<int>{0, 1}));

  p.f_target = Cost(3);
  EXPECT_EQ(solve_double_cover(p).status, DoubleCoverStatus::kPhase1Infeasible);

  p.f_target = Cost(1);
  p.g_target = Cost(1);
  EXPECT_EQ(solve_double_cover(p).status, DoubleCoverStatus::kPhase2Infeasible);

  p.g = [](const Subset&) { return Cost::negative_infinity(); };
  EXPECT_THROW(solve_double_cover(p), Error);
}

TEST(FlowBoundsTest, WithinBoundOfExact) {
  Rng rng(46);
  int solved = 0;
  for (int trial = 0; trial < 25; ++trial) {
    SslParams params;
    params.nodes = uniform_int(rng, 2, 5);
    params.edges = uniform_int(rng, 1, 8);
    params.fractional_costs = coin(rng, 0.3);
    const SslInstance inst = random_ssl_flow_bounds(rng, params);
    const auto sol = solve_ssl_flow_bounds(inst);
    const auto ex = exact_ssl(inst);
    ASSERT_EQ(sol.feasible, ex.feasible) << trial;
    if (!ex.feasible) continue;
    ++solved;
    EXPECT_TRUE(ssl_feasible(inst, sol.sources));
    EXPECT_LE(sol.cost, ex.optimum * sol.theorem_bound) << trial;
  }
  EXPECT_GT(solved, 10);
}

TEST(FlowBoundsTest, BudgetViolationIsReported) {
  SslInstance inst;
  inst.graph = Graph(2, true, {{0, 1}});
  inst.nodes.resize(2);
  inst.nodes[1].demand = 1;
  inst.nodes[1].supply = 0;  // v cannot feed itself
  inst.nodes[1].flow_cost_bound = Cost(1);
  inst.edge_costs = {Rational(3)};
  const auto sol = solve_ssl_flow_bounds(inst);
  EXPECT_FALSE(sol.feasible);
  EXPECT_FALSE(sol.demand_witness.has_value());
  ASSERT_TRUE(sol.budget_witness.has_value());
  EXPECT_EQ(*sol.budget_witness, 1);
}

}  // namespace
}  // namespace srcloc
