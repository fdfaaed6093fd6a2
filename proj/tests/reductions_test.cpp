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

#include <vector>

#include <gtest/gtest.h>

#include "srcloc/generators.hpp"
#include "srcloc/oracle.hpp"
#include "srcloc/reductions.hpp"

namespace srcloc {
namespace {

std::vector<Node> mask_nodes(std::uint32_t mask, int n) {
  std::vector<Node> out;
  for (Node v = 0; v < n; ++v) {
    if ((mask >> v) & 1U) out.push_back(v);
  }
  return out;
}

TEST(SslToSnaTest, EmptyDemands) {
  SslInstance ssl;
  ssl.graph = Graph(2, true, {{0, 1}});
  ssl.nodes.resize(2);
  const auto rooted = ssl_to_rooted_sna(ssl);
  EXPECT_TRUE(rooted.instance.demands.empty());
  EXPECT_TRUE(sna_feasible(rooted.instance, std::vector<int>{}));
  EXPECT_TRUE(ssl_feasible(ssl, std::vector<Node>{}));
  EXPECT_EQ(rooted.instance.cost_of(std::vector<int>{}), Cost(0));
}

TEST(SslToSnaTest, SingleNode) {
  SslInstance ssl;
  ssl.graph = Graph(1, true);
  ssl.nodes.resize(1);
  ssl.nodes[0] = {Cost(7), 1, 1, 1, Cost::infinity()};
  const auto rooted = ssl_to_rooted_sna(ssl);
  const SnaInstance& sna = rooted.instance;
  EXPECT_EQ(sna.node_count(), 2);
  ASSERT_EQ(sna.candidates.size(), 1U);
  EXPECT_EQ(sna.candidates[0], (Edge{1, 0}));
  ASSERT_EQ(sna.demands.size(), 1U);
  EXPECT_EQ(sna.demands[0], (Demand{1, 0, 1}));
  EXPECT_EQ(sna.mode, CostMode::kNode);
  const Node s[] = {0};
  const auto i = rooted.map.select(s);
  EXPECT_EQ(i, std::vector<int>{0});
  EXPECT_TRUE(sna_feasible(sna, i));
  EXPECT_EQ(sna.cost_of(i), Cost(7));
  EXPECT_EQ(ssl.cost_of(s), Cost(7));
}

TEST(SslToSnaTest, FeasibilityTablesAgree) {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    SslParams params;
    params.nodes = 6;
    params.edges = uniform_int(rng, 3, 9);
    params.directed = coin(rng, 0.5);
    params.max_demand = 2;
    params.mode = static_cast<PqMode>(uniform_int(rng, 0, 3));
    const SslInstance ssl = random_ssl(rng, params);
    const auto rooted = ssl_to_rooted_sna(ssl);
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
      const auto s = mask_nodes(mask, 6);
      const auto i = rooted.map.select(s);
      ASSERT_EQ(ssl_feasible(ssl, s), sna_feasible(rooted.instance, i)) << trial << " mask " << mask;
      ASSERT_EQ(ssl.cost_of(s), rooted.instance.cost_of(i));
      ASSERT_EQ(rooted.map.pull_back(i), s);
    }
  }
}

TEST(SslToSnaTest, RoundTripIsIdentity) {
  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    SslParams params;
    params.nodes = uniform_int(rng, 1, 6);
    params.edges = params.nodes < 2 ? 0 : uniform_int(rng, 0, 8);
    params.directed = coin(rng, 0.5);
    params.mode = static_cast<PqMode>(uniform_int(rng, 0, 3));
    const SslInstance ssl = random_ssl(rng, params);
    const auto rooted = ssl_to_rooted_sna(ssl);
    const auto back = rooted_sna_to_ssl(rooted.instance, rooted.map.root);
    EXPECT_EQ(back.instance, ssl.normalized()) << trial;
    const auto again = ssl_to_rooted_sna(back.instance);
    EXPECT_EQ(again.instance, rooted.instance) << trial;
  }
}

TEST(RootedSnaToSslTest, RejectsViolatedPreconditions) {
  SnaInstance sna;
  sna.graph = Graph(3, true, {{1, 2}});
  sna.capacity.assign(3, 1);
  sna.candidates = {{0, 1}};
  sna.mode = CostMode::kNode;
  sna.node_costs = {Cost(0), Cost(1), Cost(1)};
  sna.demands = {{0, 2, 1}};
  EXPECT_NO_THROW(rooted_sna_to_ssl(sna, 0));
  const auto expect_clause = [](const SnaInstance& bad, Node s, const std::string& clause) {
    try {
      rooted_sna_to_ssl(bad, s);
      ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kPrecondition);
      EXPECT_NE(std::string(e.what()).find(clause), std::string::npos) << e.what();
    }
  };
  SnaInstance costly = sna;
  costly.node_costs[0] = Cost(1);
  expect_clause(costly, 0, "cost 0");
  SnaInstance touched = sna;
  touched.graph = Graph(3, true, {{0, 2}});
  expect_clause(touched, 0, "no edges in G");
  SnaInstance edge_mode = sna;
  edge_mode.mode = CostMode::kEdge;
  edge_mode.candidate_costs = {Cost(1)};
  expect_clause(edge_mode, 0, "node costs");
  SnaInstance unrooted = sna;
  unrooted.demands = {{1, 2, 1}};
  expect_clause(unrooted, 0, "not rooted");
  SnaInstance off_star = sna;
  off_star.candidates = {{1, 2}};
  expect_clause(off_star, 0, "does not leave the root");
}

TEST(KappaSplitTest, SingleArc) {
  SslInstance ssl;
  ssl.graph = Graph(2, true, {{0, 1}});
  ssl.nodes.resize(2);
  const auto split = kappa_split(ssl);
  EXPECT_EQ(split.instance.node_count(), 4);
  const std::vector<Edge> expect = {{0, 1}, {2, 3}, {1, 2}};
  EXPECT_EQ(split.instance.graph.edges(), expect);
  EXPECT_EQ(split.instance.nodes[0].cost, Cost::infinity());
  EXPECT_TRUE(ssl_feasible(split.instance, std::vector<Node>{}));
}

TEST(KappaSplitTest, RejectsUndirected) {
  SslInstance ssl;
  ssl.graph = Graph(2, false, {{0, 1}});
  ssl.nodes.resize(2);
  EXPECT_THROW(kappa_split(ssl), Error);
}

bool kappa_feasible(const SslInstance& ssl, std::span<const Node> s) {
  for (Node v = 0; v < ssl.node_count(); ++v) {
    const Count d = ssl.nodes[v].demand;
    if (d > 0 && connectivity(ConnectivityKind::kKappaDirected, ssl.graph, s, v, d) < d) return false;
  }
  return true;
}

TEST(KappaSplitTest, TriangleFeasibilityTable) {
  SslInstance ssl;
  ssl.graph = Graph(3, true, {{0, 1}, {1, 2}, {2, 0}});
  ssl.nodes.resize(3);
  for (auto& a : ssl.nodes) a.demand = 1;
  const auto split = kappa_split(ssl);
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    const auto s = mask_nodes(mask, 3);
    EXPECT_EQ(kappa_feasible(ssl, s), ssl_feasible(split.instance, split.forward(s))) << mask;
  }
}

TEST(KappaSplitTest, FeasibilityTablesAgreeExhaustively) {
  Rng rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    SslParams params;
    params.nodes = uniform_int(rng, 2, 5);
    params.edges = uniform_int(rng, 0, 9);
    params.max_demand = 3;
    params.ensure_feasible = false;
    const SslInstance ssl = random_ssl(rng, params);
    const auto split = kappa_split(ssl);
    for (std::uint32_t mask = 0; mask < (1U << params.nodes); ++mask) {
      const auto s = mask_nodes(mask, params.nodes);
      ASSERT_EQ(kappa_feasible(ssl, s), ssl_feasible(split.instance, split.forward(s))) << trial << " " << mask;
    }
  }
}

TEST(SetCoverGadgetTest, DefaultShape) {
  SetCoverSystem sys;
  sys.element_count = 3;
  sys.sets = {{0, 1}, {1, 2}, {2}};
  const auto gadget = setcover_gadget(sys);
  EXPECT_EQ(gadget.copies, 36);
  EXPECT_EQ(gadget.instance.node_count(), 3 + 3 * 37 + 1);
  EXPECT_EQ(gadget.instance.candidates.size(), 3U + 3U * 37U);
  EXPECT_EQ(gadget.instance.demands.size(), 3U * 37U);
  EXPECT_EQ(gadget.known_optimum, std::optional<Count>(2));
  EXPECT_TRUE(gadget.instance.directed());
}

TEST(SetCoverGadgetTest, UncoverableElementIsReported) {
  SetCoverSystem sys;
  sys.element_count = 2;
  sys.sets = {{0}};
  const auto gadget = setcover_gadget(sys, 2);
  EXPECT_FALSE(gadget.known_optimum.has_value());
  EXPECT_FALSE(exact_set_cover(sys).feasible);
  // All set edges still leave element 1 and its copies uncovered.
  const std::vector<int> sets_only = {0};
  const auto bad = sna_violation(gadget.instance, sets_only);
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(gadget.instance.demands[*bad].v, gadget.element_node(0, 1));
}

TEST(SetCoverGadgetTest, SmallOptimaMatchSetCover) {
  SetCoverSystem one;
  one.element_count = 1;
  one.sets = {{0}};
  const auto g1 = setcover_gadget(one, 4);
  EXPECT_EQ(g1.instance.node_count(), 1 + 5 + 1);
  const auto r1 = exact_sna(g1.instance);
  EXPECT_EQ(r1.optimum, Cost(1));
  EXPECT_EQ(r1.solution, std::vector<int>{0});
  SetCoverSystem three;
  three.element_count = 3;
  three.sets = {{0, 1}, {1, 2}, {2}};
  const auto g3 = setcover_gadget(three, 1);
  EXPECT_EQ(exact_sna(g3.instance).optimum, Cost(2));
  EXPECT_EQ(exact_set_cover(three).size, 2);
}

}  // namespace
}  // namespace srcloc
