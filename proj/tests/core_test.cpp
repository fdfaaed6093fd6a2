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

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "srcloc/biset.hpp"
#include "srcloc/graph.hpp"
#include "srcloc/instance.hpp"
#include "srcloc/numeric.hpp"

namespace srcloc {
namespace {

Biset B(std::initializer_list<Node> inner, std::initializer_list<Node> outer) {
  return Biset(NodeSet(inner), NodeSet(outer));
}

TEST(NumericTest, ParsesRationalsAndCounts) {
  EXPECT_EQ(parse_rational("7/2"), Rational(7, 2));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_count("inf"), kInfinity);
  EXPECT_EQ(parse_count("12"), 12);
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("1.5"), Error);
  EXPECT_THROW(parse_count("3/2"), Error);
}

TEST(NumericTest, SaturatingArithmetic) {
  EXPECT_EQ(saturating_add(kInfinity, 5), kInfinity);
  EXPECT_EQ(saturating_sub(kInfinity, 5), kInfinity);
  EXPECT_EQ(saturating_mul(kInfinity, 0), 0);
  EXPECT_EQ(saturating_mul(3, 4), 12);
  EXPECT_EQ(count_to_string(kInfinity), "inf");
}

TEST(NumericTest, ExtendedRationalOrderAndFormatting) {
  const Cost inf = Cost::infinity();
  EXPECT_LT(Cost(5), inf);
  EXPECT_LT(Cost::negative_infinity(), Cost(-5));
  EXPECT_EQ(inf + Cost(3), inf);
  EXPECT_THROW(inf + Cost::negative_infinity(), std::logic_error);
  EXPECT_EQ(Cost(Rational(7, 2)).str(), "7/2");
  EXPECT_EQ(Cost(3).str(), "3");
  EXPECT_EQ(Cost::parse("inf"), inf);
  EXPECT_EQ(inf * Rational(0), Cost(0));
}

TEST(NumericTest, HarmonicNumbers) {
  EXPECT_EQ(harmonic(0), Rational(0));
  EXPECT_EQ(harmonic(3), Rational(11, 6));
  EXPECT_EQ(*harmonic_of(Cost(4)), Rational(25, 12));
  EXPECT_FALSE(harmonic_of(Cost::infinity()).has_value());
  EXPECT_FALSE(harmonic_of(Cost(Rational(1, 2))).has_value());
}

TEST(GraphTest, RejectsBadEdgesAndKeepsMultiplicity) {
  EXPECT_THROW(Graph(2, false, {{0, 0}}), Error);
  EXPECT_THROW(Graph(2, false, {{0, 2}}), Error);
  const Graph g(3, false, {{0, 1}, {0, 1}});
  EXPECT_EQ(g.edge_count(), 2);
  const Edge extra[] = {{1, 2}, {0, 1}};
  EXPECT_EQ(g.plus(extra).edge_count(), 4);
}

TEST(NodeSetTest, Algebra) {
  const NodeSet a{1, 2}, b{2, 3};
  EXPECT_EQ((a & b), NodeSet({2}));
  EXPECT_EQ((a | b), NodeSet({1, 2, 3}));
  EXPECT_EQ((a - b), NodeSet({1}));
  EXPECT_EQ(a.complement(4), NodeSet({0, 3}));
  EXPECT_EQ(a.str(), "{1,2}");
  EXPECT_THROW(NodeSet::check_universe(65), Error);
}

TEST(BisetTest, IntersectUnionMinus) {
  EXPECT_EQ(intersect(B({1}, {1, 2}), B({2}, {2, 3})), B({}, {2}));
  EXPECT_EQ(intersect(B({1, 2}, {1, 2, 3}), B({2, 3}, {2, 3, 4})), B({2}, {2, 3}));
  EXPECT_EQ(unite(B({1}, {1, 2}), B({2}, {2, 3})), B({1, 2}, {1, 2, 3}));
  EXPECT_EQ(unite(B({}, {}), B({1}, {1, 2})), B({1}, {1, 2}));
  EXPECT_EQ(minus(B({1, 2}, {1, 2, 3}), B({3}, {3, 4})), B({1, 2}, {1, 2}));
  EXPECT_EQ(minus(B({1}, {1, 2}), B({}, {})), B({1}, {1, 2}));
  EXPECT_EQ(minus(B({1}, {1, 2}), B({2}, {2})), B({1}, {1}));
  const Biset x = B({1, 2}, {1, 2, 4});
  EXPECT_EQ(intersect(x, x), x);
  EXPECT_EQ(unite(x, x), x);
  EXPECT_THROW(B({1}, {2}), Error);
}

TEST(BisetTest, CoversAndDelta) {
  const Biset x = B({1}, {1, 2});
  EXPECT_TRUE(covers({1, 3}, x, false));
  EXPECT_FALSE(covers({1, 2}, x, false));
  EXPECT_FALSE(covers({2, 3}, x, false));
  EXPECT_TRUE(covers({3, 1}, x, false));
  EXPECT_FALSE(covers({3, 1}, x, true));
  const std::vector<Edge> j = {{1, 3}, {1, 3}, {2, 3}};
  EXPECT_EQ(delta(j, x, false).size(), 2U);
  EXPECT_TRUE(delta(std::vector<Edge>{}, x, false).empty());
  std::vector<Edge> all;
  for (Node u = 1; u <= 3; ++u) {
    for (Node v = 1; v <= 3; ++v) {
      if (u != v) all.push_back({u, v});
    }
  }
  const auto d = delta(all, B({1}, {1}), true);
  EXPECT_EQ(d, (std::vector<Edge>{{1, 2}, {1, 3}}));
}

TEST(BisetTest, DDependence) {
  const Biset a = B({1}, {1, 2});
  const Biset b = B({4}, {3, 4});
  const std::vector<Edge> d = {{1, 3}, {4, 2}};
  EXPECT_FALSE(d_dependent(a, b, d, false));
  const std::vector<Edge> one = {{1, 4}};
  EXPECT_TRUE(d_dependent(a, a, one, false));
  EXPECT_FALSE(d_dependent(B({1}, {1}), B({3}, {3}), std::vector<Edge>{{1, 2}}, true));
}

TEST(BisetTest, MinimalMembers) {
  const BisetFamily chain({B({1}, {1}), B({1}, {1, 2}), B({1, 2}, {1, 2, 3})});
  EXPECT_EQ(minimal_members(chain), BisetFamily({B({1}, {1})}));
  const BisetFamily anti({B({1}, {1}), B({2}, {2}), B({3}, {3, 0})});
  EXPECT_EQ(minimal_members(anti), anti);
  const BisetFamily mixed({B({0}, {0, 1}), B({0}, {0}), B({1, 2}, {1, 2}), B({2}, {2, 3}), B({0, 1, 2}, {0, 1, 2, 3})});
  const BisetFamily expect({B({0}, {0}), B({1, 2}, {1, 2}), B({2}, {2, 3})});
  EXPECT_EQ(minimal_members(mixed), expect);
}

TEST(BisetTest, Uncrossability) {
  const std::vector<Edge> d = {{0, 3}};
  EXPECT_TRUE(is_d_uncrossable(BisetFamily({B({0}, {0, 1})}), d, false));
  EXPECT_FALSE(is_d_uncrossable(BisetFamily({B({1}, {1})}), d, false));
  // A chain is closed under intersection and union.
  const BisetFamily chain({B({0}, {0}), B({0}, {0, 1}), B({0, 1}, {0, 1, 2})});
  EXPECT_TRUE(is_d_uncrossable(chain, d, false));
  EXPECT_TRUE(is_t_uncrossable(chain, NodeSet{0}));
  EXPECT_FALSE(is_t_uncrossable(chain, NodeSet{3}));
}

TEST(BisetTest, FamilyMeasures) {
  const BisetFamily f({B({0}, {0, 1}), B({2}, {1, 2}), B({0, 2}, {0, 2})});
  EXPECT_EQ(max_boundary(f), 1);
  EXPECT_EQ(max_inner_degree(f, 3), 2);
  int count = 0;
  for_each_biset(3, [&](const Biset&) { ++count; });
  EXPECT_EQ(count, 27);
  const BisetFamily sym({B({0}, {0, 1}), B({2}, {1, 2})});
  EXPECT_TRUE(is_symmetric(sym, 3));
  EXPECT_FALSE(is_symmetric(BisetFamily({B({0}, {0})}), 3));
}

// Exhaustive properties on small universes.
TEST(BisetPropertyTest, CutSubmodularityAndInvariants) {
  std::mt19937_64 rng(7);
  const int n = 4;
  std::vector<Biset> all;
  for_each_biset(n, [&](const Biset& b) { all.push_back(b); });
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Edge> j;
    for (int i = 0; i < 6; ++i) {
      const Node u = static_cast<Node>(rng() % n);
      Node v = static_cast<Node>(rng() % (n - 1));
      if (v >= u) ++v;
      j.push_back({u, v});
    }
    for (const Biset& x : all) {
      for (const Biset& y : all) {
        const int lhs = delta_count(j, intersect(x, y), false) + delta_count(j, unite(x, y), false);
        const int rhs = delta_count(j, x, false) + delta_count(j, y, false);
        ASSERT_LE(lhs, rhs) << x.str() << " " << y.str();
        const Biset m = minus(x, y);
        ASSERT_TRUE(m.inner().subset_of(m.outer()));
        ASSERT_EQ(d_dependent(x, y, j, false), d_dependent(y, x, j, false));
      }
      for (const Edge& e : j) {
        if (x.boundary().contains(e.u) || x.boundary().contains(e.v)) {
          ASSERT_FALSE(covers(e, x, false));
        }
      }
    }
  }
}

TEST(BisetPropertyTest, MinimalMembersIdempotentAntichain) {
  std::mt19937_64 rng(11);
  std::vector<Biset> all;
  for_each_biset(4, [&](const Biset& b) { all.push_back(b); });
  for (int trial = 0; trial < 30; ++trial) {
    BisetFamily f;
    for (int i = 0; i < 8; ++i) f.add(all[rng() % all.size()]);
    const BisetFamily m = minimal_members(f);
    EXPECT_EQ(minimal_members(m), m);
    for (const Biset& a : m) {
      EXPECT_TRUE(f.contains(a));
      for (const Biset& b : m) {
        if (a != b) {
          EXPECT_FALSE(a.contains(b));
        }
      }
    }
  }
}

TEST(InstanceTest, SslValidationAndNormalization) {
  SslInstance inst;
  inst.graph = Graph(2, true, {{0, 1}});
  inst.nodes.resize(2);
  inst.nodes[1].demand = 2;
  inst.nodes[0].supply = kInfinity;
  inst.nodes[0].capacity = 5;
  inst.validate();
  const SslInstance norm = inst.normalized();
  EXPECT_EQ(norm.nodes[0].supply, 2);
  EXPECT_EQ(norm.nodes[0].capacity, 2);
  inst.nodes[0].capacity = 0;
  EXPECT_THROW(inst.validate(), Error);
}

TEST(InstanceTest, SnaStarAndRoot) {
  SnaInstance inst;
  inst.graph = Graph(4, true);
  inst.capacity.assign(4, 1);
  inst.candidates = {{0, 1}, {0, 2}, {0, 1}};
  inst.candidate_costs.assign(3, Cost(1));
  inst.demands = {{3, 1, 1}, {3, 2, 2}};
  inst.validate();
  EXPECT_EQ(inst.star_center(), std::optional<Node>(0));
  EXPECT_EQ(inst.root(), std::optional<Node>(3));
  EXPECT_EQ(inst.max_parallel(), 2);
  EXPECT_EQ(inst.total_requirement(), 3);
  const int pick[] = {0, 2};
  EXPECT_EQ(inst.cost_of(pick), Cost(2));
  inst.mode = CostMode::kNode;
  inst.node_costs = {Cost(1), Cost(2), Cost(3), Cost(4)};
  EXPECT_EQ(inst.cost_of(pick), Cost(3));
}

}  // namespace
}  // namespace srcloc
