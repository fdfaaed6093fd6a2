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

// Exhaustive exact solvers. Candidates are visited in (cost, index list)
// order and judged by the same feasibility predicates as the solvers, so
// the first feasible candidate is the reported optimum.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "srcloc/biset.hpp"
#include "srcloc/flow.hpp"
#include "srcloc/instance.hpp"
#include "srcloc/numeric.hpp"

namespace srcloc {

struct OracleCaps {
  int ssl_nodes = 12;
  int sna_candidates = 16;
  int sna_nodes = 16;
  int transversal_nodes = 20;
};

struct ExactResult {
  bool feasible = false;
  Cost optimum = Cost::infinity();
  std::vector<int> solution;  // sources, candidate indices, or transversal nodes
  std::vector<Node> nodes;    // node-cost SNA: the endpoint set W
  std::uint64_t optimal_count = 0;
  std::uint64_t enumerated = 0;
};

namespace detail {

inline std::vector<int> mask_members(std::uint64_t mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) out.push_back(i);
  }
  return out;
}

inline void check_cap(int size, int cap, const std::string& what) {
  if (size > cap) {
    throw Error(ErrorKind::kCapExceeded, what + " " + std::to_string(size) + " exceeds oracle cap " + std::to_string(cap));
  }
}

// Scans masks over `bits` elements by (cost, members) and stops once the
// cost exceeds the first feasible one. Masks of infinite cost are skipped.
template <typename CostFn, typename FeasibleFn>
ExactResult ordered_search(int bits, CostFn cost_of, FeasibleFn feasible) {
  struct Candidate {
    Cost cost;
    std::vector<int> members;
    std::uint64_t mask;
  };
  std::vector<Candidate> all;
  const std::uint64_t limit = std::uint64_t{1} << bits;
  all.reserve(limit);
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    Cost c = cost_of(mask);
    if (!c.is_finite()) continue;
    all.push_back({std::move(c), mask_members(mask), mask});
  }
  std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.members < b.members;
  });
  ExactResult out;
  for (const Candidate& c : all) {
    if (out.feasible && c.cost > out.optimum) break;
    ++out.enumerated;
    if (!feasible(c.mask)) continue;
    if (!out.feasible) {
      out.feasible = true;
      out.optimum = c.cost;
      out.solution = c.members;
    }
    ++out.optimal_count;
  }
  return out;
}

}  // namespace detail

// Minimum-cost S with lambda^{p,q}(S, v) >= d_v for all v (and mu(S, v) <=
// b_v when bounds are present).
inline ExactResult exact_ssl(const SslInstance& inst, const OracleCaps& caps = {}) {
  inst.validate();
  const int n = inst.node_count();
  detail::check_cap(n, caps.ssl_nodes, "SSL node count");
  return detail::ordered_search(
      n,
      [&](std::uint64_t mask) {
        Cost c{0};
        for (int v : detail::mask_members(mask)) c += inst.nodes[v].cost;
        return c;
      },
      [&](std::uint64_t mask) { return ssl_feasible(inst, detail::mask_members(mask)); });
}

// Edge costs: subsets of F. Node costs: node sets W with I = F[W], the
// candidates with both ends in W.
inline ExactResult exact_sna(const SnaInstance& inst, const OracleCaps& caps = {}) {
  inst.validate();
  if (inst.mode == CostMode::kEdge) {
    const int m = static_cast<int>(inst.candidates.size());
    detail::check_cap(m, caps.sna_candidates, "candidate count");
    return detail::ordered_search(
        m,
        [&](std::uint64_t mask) {
          Cost c{0};
          for (int i : detail::mask_members(mask)) c += inst.candidate_costs[i];
          return c;
        },
        [&](std::uint64_t mask) { return sna_feasible(inst, detail::mask_members(mask)); });
  }
  const int n = inst.node_count();
  detail::check_cap(n, caps.sna_nodes, "SNA node count");
  const auto induced = [&](std::uint64_t mask) {
    std::vector<int> chosen;
    for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
      const Edge& e = inst.candidates[i];
      if (((mask >> e.u) & 1U) && ((mask >> e.v) & 1U)) chosen.push_back(static_cast<int>(i));
    }
    return chosen;
  };
  ExactResult out = detail::ordered_search(
      n,
      [&](std::uint64_t mask) {
        Cost c{0};
        for (int v : detail::mask_members(mask)) c += inst.node_costs[v];
        return c;
      },
      [&](std::uint64_t mask) { return sna_feasible(inst, induced(mask)); });
  if (out.feasible) {
    out.nodes = out.solution;
    out.solution = induced(NodeSet::of(out.nodes).bits());
  }
  return out;
}

// Minimum-cost transversal by a plain scan (feasibility is a bit test).
inline ExactResult exact_transversal(const TransversalProblem& problem, const OracleCaps& caps = {}) {
  detail::check_cap(problem.node_count, caps.transversal_nodes, "transversal universe");
  ExactResult out;
  const std::uint64_t limit = std::uint64_t{1} << problem.node_count;
  std::vector<int> best_members;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    ++out.enumerated;
    const NodeSet u(mask);
    if (!problem.hits_all(u)) continue;
    const Cost c = problem.cost_of(u);
    if (!c.is_finite()) continue;
    if (out.feasible && c > out.optimum) continue;
    const auto members = detail::mask_members(mask);
    if (out.feasible && c == out.optimum) {
      ++out.optimal_count;
      if (members < out.solution) out.solution = members;
      continue;
    }
    out.feasible = true;
    out.optimum = c;
    out.solution = members;
    out.optimal_count = 1;
  }
  return out;
}

}  // namespace srcloc
