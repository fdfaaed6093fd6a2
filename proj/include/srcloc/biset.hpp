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
#include <span>
#include <string>
#include <vector>

#include "srcloc/graph.hpp"
#include "srcloc/numeric.hpp"

namespace srcloc {

// A biset (X, X+) with X a subset of X+. The boundary X+ \ X is derived.
class Biset {
 public:
  constexpr Biset() = default;
  Biset(NodeSet inner, NodeSet outer) : inner_(inner), outer_(outer) {
    if (!inner.subset_of(outer)) {
      throw Error(ErrorKind::kInvalidArgument, "biset inner part " + inner.str() + " not inside outer part " + outer.str());
    }
  }

  constexpr NodeSet inner() const { return inner_; }
  constexpr NodeSet outer() const { return outer_; }
  constexpr NodeSet boundary() const { return outer_ - inner_; }

  // Inclusion: this contains `o` when o.X is inside X and o.X+ inside X+.
  constexpr bool contains(const Biset& o) const { return o.inner_.subset_of(inner_) && o.outer_.subset_of(outer_); }

  friend constexpr auto operator<=>(const Biset&, const Biset&) = default;

  std::string str() const { return "(" + inner_.str() + "," + outer_.str() + ")"; }

 private:
  NodeSet inner_;
  NodeSet outer_;
};

inline Biset intersect(const Biset& a, const Biset& b) {
  return Biset(a.inner() & b.inner(), a.outer() & b.outer());
}

inline Biset unite(const Biset& a, const Biset& b) {
  return Biset(a.inner() | b.inner(), a.outer() | b.outer());
}

inline Biset minus(const Biset& a, const Biset& b) {
  return Biset(a.inner() - b.outer(), a.outer() - b.inner());
}

// (V \ X+, V \ X).
inline Biset complement(const Biset& a, int n) {
  return Biset(a.outer().complement(n), a.inner().complement(n));
}

// One endpoint in X and the other outside X+; directed edges must leave X.
inline bool covers(const Edge& e, const Biset& b, bool directed) {
  const auto crosses = [&](Node from, Node to) { return b.inner().contains(from) && !b.outer().contains(to); };
  return crosses(e.u, e.v) || (!directed && crosses(e.v, e.u));
}

inline std::vector<Edge> delta(std::span<const Edge> edges, const Biset& b, bool directed) {
  std::vector<Edge> out;
  for (const Edge& e : edges) {
    if (covers(e, b, directed)) out.push_back(e);
  }
  return out;
}

inline int delta_count(std::span<const Edge> edges, const Biset& b, bool directed) {
  return static_cast<int>(std::count_if(edges.begin(), edges.end(), [&](const Edge& e) { return covers(e, b, directed); }));
}

// True iff some xx' in D covering a and yy' in D covering b exist with
// {x,x'} missing the boundary of b and {y,y'} missing the boundary of a.
inline bool d_dependent(const Biset& a, const Biset& b, std::span<const Edge> demands, bool directed) {
  const NodeSet ga = a.boundary();
  const NodeSet gb = b.boundary();
  bool a_witness = false;
  bool b_witness = false;
  for (const Edge& e : demands) {
    const NodeSet ends{e.u, e.v};
    if (!a_witness && covers(e, a, directed) && !ends.intersects(gb)) a_witness = true;
    if (!b_witness && covers(e, b, directed) && !ends.intersects(ga)) b_witness = true;
    if (a_witness && b_witness) return true;
  }
  return false;
}

// Negation of: X n T inside boundary(b) or Y n T inside boundary(a).
inline bool t_dependent(const Biset& a, const Biset& b, NodeSet terminals) {
  const bool independent = (a.inner() & terminals).subset_of(b.boundary()) ||
                           (b.inner() & terminals).subset_of(a.boundary());
  return !independent;
}

// An explicit, duplicate-free family of bisets kept in sorted order.
class BisetFamily {
 public:
  BisetFamily() = default;
  explicit BisetFamily(std::vector<Biset> members) : members_(std::move(members)) { normalize(); }

  void add(const Biset& b) {
    auto it = std::lower_bound(members_.begin(), members_.end(), b);
    if (it == members_.end() || *it != b) members_.insert(it, b);
  }

  bool contains(const Biset& b) const { return std::binary_search(members_.begin(), members_.end(), b); }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Biset>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const BisetFamily&, const BisetFamily&) = default;

 private:
  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  std::vector<Biset> members_;
};

// Members that contain no other member. O(|F|^2).
inline BisetFamily minimal_members(const BisetFamily& family) {
  std::vector<Biset> out;
  const auto& m = family.members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < m.size() && minimal; ++j) {
      if (i != j && m[i].contains(m[j])) minimal = false;
    }
    if (minimal) out.push_back(m[i]);
  }
  return BisetFamily(std::move(out));
}

inline bool uncrossing_holds(const BisetFamily& family, const Biset& a, const Biset& b) {
  return (family.contains(intersect(a, b)) && family.contains(unite(a, b))) ||
         (family.contains(minus(a, b)) && family.contains(minus(b, a)));
}

inline bool is_d_uncrossable(const BisetFamily& family, std::span<const Edge> demands, bool directed) {
  for (const Biset& b : family) {
    if (delta_count(demands, b, directed) == 0) return false;
  }
  const auto& m = family.members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i; j < m.size(); ++j) {
      if (d_dependent(m[i], m[j], demands, directed) && !uncrossing_holds(family, m[i], m[j])) return false;
    }
  }
  return true;
}

inline bool is_t_uncrossable(const BisetFamily& family, NodeSet terminals) {
  for (const Biset& b : family) {
    if (!b.inner().intersects(terminals)) return false;
  }
  const auto& m = family.members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i; j < m.size(); ++j) {
      if (t_dependent(m[i], m[j], terminals) && !uncrossing_holds(family, m[i], m[j])) return false;
    }
  }
  return true;
}

inline bool is_symmetric(const BisetFamily& family, int n) {
  return std::all_of(family.begin(), family.end(), [&](const Biset& b) { return family.contains(complement(b, n)); });
}

// gamma: the largest boundary size over the family.
inline int max_boundary(const BisetFamily& family) {
  int g = 0;
  for (const Biset& b : family) g = std::max(g, b.boundary().size());
  return g;
}

// Delta: maximum degree of the hypergraph formed by the inner parts.
inline int max_inner_degree(const BisetFamily& family, int n) {
  int best = 0;
  for (Node v = 0; v < n; ++v) {
    int d = 0;
    for (const Biset& b : family) d += b.inner().contains(v) ? 1 : 0;
    best = std::max(best, d);
  }
  return best;
}

// A hypergraph on nodes [0, node_count) with node costs. A transversal is
// a node set meeting every hyperedge.
struct TransversalProblem {
  int node_count = 0;
  std::vector<NodeSet> hyperedges;
  std::vector<Cost> costs;

  bool hits_all(NodeSet u) const {
    return std::all_of(hyperedges.begin(), hyperedges.end(), [&](NodeSet h) { return h.intersects(u); });
  }

  // Delta: maximum number of hyperedges sharing a node.
  int max_degree() const {
    int best = 0;
    for (Node v = 0; v < node_count; ++v) {
      best = std::max(best, static_cast<int>(std::count_if(hyperedges.begin(), hyperedges.end(),
                                                           [&](NodeSet h) { return h.contains(v); })));
    }
    return best;
  }

  Cost cost_of(NodeSet u) const {
    Cost c{0};
    for (Node v : u.members()) c += costs.at(v);
    return c;
  }
};

// Calls fn(Biset) for each of the 3^n bisets on n nodes.
template <typename Fn>
void for_each_biset(int n, Fn&& fn) {
  NodeSet::check_universe(n);
  const std::uint64_t full = NodeSet::full(n).bits();
  std::uint64_t outer = 0;
  while (true) {
    // Enumerate inner parts as submasks of outer, including the empty one.
    std::uint64_t inner = outer;
    while (true) {
      fn(Biset(NodeSet(inner), NodeSet(outer)));
      if (inner == 0) break;
      inner = (inner - 1) & outer;
    }
    if (outer == full) break;
    ++outer;
  }
}

}  // namespace srcloc
