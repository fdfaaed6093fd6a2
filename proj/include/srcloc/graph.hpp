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

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srcloc/error.hpp"

namespace srcloc {

// Nodes are dense 0-based indices.
using Node = int;

// An edge of a multigraph. For undirected graphs the orientation (u, v) is
// only the stored one; direction-sensitive operations take a flag.
struct Edge {
  Node u = 0;
  Node v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;

  bool touches(Node x) const { return u == x || v == x; }
  Node other(Node x) const { return u == x ? v : u; }
};

class Graph {
 public:
  Graph() = default;

  Graph(int node_count, bool directed, std::vector<Edge> edges = {})
      : node_count_(node_count), directed_(directed), edges_(std::move(edges)) {
    if (node_count_ < 0) throw Error(ErrorKind::kInvalidArgument, "negative node count");
    for (std::size_t i = 0; i < edges_.size(); ++i) check_edge(edges_[i], "edge " + std::to_string(i));
  }

  int node_count() const { return node_count_; }
  bool directed() const { return directed_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  bool has_node(Node v) const { return v >= 0 && v < node_count_; }

  // G + extra: multiplicities are kept, so parallel copies accumulate.
  Graph plus(std::span<const Edge> extra) const {
    Graph g = *this;
    g.edges_.reserve(edges_.size() + extra.size());
    for (const Edge& e : extra) {
      g.check_edge(e, "added edge");
      g.edges_.push_back(e);
    }
    return g;
  }

  // Same edge multiset on a larger node range.
  Graph with_node_count(int n) const {
    if (n < node_count_) throw Error(ErrorKind::kInvalidArgument, "cannot shrink a graph");
    Graph g = *this;
    g.node_count_ = n;
    return g;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_edge(const Edge& e, const std::string& what) const {
    if (!has_node(e.u) || !has_node(e.v)) {
      throw Error(ErrorKind::kInvalidArgument, what + " has an endpoint outside [0, " + std::to_string(node_count_) + ")");
    }
    if (e.u == e.v) throw Error(ErrorKind::kInvalidArgument, what + " is a self-loop");
  }

  int node_count_ = 0;
  bool directed_ = false;
  std::vector<Edge> edges_;
};

// A set of nodes over a universe of at most 64 nodes, as a bitmask. Biset
// machinery only runs at desk scale, so this bound is never a limitation.
class NodeSet {
 public:
  static constexpr int kMaxNodes = 64;

  constexpr NodeSet() = default;
  constexpr explicit NodeSet(std::uint64_t bits) : bits_(bits) {}
  NodeSet(std::initializer_list<Node> nodes) {
    for (Node v : nodes) insert(v);
  }

  static NodeSet full(int n) {
    check_universe(n);
    return NodeSet(n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }
  static NodeSet of(std::span<const Node> nodes) {
    NodeSet s;
    for (Node v : nodes) s.insert(v);
    return s;
  }

  static void check_universe(int n) {
    if (n < 0 || n > kMaxNodes) {
      throw Error(ErrorKind::kCapExceeded, "node sets support at most 64 nodes, got " + std::to_string(n));
    }
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(Node v) const { return v >= 0 && v < kMaxNodes && ((bits_ >> v) & 1U) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool subset_of(NodeSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(NodeSet o) const { return (bits_ & o.bits_) != 0; }

  void insert(Node v) {
    if (v < 0 || v >= kMaxNodes) throw Error(ErrorKind::kCapExceeded, "node index beyond node-set capacity");
    bits_ |= std::uint64_t{1} << v;
  }
  void erase(Node v) {
    if (v >= 0 && v < kMaxNodes) bits_ &= ~(std::uint64_t{1} << v);
  }

  std::vector<Node> members() const {
    std::vector<Node> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  constexpr NodeSet complement(int n) const { return NodeSet(full_bits(n) & ~bits_); }

  friend constexpr NodeSet operator&(NodeSet a, NodeSet b) { return NodeSet(a.bits_ & b.bits_); }
  friend constexpr NodeSet operator|(NodeSet a, NodeSet b) { return NodeSet(a.bits_ | b.bits_); }
  friend constexpr NodeSet operator-(NodeSet a, NodeSet b) { return NodeSet(a.bits_ & ~b.bits_); }
  friend constexpr auto operator<=>(NodeSet, NodeSet) = default;

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (Node v : members()) {
      if (!first) s += ",";
      s += std::to_string(v);
      first = false;
    }
    return s + "}";
  }

 private:
  static constexpr std::uint64_t full_bits(int n) {
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  }

  std::uint64_t bits_ = 0;
};

}  // namespace srcloc
