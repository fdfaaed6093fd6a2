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

// Instance and solution files. One JSON document per instance, written with
// a fixed field order and two-space indent so that parse + dump is
// byte-stable. Integers are JSON integers; other rationals are "p/q"
// strings and infinity is "inf". Nodes are referenced by label.

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "json.hpp"
#include "srcloc/error.hpp"
#include "srcloc/flow.hpp"
#include "srcloc/instance.hpp"
#include "srcloc/numeric.hpp"

namespace srcloc {

using Json = nlohmann::ordered_json;

enum class InstanceKind { kSsl, kSna, kDsna, kSslFlowBounds };

inline const char* instance_kind_name(InstanceKind k) {
  switch (k) {
    case InstanceKind::kSsl:
      return "ssl";
    case InstanceKind::kSna:
      return "sna";
    case InstanceKind::kDsna:
      return "dsna";
    case InstanceKind::kSslFlowBounds:
      return "ssl-flow-bounds";
  }
  return "?";
}

inline InstanceKind parse_instance_kind(const std::string& s) {
  if (s == "ssl") return InstanceKind::kSsl;
  if (s == "sna") return InstanceKind::kSna;
  if (s == "dsna") return InstanceKind::kDsna;
  if (s == "ssl-flow-bounds") return InstanceKind::kSslFlowBounds;
  throw Error(ErrorKind::kParse, "/kind: unknown instance kind '" + s + "'");
}

struct Metadata {
  std::string generator;
  std::optional<std::uint64_t> seed;
  std::optional<Cost> known_optimum;

  friend bool operator==(const Metadata&, const Metadata&) = default;
};

struct InstanceFile {
  InstanceKind kind = InstanceKind::kSsl;
  std::vector<std::string> labels;
  SslInstance ssl;  // ssl, ssl-flow-bounds
  SnaInstance sna;  // sna, dsna
  Metadata metadata;

  bool is_ssl() const { return kind == InstanceKind::kSsl || kind == InstanceKind::kSslFlowBounds; }
  int node_count() const { return is_ssl() ? ssl.node_count() : sna.node_count(); }
  bool directed() const { return is_ssl() ? ssl.graph.directed() : sna.directed(); }

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

inline std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out;
  for (int v = 0; v < n; ++v) out.push_back("v" + std::to_string(v));
  return out;
}

inline InstanceFile make_ssl_file(SslInstance inst, Metadata meta = {}) {
  InstanceFile f;
  f.kind = inst.has_flow_cost_bounds() ? InstanceKind::kSslFlowBounds : InstanceKind::kSsl;
  f.labels = default_labels(inst.node_count());
  f.ssl = std::move(inst);
  f.metadata = std::move(meta);
  return f;
}

inline InstanceFile make_sna_file(SnaInstance inst, Metadata meta = {}, InstanceKind kind = InstanceKind::kSna) {
  InstanceFile f;
  f.kind = kind;
  f.labels = default_labels(inst.node_count());
  f.sna = std::move(inst);
  f.metadata = std::move(meta);
  return f;
}

// ---------------------------------------------------------------------------
// Numbers.

inline Json cost_to_json(const Cost& c) {
  if (c.is_integer()) {
    const Rational& v = c.value();
    if (abs(numerator(v)) < BigInt(std::numeric_limits<std::int64_t>::max())) return numerator(v).convert_to<std::int64_t>();
  }
  return c.str();
}

inline Json count_to_json(Count c) {
  if (is_infinite(c)) return "inf";
  return c;
}

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::kParse, where + ": " + what);
}

inline Cost json_to_cost(const Json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Cost(j.get<std::int64_t>());
    if (j.is_string()) return Cost::parse(j.get<std::string>());
  } catch (const Error& e) {
    parse_fail(where, e.what());
  }
  parse_fail(where, "expected an integer, \"p/q\" or \"inf\"");
}

inline Count json_to_count(const Json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) {
      const auto v = j.get<std::int64_t>();
      if (v < 0 || v >= kInfinity) parse_fail(where, "integer out of range");
      return v;
    }
    if (j.is_string()) {
      const auto s = j.get<std::string>();
      if (s == "inf") return kInfinity;
      return parse_count(s);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParse && std::string(e.what()).rfind(where, 0) == 0) throw;
    parse_fail(where, e.what());
  }
  parse_fail(where, "expected a nonnegative integer or \"inf\"");
}

inline const Json& member(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) parse_fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where + "/" + key, "missing field");
  return *it;
}

inline const Json& array_member(const Json& obj, const std::string& key, const std::string& where) {
  const Json& a = member(obj, key, where);
  if (!a.is_array()) parse_fail(where + "/" + key, "expected an array");
  return a;
}

inline void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) parse_fail(where + "/" + key, "unknown field");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Instance files.

inline Json instance_to_json(const InstanceFile& f) {
  Json j;
  j["kind"] = instance_kind_name(f.kind);
  j["directed"] = f.directed();
  if (!f.is_ssl()) j["cost_mode"] = cost_mode_name(f.sna.mode);
  const auto label = [&](Node v) { return f.labels.at(v); };
  Json nodes = Json::array();
  for (Node v = 0; v < f.node_count(); ++v) {
    Json n;
    n["label"] = label(v);
    if (f.is_ssl()) {
      const NodeAttrs& a = f.ssl.nodes[v];
      n["c"] = cost_to_json(a.cost);
      n["d"] = count_to_json(a.demand);
      n["p"] = count_to_json(a.supply);
      n["q"] = count_to_json(a.capacity);
      if (f.kind == InstanceKind::kSslFlowBounds) n["b"] = cost_to_json(a.flow_cost_bound);
    } else {
      n["q"] = count_to_json(f.sna.capacity[v]);
      if (f.sna.mode == CostMode::kNode) n["c"] = cost_to_json(f.sna.node_costs[v]);
    }
    nodes.push_back(n);
  }
  j["nodes"] = nodes;
  const Graph& g = f.is_ssl() ? f.ssl.graph : f.sna.graph;
  Json edges = Json::array();
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    Json e;
    e["u"] = label(g.edges()[i].u);
    e["v"] = label(g.edges()[i].v);
    if (f.kind == InstanceKind::kSslFlowBounds) e["cost"] = cost_to_json(f.ssl.costs_or_zero()[i]);
    edges.push_back(e);
  }
  j["edges"] = edges;
  if (!f.is_ssl()) {
    Json cands = Json::array();
    for (std::size_t i = 0; i < f.sna.candidates.size(); ++i) {
      Json e;
      e["u"] = label(f.sna.candidates[i].u);
      e["v"] = label(f.sna.candidates[i].v);
      if (f.sna.mode == CostMode::kEdge) e["cost"] = cost_to_json(f.sna.candidate_costs[i]);
      cands.push_back(e);
    }
    j["candidates"] = cands;
    Json dem = Json::array();
    for (const Demand& d : f.sna.demands) {
      Json e;
      e["s"] = label(d.s);
      e["v"] = label(d.v);
      e["r"] = count_to_json(d.r);
      dem.push_back(e);
    }
    j["demands"] = dem;
  }
  Json meta = Json::object();
  if (!f.metadata.generator.empty()) meta["generator"] = f.metadata.generator;
  if (f.metadata.seed) meta["seed"] = *f.metadata.seed;
  if (f.metadata.known_optimum) meta["known_optimum"] = cost_to_json(*f.metadata.known_optimum);
  j["metadata"] = meta;
  return j;
}

inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

inline std::string serialize_instance(const InstanceFile& f) { return dump_canonical(instance_to_json(f)); }

inline InstanceFile instance_from_json(const Json& j) {
  using detail::parse_fail;
  if (!j.is_object()) parse_fail("", "expected a JSON object");
  InstanceFile f;
  const Json& kind = detail::member(j, "kind", "");
  if (!kind.is_string()) parse_fail("/kind", "expected a string");
  f.kind = parse_instance_kind(kind.get<std::string>());
  const Json& directed = detail::member(j, "directed", "");
  if (!directed.is_boolean()) parse_fail("/directed", "expected true or false");
  if (f.is_ssl()) {
    detail::reject_unknown(j, {"kind", "directed", "nodes", "edges", "metadata"}, "");
  } else {
    detail::reject_unknown(j, {"kind", "directed", "cost_mode", "nodes", "edges", "candidates", "demands", "metadata"}, "");
    const Json& mode = detail::member(j, "cost_mode", "");
    if (mode == "edge") {
      f.sna.mode = CostMode::kEdge;
    } else if (mode == "node") {
      f.sna.mode = CostMode::kNode;
    } else {
      parse_fail("/cost_mode", "expected \"edge\" or \"node\"");
    }
  }

  const Json& nodes = detail::array_member(j, "nodes", "");
  if (nodes.empty()) parse_fail("/nodes", "an instance needs at least one node");
  std::map<std::string, Node> index;
  const int n = static_cast<int>(nodes.size());
  for (int v = 0; v < n; ++v) {
    const std::string where = "/nodes/" + std::to_string(v);
    const Json& node = nodes[v];
    const Json& label = detail::member(node, "label", where);
    if (!label.is_string()) parse_fail(where + "/label", "expected a string");
    const std::string name = label.get<std::string>();
    if (!index.emplace(name, v).second) parse_fail(where + "/label", "duplicate label '" + name + "'");
    f.labels.push_back(name);
    if (f.is_ssl()) {
      if (f.kind == InstanceKind::kSslFlowBounds) {
        detail::reject_unknown(node, {"label", "c", "d", "p", "q", "b"}, where);
      } else {
        detail::reject_unknown(node, {"label", "c", "d", "p", "q"}, where);
      }
      NodeAttrs a;
      a.cost = detail::json_to_cost(detail::member(node, "c", where), where + "/c");
      a.demand = detail::json_to_count(detail::member(node, "d", where), where + "/d");
      a.supply = detail::json_to_count(detail::member(node, "p", where), where + "/p");
      a.capacity = detail::json_to_count(detail::member(node, "q", where), where + "/q");
      if (f.kind == InstanceKind::kSslFlowBounds) a.flow_cost_bound = detail::json_to_cost(detail::member(node, "b", where), where + "/b");
      if (a.cost < Cost(0)) parse_fail(where + "/c", "negative cost");
      if (is_infinite(a.demand)) parse_fail(where + "/d", "demand must be finite");
      if (a.capacity < 1) parse_fail(where + "/q", "capacity must be at least 1");
      if (a.flow_cost_bound < Cost(0)) parse_fail(where + "/b", "negative bound");
      f.ssl.nodes.push_back(a);
    } else {
      detail::reject_unknown(node, f.sna.mode == CostMode::kNode ? std::initializer_list<const char*>{"label", "q", "c"}
                                                                  : std::initializer_list<const char*>{"label", "q"},
                             where);
      const Count q = detail::json_to_count(detail::member(node, "q", where), where + "/q");
      if (q < 1) parse_fail(where + "/q", "capacity must be at least 1");
      f.sna.capacity.push_back(q);
      if (f.sna.mode == CostMode::kNode) {
        const Cost c = detail::json_to_cost(detail::member(node, "c", where), where + "/c");
        if (c < Cost(0)) parse_fail(where + "/c", "negative cost");
        f.sna.node_costs.push_back(c);
      }
    }
  }
  const auto resolve = [&](const Json& obj, const char* key, const std::string& where) {
    const Json& ref = detail::member(obj, key, where);
    if (!ref.is_string()) parse_fail(where + "/" + key, "expected a node label");
    const auto it = index.find(ref.get<std::string>());
    if (it == index.end()) parse_fail(where + "/" + key, "unknown node '" + ref.get<std::string>() + "'");
    return it->second;
  };
  const auto read_pair = [&](const Json& obj, const char* a, const char* b, const std::string& where) {
    const Edge e{resolve(obj, a, where), resolve(obj, b, where)};
    if (e.u == e.v) parse_fail(where, "self-loop");
    return e;
  };

  std::vector<Edge> edges;
  std::vector<Rational> edge_costs;
  const Json& edge_list = detail::array_member(j, "edges", "");
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    const std::string where = "/edges/" + std::to_string(i);
    if (f.kind == InstanceKind::kSslFlowBounds) {
      detail::reject_unknown(edge_list[i], {"u", "v", "cost"}, where);
      const Cost c = detail::json_to_cost(detail::member(edge_list[i], "cost", where), where + "/cost");
      if (!c.is_finite() || c < Cost(0)) parse_fail(where + "/cost", "edge cost must be a finite nonnegative rational");
      edge_costs.push_back(c.value());
    } else {
      detail::reject_unknown(edge_list[i], {"u", "v"}, where);
    }
    edges.push_back(read_pair(edge_list[i], "u", "v", where));
  }
  const Graph g(n, directed.get<bool>(), edges);

  if (f.is_ssl()) {
    f.ssl.graph = g;
    f.ssl.edge_costs = std::move(edge_costs);
  } else {
    f.sna.graph = g;
    const Json& cands = detail::array_member(j, "candidates", "");
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const std::string where = "/candidates/" + std::to_string(i);
      detail::reject_unknown(cands[i], f.sna.mode == CostMode::kEdge ? std::initializer_list<const char*>{"u", "v", "cost"}
                                                                     : std::initializer_list<const char*>{"u", "v"},
                             where);
      f.sna.candidates.push_back(read_pair(cands[i], "u", "v", where));
      if (f.sna.mode == CostMode::kEdge) {
        const Cost c = detail::json_to_cost(detail::member(cands[i], "cost", where), where + "/cost");
        if (c < Cost(0)) parse_fail(where + "/cost", "negative cost");
        f.sna.candidate_costs.push_back(c);
      }
    }
    const Json& dem = detail::array_member(j, "demands", "");
    for (std::size_t i = 0; i < dem.size(); ++i) {
      const std::string where = "/demands/" + std::to_string(i);
      detail::reject_unknown(dem[i], {"s", "v", "r"}, where);
      const Edge e = read_pair(dem[i], "s", "v", where);
      const Count r = detail::json_to_count(detail::member(dem[i], "r", where), where + "/r");
      if (r < 1 || is_infinite(r)) parse_fail(where + "/r", "requirement must be a positive integer");
      f.sna.demands.push_back({e.u, e.v, r});
    }
    if (f.kind == InstanceKind::kDsna) {
      for (std::size_t i = 0; i < f.sna.demands.size(); ++i) {
        const Demand& d = f.sna.demands[i];
        if (pair_connectivity(g, f.sna.capacity, d.s, d.v, d.r) != d.r - 1) {
          parse_fail("/demands/" + std::to_string(i) + "/r", "dsna requirement must be the current connectivity plus one");
        }
      }
    }
  }

  if (const auto it = j.find("metadata"); it != j.end()) {
    const Json& meta = *it;
    detail::reject_unknown(meta, {"generator", "seed", "known_optimum"}, "/metadata");
    if (const auto g2 = meta.find("generator"); g2 != meta.end()) {
      if (!g2->is_string()) parse_fail("/metadata/generator", "expected a string");
      f.metadata.generator = g2->get<std::string>();
    }
    if (const auto s = meta.find("seed"); s != meta.end()) {
      if (!s->is_number_unsigned()) parse_fail("/metadata/seed", "expected a nonnegative integer");
      f.metadata.seed = s->get<std::uint64_t>();
    }
    if (const auto o = meta.find("known_optimum"); o != meta.end()) {
      f.metadata.known_optimum = detail::json_to_cost(*o, "/metadata/known_optimum");
    }
  }
  if (f.kind == InstanceKind::kSsl && f.ssl.has_flow_cost_bounds()) parse_fail("/kind", "flow-cost bounds need kind ssl-flow-bounds");
  return f;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::kParse, std::string("malformed JSON: ") + e.what());
  }
}

inline InstanceFile parse_instance(const std::string& text) { return instance_from_json(parse_json_text(text)); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path);
  out << text;
}

inline InstanceFile load_instance(const std::string& path) {
  try {
    return parse_instance(read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParse) throw Error(ErrorKind::kParse, path + ": " + e.what());
    throw;
  }
}

// ---------------------------------------------------------------------------
// Hashing and solution files.

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

inline std::string instance_hash(const InstanceFile& f) { return sha256_hex(serialize_instance(f)); }

// SSL kinds store a source set; SNA kinds store candidate indices.
struct SolutionFile {
  std::string instance_sha256;
  InstanceKind kind = InstanceKind::kSsl;
  std::vector<Node> sources;
  std::vector<int> candidates;

  friend bool operator==(const SolutionFile&, const SolutionFile&) = default;
};

inline Json solution_to_json(const SolutionFile& s, const InstanceFile& f) {
  Json j;
  j["instance_sha256"] = s.instance_sha256;
  j["kind"] = instance_kind_name(s.kind);
  if (f.is_ssl()) {
    Json src = Json::array();
    for (Node v : s.sources) src.push_back(f.labels.at(v));
    j["sources"] = src;
  } else {
    j["candidates"] = s.candidates;
  }
  return j;
}

inline std::string serialize_solution(const SolutionFile& s, const InstanceFile& f) {
  return dump_canonical(solution_to_json(s, f));
}

// Parses against `f`; the hash must match.
inline SolutionFile parse_solution(const std::string& text, const InstanceFile& f) {
  using detail::parse_fail;
  const Json j = parse_json_text(text);
  SolutionFile s;
  const Json& hash = detail::member(j, "instance_sha256", "");
  if (!hash.is_string()) parse_fail("/instance_sha256", "expected a string");
  s.instance_sha256 = hash.get<std::string>();
  if (s.instance_sha256 != instance_hash(f)) parse_fail("/instance_sha256", "does not match the instance");
  const Json& kind = detail::member(j, "kind", "");
  if (!kind.is_string()) parse_fail("/kind", "expected a string");
  s.kind = parse_instance_kind(kind.get<std::string>());
  if (s.kind != f.kind) parse_fail("/kind", "does not match the instance kind");
  if (f.is_ssl()) {
    detail::reject_unknown(j, {"instance_sha256", "kind", "sources"}, "");
    const Json& src = detail::array_member(j, "sources", "");
    std::vector<bool> seen(f.node_count(), false);
    for (std::size_t i = 0; i < src.size(); ++i) {
      const std::string where = "/sources/" + std::to_string(i);
      if (!src[i].is_string()) parse_fail(where, "expected a node label");
      const auto it = std::find(f.labels.begin(), f.labels.end(), src[i].get<std::string>());
      if (it == f.labels.end()) parse_fail(where, "unknown node '" + src[i].get<std::string>() + "'");
      const Node v = static_cast<Node>(it - f.labels.begin());
      if (seen[v]) parse_fail(where, "duplicate source");
      seen[v] = true;
      s.sources.push_back(v);
    }
    std::sort(s.sources.begin(), s.sources.end());
  } else {
    detail::reject_unknown(j, {"instance_sha256", "kind", "candidates"}, "");
    const Json& c = detail::array_member(j, "candidates", "");
    std::vector<bool> seen(f.sna.candidates.size(), false);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::string where = "/candidates/" + std::to_string(i);
      if (!c[i].is_number_integer()) parse_fail(where, "expected a candidate index");
      const auto idx = c[i].get<std::int64_t>();
      if (idx < 0 || idx >= static_cast<std::int64_t>(seen.size())) parse_fail(where, "candidate index out of range");
      if (seen[idx]) parse_fail(where, "duplicate candidate");
      seen[idx] = true;
      s.candidates.push_back(static_cast<int>(idx));
    }
    std::sort(s.candidates.begin(), s.candidates.end());
  }
  return s;
}

}  // namespace srcloc
