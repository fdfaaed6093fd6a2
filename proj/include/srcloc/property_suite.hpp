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

// Seeded exhaustive property checks over small random instances. Each
// property is counted per instance; a failing instance is written out in the
// instance file format when an artifact directory is given.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srcloc/biset.hpp"
#include "srcloc/biset_cover.hpp"
#include "srcloc/flow.hpp"
#include "srcloc/generators.hpp"
#include "srcloc/io.hpp"
#include "srcloc/oracle.hpp"
#include "srcloc/submodular.hpp"

namespace srcloc {

// f(G', s, v) for the quadruple checks; the default is lambda^q.
using ConnectivityFn = std::function<Count(const Graph&, const std::vector<Count>&, Node, Node)>;

struct PropertySuiteOptions {
  std::uint64_t seed = 1;
  int instances = 500;
  int min_nodes = 3;
  int max_nodes = 5;
  int max_candidates = 6;
  std::optional<std::string> artifact_dir;
  ConnectivityFn connectivity;  // test hook for mutants
};

struct PropertyCount {
  std::int64_t checked = 0;
  std::int64_t failed = 0;
  bool informational = false;  // reported but never fails the run
};

struct PropertyReport {
  std::map<std::string, PropertyCount> properties;
  std::vector<std::string> artifacts;
  std::vector<std::string> warnings;
  std::vector<std::string> failures;  // "<property> seed <s>"

  bool ok() const {
    for (const auto& [name, c] : properties) {
      if (!c.informational && c.failed > 0) return false;
    }
    return true;
  }
};

namespace detail {

struct SuiteContext {
  const PropertySuiteOptions& options;
  PropertyReport& report;
  std::uint64_t seed = 0;

  void record(const std::string& name, bool passed, const InstanceFile* witness, bool informational = false) {
    PropertyCount& c = report.properties[name];
    c.informational = informational;
    ++c.checked;
    if (passed) return;
    ++c.failed;
    if (informational) return;
    report.failures.push_back(name + " seed " + std::to_string(seed));
    if (options.artifact_dir && witness) {
      std::filesystem::create_directories(*options.artifact_dir);
      const std::string path = *options.artifact_dir + "/" + name + "-seed" + std::to_string(seed) + ".json";
      write_file(path, serialize_instance(*witness));
      report.artifacts.push_back(path);
    }
  }
};

inline Count default_connectivity(const Graph& g, const std::vector<Count>& q, Node s, Node v) {
  return pair_connectivity(g, q, s, v);
}

// f over all subsets of F for one demand pair.
inline std::vector<Count> subset_table(const SnaInstance& inst, const ConnectivityFn& f, Node s, Node v) {
  const int m = static_cast<int>(inst.candidates.size());
  std::vector<Count> table(std::size_t{1} << m);
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = f(inst.graph.plus(inst.edges_of(mask_members(mask))), inst.capacity, s, v);
  }
  return table;
}

inline bool quadruple_ok(const std::vector<Count>& t, int m) {
  for (std::uint64_t a = 0; a < t.size(); ++a) {
    for (int i = 0; i < m; ++i) {
      if ((a >> i) & 1U) continue;
      for (int j = i + 1; j < m; ++j) {
        if ((a >> j) & 1U) continue;
        const std::uint64_t ei = std::uint64_t{1} << i;
        const std::uint64_t ej = std::uint64_t{1} << j;
        if (t[a | ei] + t[a | ej] < t[a] + t[a | ei | ej]) return false;
      }
    }
  }
  return true;
}

inline bool monotone_ok(const std::vector<Count>& t, int m) {
  for (std::uint64_t a = 0; a < t.size(); ++a) {
    for (int i = 0; i < m; ++i) {
      if (!((a >> i) & 1U) && t[a | (std::uint64_t{1} << i)] < t[a]) return false;
    }
  }
  return true;
}

inline bool unit_step_ok(const std::vector<Count>& t, int m) {
  for (std::uint64_t a = 0; a < t.size(); ++a) {
    for (int i = 0; i < m; ++i) {
      if (!((a >> i) & 1U) && t[a | (std::uint64_t{1} << i)] > t[a] + 1) return false;
    }
  }
  return true;
}

// For every I and every base I0 (as G + I0): J = {e in I : f(I0 + e) = f(I0) + 1}
// has |J| >= f(I0 + I) - f(I0).
inline bool lemma3_ok(const std::vector<Count>& t, int m) {
  for (std::uint64_t base = 0; base < t.size(); ++base) {
    for (std::uint64_t add = 0; add < t.size(); ++add) {
      if (add & base) continue;
      const Count h = t[base | add] - t[base];
      Count j = 0;
      for (int i = 0; i < m; ++i) {
        if (((add >> i) & 1U) && t[base | (std::uint64_t{1} << i)] == t[base] + 1) ++j;
      }
      if (j < h) return false;
    }
  }
  return true;
}

// The star pushforward g'(S) = g(F_S) with g the capped progress sum.
inline bool pushforward_ok(const SnaInstance& inst, Node a, const std::vector<std::vector<Count>>& tables) {
  const int n = inst.node_count();
  const auto g_of_nodes = [&](std::uint64_t nodes) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
      const Node z = inst.candidates[i].other(a);
      if ((nodes >> z) & 1U) mask |= std::uint64_t{1} << i;
    }
    Count total = 0;
    for (std::size_t d = 0; d < inst.demands.size(); ++d) total += std::min(inst.demands[d].r, tables[d][mask]);
    return total;
  };
  std::vector<Count> t(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < t.size(); ++s) t[s] = g_of_nodes(s);
  return quadruple_ok(t, n) && monotone_ok(t, n);
}

// Biset cut submodularity for a random edge multiset J.
inline bool cut_submodular_ok(int n, std::span<const Edge> edges, bool directed) {
  std::vector<Biset> all;
  for_each_biset(n, [&](const Biset& b) { all.push_back(b); });
  for (const Biset& x : all) {
    for (const Biset& y : all) {
      if (delta_count(edges, intersect(x, y), directed) + delta_count(edges, unite(x, y), directed) >
          delta_count(edges, x, directed) + delta_count(edges, y, directed)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

inline PropertyReport run_property_suite(const PropertySuiteOptions& options) {
  PropertyReport report;
  if (options.instances <= 0) {
    report.warnings.push_back("no instances requested; the suite passes vacuously");
    return report;
  }
  const ConnectivityFn f = options.connectivity ? options.connectivity : ConnectivityFn(detail::default_connectivity);
  detail::SuiteContext ctx{options, report};
  for (int i = 0; i < options.instances; ++i) {
    ctx.seed = options.seed + static_cast<std::uint64_t>(i);
    Rng rng(ctx.seed);
    const int n = uniform_int(rng, options.min_nodes, options.max_nodes);

    // Directed a-based instance with a consistently oriented star.
    SnaParams params;
    params.nodes = n;
    params.base_edges = uniform_int(rng, 0, 2 * n);
    params.candidates = uniform_int(rng, 1, options.max_candidates);
    params.demands = uniform_int(rng, 1, 3);
    params.rooted = coin(rng, 0.5);
    params.max_requirement = 3;
    params.max_capacity = 2;
    params.directed = true;
    const SnaInstance directed = random_abased_sna(rng, params);
    const InstanceFile directed_file = make_sna_file(directed, {"property-suite", ctx.seed, std::nullopt});
    const int m = static_cast<int>(directed.candidates.size());
    bool sub = true;
    bool mono = true;
    bool unit = true;
    bool lemma3 = true;
    std::vector<std::vector<Count>> tables;
    for (const Demand& d : directed.demands) {
      tables.push_back(detail::subset_table(directed, f, d.s, d.v));
      sub = sub && detail::quadruple_ok(tables.back(), m);
      mono = mono && detail::monotone_ok(tables.back(), m);
      unit = unit && detail::unit_step_ok(tables.back(), m);
      lemma3 = lemma3 && detail::lemma3_ok(tables.back(), m);
    }
    ctx.record("submodularity", sub, &directed_file);
    ctx.record("monotonicity", mono, &directed_file);
    ctx.record("unit_step", unit, &directed_file);
    ctx.record("lemma3_witness", lemma3, &directed_file);
    if (const auto a = directed.star_center(); a && !directed.candidates.empty()) {
      ctx.record("pushforward", detail::pushforward_ok(directed, *a, tables), &directed_file);
    }

    // Same shape with a mixed star: expected to fail sometimes.
    params.orientation = StarOrientation::kMixed;
    const SnaInstance mixed = random_abased_sna(rng, params);
    bool mixed_ok = true;
    for (const Demand& d : mixed.demands) {
      mixed_ok = mixed_ok && detail::quadruple_ok(detail::subset_table(mixed, f, d.s, d.v), static_cast<int>(mixed.candidates.size()));
    }
    ctx.record("mixed_star_submodularity", mixed_ok, nullptr, true);

    // Undirected stage families.
    params.orientation = StarOrientation::kUniform;
    params.directed = false;
    params.root_is_center = params.rooted && coin(rng, 0.5);
    const SnaInstance undirected = random_abased_sna(rng, params);
    std::vector<int> ids;
    for (std::size_t k = 0; k < undirected.demands.size(); ++k) {
      const Demand& d = undirected.demands[k];
      if (pair_connectivity(undirected.graph, undirected.capacity, d.s, d.v, d.r) < d.r) ids.push_back(static_cast<int>(k));
    }
    const DsnaStage stage = make_dsna(undirected, std::vector<int>{}, ids);
    const SnaInstance& dsna = stage.instance;
    const InstanceFile stage_file = make_sna_file(dsna, {"property-suite", ctx.seed, std::nullopt}, InstanceKind::kDsna);
    const BisetFamily family = tight_bisets(dsna);
    ctx.record("biset_d_uncrossable", is_d_uncrossable(family, dsna.demand_edges(), false), &stage_file);
    ctx.record("biset_symmetric", is_symmetric(family, n), &stage_file);
    const BisetFamily minimal = minimal_members(family);
    ctx.record("biset_fast_equals_enumerated", minimal == minimal_tight_bisets_fast(dsna), &stage_file);
    const int gamma = max_boundary(minimal);
    ctx.record("biset_degree_bound", max_inner_degree(minimal, n) <= (4 * gamma + 1) * (4 * gamma + 1), &stage_file);
    if (const auto root = dsna.root(); root && !dsna.demands.empty()) {
      const BisetFamily rooted = rooted_part(family, *root);
      NodeSet leaves;
      for (const Demand& d : dsna.demands) leaves.insert(d.edge().other(*root));
      ctx.record("biset_t_uncrossable", is_t_uncrossable(rooted, leaves), &stage_file);
      const BisetFamily rmin = minimal_members(rooted);
      ctx.record("biset_rooted_fast_equals_enumerated", rmin == minimal_tight_bisets_fast(dsna, root), &stage_file);
      ctx.record("biset_rooted_degree_bound", max_inner_degree(rmin, n) <= 2 * max_boundary(rmin) + 1, &stage_file);
    }
    std::vector<Edge> j;
    const int jm = uniform_int(rng, 0, 4);
    for (int e = 0; e < jm && n >= 2; ++e) {
      Node u = uniform_int(rng, 0, n - 1);
      Node v = uniform_int(rng, 0, n - 2);
      if (v >= u) ++v;
      j.push_back({u, v});
    }
    if (n <= 4) ctx.record("biset_cut_submodular", detail::cut_submodular_ok(n, j, coin(rng, 0.5)), nullptr);
  }
  return report;
}

inline Json property_report_json(const PropertyReport& r) {
  Json j;
  j["ok"] = r.ok();
  Json props = Json::object();
  for (const auto& [name, c] : r.properties) {
    Json p;
    p["checked"] = c.checked;
    p["failed"] = c.failed;
    p["informational"] = c.informational;
    props[name] = p;
  }
  j["properties"] = props;
  j["failures"] = r.failures;
  j["artifacts"] = r.artifacts;
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace srcloc
