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

// Command-line verbs: gen, solve, verify, oracle, ratio-report and
// property-suite. Exit codes: 0 ok, 1 bound violation or other failure,
// 2 infeasible, 3 incompatible, 4 parse error, 5 oracle cap exceeded.

#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "srcloc/biset_cover.hpp"
#include "srcloc/generators.hpp"
#include "srcloc/io.hpp"
#include "srcloc/oracle.hpp"
#include "srcloc/property_suite.hpp"
#include "srcloc/reductions.hpp"
#include "srcloc/submodular.hpp"

namespace srcloc {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kInfeasible = 2;
inline constexpr int kIncompatible = 3;
inline constexpr int kParse = 4;
inline constexpr int kCap = 5;
}  // namespace exit_code

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::kInfeasible:
      return exit_code::kInfeasible;
    case ErrorKind::kIncompatible:
    case ErrorKind::kPrecondition:
      return exit_code::kIncompatible;
    case ErrorKind::kParse:
      return exit_code::kParse;
    case ErrorKind::kCapExceeded:
      return exit_code::kCap;
    case ErrorKind::kInvalidArgument:
      return exit_code::kFailure;
  }
  return exit_code::kFailure;
}

// ---------------------------------------------------------------------------
// Generation.

struct GenOptions {
  std::string kind = "ssl";  // ssl | ssl-flow-bounds | sna | dsna | setcover
  std::uint64_t seed = 1;
  int nodes = 6;
  std::optional<int> edges;  // kind default when unset
  bool undirected = false;
  int max_demand = 2;
  int max_cost = 9;
  std::string pq_mode = "general";
  bool fractional = false;
  std::string cost_mode = "edge";
  int candidates = 6;
  int demands = 3;
  bool unrooted = false;
  bool root_is_center = false;
  int max_capacity = 1;
  std::string orientation = "uniform";
  int sets = 3;
  int elements = 3;
  std::optional<int> copies;
};

inline CostMode parse_cost_mode(const std::string& s) {
  if (s == "edge") return CostMode::kEdge;
  if (s == "node") return CostMode::kNode;
  throw Error(ErrorKind::kInvalidArgument, "cost mode must be edge or node, got '" + s + "'");
}

inline StarOrientation parse_star_orientation(const std::string& s) {
  if (s == "out") return StarOrientation::kOut;
  if (s == "in") return StarOrientation::kIn;
  if (s == "uniform") return StarOrientation::kUniform;
  if (s == "mixed") return StarOrientation::kMixed;
  throw Error(ErrorKind::kInvalidArgument, "orientation must be out, in, uniform or mixed, got '" + s + "'");
}

inline InstanceFile generate(const GenOptions& o) {
  Rng rng(o.seed);
  Metadata meta;
  meta.seed = o.seed;
  if (o.kind == "ssl" || o.kind == "ssl-flow-bounds") {
    SslParams p;
    p.nodes = o.nodes;
    p.edges = o.edges.value_or(p.edges);
    p.directed = !o.undirected;
    p.max_demand = o.max_demand;
    p.max_cost = o.max_cost;
    p.mode = parse_pq_mode(o.pq_mode);
    p.fractional_costs = o.fractional;
    if (p.nodes < 1 || p.edges < 0 || p.max_demand < 0) throw Error(ErrorKind::kInvalidArgument, "invalid SSL generator parameters");
    if (o.kind == "ssl") {
      meta.generator = "ssl";
      InstanceFile f = make_ssl_file(random_ssl(rng, p), meta);
      return f;
    }
    meta.generator = "ssl-flow-bounds";
    InstanceFile f = make_ssl_file(random_ssl_flow_bounds(rng, p), meta);
    f.kind = InstanceKind::kSslFlowBounds;
    return f;
  }
  if (o.kind == "sna" || o.kind == "dsna") {
    SnaParams p;
    p.nodes = o.nodes;
    p.base_edges = o.edges.value_or(p.base_edges);
    p.candidates = o.candidates;
    p.demands = o.demands;
    p.max_requirement = o.max_demand;
    p.max_cost = o.max_cost;
    p.directed = !o.undirected;
    p.rooted = !o.unrooted;
    p.root_is_center = o.root_is_center;
    p.max_capacity = o.max_capacity;
    p.mode = parse_cost_mode(o.cost_mode);
    p.fractional_costs = o.fractional;
    p.orientation = parse_star_orientation(o.orientation);
    if (p.nodes < 2 || p.candidates < 0 || p.demands < 0 || p.max_requirement < 1 || p.max_capacity < 1) {
      throw Error(ErrorKind::kInvalidArgument, "invalid SNA generator parameters");
    }
    meta.generator = o.kind;
    SnaInstance inst = random_abased_sna(rng, p);
    if (o.kind == "sna") return make_sna_file(std::move(inst), meta);
    std::vector<int> ids;
    for (std::size_t i = 0; i < inst.demands.size(); ++i) {
      const Demand& d = inst.demands[i];
      if (pair_connectivity(inst.graph, inst.capacity, d.s, d.v, d.r) < d.r) ids.push_back(static_cast<int>(i));
    }
    return make_sna_file(make_dsna(inst, std::vector<int>{}, ids).instance, meta, InstanceKind::kDsna);
  }
  if (o.kind == "setcover") {
    if (o.sets < 1 || o.elements < 1) throw Error(ErrorKind::kInvalidArgument, "setcover needs --sets and --elements >= 1");
    if (o.copies && *o.copies < 1) throw Error(ErrorKind::kInvalidArgument, "setcover needs --copies >= 1");
    const SetCoverSystem sys = random_set_system(rng, o.sets, o.elements);
    const SetCoverGadget g = setcover_gadget(sys, o.copies, parse_cost_mode(o.cost_mode));
    meta.generator = "setcover sets=" + std::to_string(o.sets) + " elements=" + std::to_string(o.elements) +
                     " copies=" + std::to_string(g.copies);
    if (g.known_optimum) meta.known_optimum = Cost(*g.known_optimum);
    return make_sna_file(g.instance, meta);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown instance kind '" + o.kind + "'");
}

// ---------------------------------------------------------------------------
// Certificates.

inline Json labels_json(const InstanceFile& f, std::span<const Node> nodes) {
  Json j = Json::array();
  for (Node v : nodes) j.push_back(f.labels.at(v));
  return j;
}

inline Json biset_json(const InstanceFile& f, const Biset& b) {
  Json j;
  j["inner"] = labels_json(f, b.inner().members());
  j["outer"] = labels_json(f, b.outer().members());
  return j;
}

struct Verdict {
  bool feasible = true;
  Json certificate;
};

// Independent recheck of a solution by flow.
inline Verdict verify_solution(const InstanceFile& f, const SolutionFile& s) {
  Verdict out;
  Json rows = Json::array();
  if (f.is_ssl()) {
    const SslInstance& inst = f.ssl;
    for (Node v = 0; v < inst.node_count(); ++v) {
      const NodeAttrs& a = inst.nodes[v];
      const bool bounded = f.kind == InstanceKind::kSslFlowBounds && a.flow_cost_bound.is_finite();
      if (a.demand == 0 && !bounded) continue;
      Json row;
      row["v"] = f.labels[v];
      row["d"] = a.demand;
      const Count got = ssl_connectivity(inst, s.sources, v, a.demand);
      row["achieved"] = count_to_json(std::min(got, a.demand));
      bool ok = got >= a.demand;
      if (bounded) {
        const Cost m = ssl_mu(inst, s.sources, v);
        row["b"] = cost_to_json(a.flow_cost_bound);
        row["mu"] = cost_to_json(m);
        ok = ok && m <= a.flow_cost_bound;
      }
      row["ok"] = ok;
      out.feasible = out.feasible && ok;
      rows.push_back(row);
    }
    out.certificate["nodes"] = rows;
    return out;
  }
  const SnaInstance& inst = f.sna;
  const Graph augmented = inst.graph.plus(inst.edges_of(s.candidates));
  for (const Demand& d : inst.demands) {
    Json row;
    row["s"] = f.labels[d.s];
    row["v"] = f.labels[d.v];
    row["r"] = d.r;
    const Count got = demand_connectivity(inst, augmented, d, d.r);
    row["achieved"] = count_to_json(std::min(got, d.r));
    row["ok"] = got >= d.r;
    out.feasible = out.feasible && got >= d.r;
    rows.push_back(row);
  }
  out.certificate["demands"] = rows;
  const MengerVerdict menger = menger_feasible(inst, s.candidates);
  if (menger.feasible != out.feasible) throw std::logic_error("flow and biset verdicts disagree");
  if (menger.witness) out.certificate["violated_biset"] = biset_json(f, *menger.witness);
  return out;
}

// ---------------------------------------------------------------------------
// Solving.

struct SolveOptions {
  std::string algorithm = "auto";  // auto | greedy-sna | seq-biset | ssl | ssl-flow-bounds
  bool allow_undirected = false;   // greedy-sna on undirected inputs
  bool oracle = false;
  OracleCaps caps;
};

struct SolveOutcome {
  int exit_code = exit_code::kOk;
  std::string status;  // solved | infeasible | stalled | incompatible | error
  Json report;
  std::optional<SolutionFile> solution;
  std::optional<Cost> cost;
  std::optional<Cost> optimum;
  std::optional<Rational> bound;
  std::optional<bool> within_bound;
  std::string message;
};

inline std::string resolve_algorithm(const InstanceFile& f, const std::string& algorithm) {
  if (algorithm != "auto") return algorithm;
  switch (f.kind) {
    case InstanceKind::kSslFlowBounds:
      return "ssl-flow-bounds";
    case InstanceKind::kSsl:
      return "ssl";
    case InstanceKind::kSna:
    case InstanceKind::kDsna:
      return f.directed() ? "greedy-sna" : "seq-biset";
  }
  return algorithm;
}

inline Json greedy_trace_json(const GreedyTrace& t) {
  Json j;
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json st;
    st["element"] = s.element;
    st["gain"] = cost_to_json(s.gain);
    st["cost"] = cost_to_json(s.cost);
    steps.push_back(st);
  }
  j["steps"] = steps;
  j["initial_value"] = cost_to_json(t.initial_value);
  j["final_value"] = cost_to_json(t.final_value);
  j["alpha"] = cost_to_json(t.alpha);
  j["wolsey_bound"] = t.bound ? Json(rational_to_string(*t.bound)) : Json(nullptr);
  return j;
}

inline Json seq_trace_json(const SeqBisetSolution& s) {
  Json j;
  j["center"] = s.center;
  j["rooted_at_center"] = s.rooted;
  j["k"] = s.k;
  j["p_max"] = s.p_max;
  Json stages = Json::array();
  for (const auto& st : s.stages) {
    Json x;
    x["l"] = st.index;
    x["demands"] = st.demands;
    x["chosen"] = st.chosen;
    x["cost"] = cost_to_json(st.cost);
    x["gamma"] = st.gamma;
    x["degree"] = st.degree;
    x["degree_bound"] = st.degree_bound;
    x["family_degree_bound"] = st.family_degree_bound;
    x["uncrossable"] = st.uncrossable;
    x["enumeration_checked"] = st.enumeration_checked;
    stages.push_back(x);
  }
  j["stages"] = stages;
  return j;
}

inline std::optional<Cost> oracle_optimum(const InstanceFile& f, const OracleCaps& caps) {
  const ExactResult r = f.is_ssl() ? exact_ssl(f.ssl, caps) : exact_sna(f.sna, caps);
  if (!r.feasible) return std::nullopt;
  return r.optimum;
}

// Runs one solver, re-verifies by flow and fills in the report.
inline SolveOutcome solve_instance(const InstanceFile& f, const SolveOptions& o) {
  SolveOutcome out;
  const std::string algo = resolve_algorithm(f, o.algorithm);
  Json& r = out.report;
  r["solver"] = algo;
  r["instance_sha256"] = instance_hash(f);
  r["kind"] = instance_kind_name(f.kind);
  SolutionFile sol;
  sol.instance_sha256 = r["instance_sha256"].get<std::string>();
  sol.kind = f.kind;
  bool solved = false;
  Json witness;
  std::string formula;
  Json trace;

  const auto incompatible = [&](const std::string& why) { throw Error(ErrorKind::kIncompatible, algo + ": " + why); };
  if (algo == "greedy-sna") {
    if (f.is_ssl()) incompatible("needs an SNA instance");
    if (!f.directed() && !o.allow_undirected) incompatible("undirected input needs --allow-undirected");
    const SnaSolution s = solve_abased_sna(f.sna);
    solved = s.feasible;
    out.status = s.feasible ? "solved" : (s.stalled ? "stalled" : "infeasible");
    if (s.witness) {
      const Demand& d = f.sna.demands[s.witness->demand];
      witness["demand"] = s.witness->demand;
      witness["s"] = f.labels[d.s];
      witness["v"] = f.labels[d.v];
      witness["r"] = d.r;
      witness["achieved_with_all_candidates"] = s.witness->achieved;
    }
    sol.candidates = s.chosen;
    out.bound = s.theorem_bound * s.factor;
    formula = f.sna.mode == CostMode::kEdge ? "H(|D|)" : "H(min{r(D), |D| p_max})";
    if (s.factor != 1) formula = "2 " + formula;
    trace = greedy_trace_json(s.trace);
    if (f.sna.mode == CostMode::kNode) trace["nodes"] = labels_json(f, s.nodes);
  } else if (algo == "seq-biset") {
    if (f.directed()) incompatible("needs an undirected instance");
    if (f.is_ssl()) {
      if (f.kind != InstanceKind::kSsl) incompatible("flow-cost bounds are not supported");
      const SslUndirectedSolution s = solve_ssl_undirected(f.ssl);
      solved = s.feasible;
      out.status = s.feasible ? "solved" : "infeasible";
      if (s.witness) witness["v"] = f.labels[*s.witness];
      sol.sources = s.sources;
      out.bound = s.sna.theorem_bound;
      trace = seq_trace_json(s.sna);
    } else {
      const SeqBisetSolution s = solve_abased_sna_undirected(f.sna);
      solved = s.feasible;
      out.status = s.feasible ? "solved" : "infeasible";
      if (s.witness) {
        const Demand& d = f.sna.demands[s.witness->demand];
        witness["demand"] = s.witness->demand;
        witness["s"] = f.labels[d.s];
        witness["v"] = f.labels[d.v];
        witness["r"] = d.r;
        witness["achieved_with_all_candidates"] = s.witness->achieved;
      }
      sol.candidates = s.chosen;
      out.bound = s.theorem_bound;
      trace = seq_trace_json(s);
    }
    formula = f.is_ssl() || f.sna.mode == CostMode::kNode ? "sum_l H(Delta_l) min{p_max/(k-l+1), 1}"
                                                          : "sum_l H(Delta_l)/(k-l+1)";
  } else if (algo == "ssl") {
    if (f.kind != InstanceKind::kSsl) incompatible("needs an ssl instance");
    if (f.directed()) {
      const SslSolution s = solve_ssl(f.ssl);
      solved = s.feasible;
      out.status = s.feasible ? "solved" : (s.sna.stalled ? "stalled" : "infeasible");
      if (s.witness) witness["v"] = f.labels[*s.witness];
      sol.sources = s.sources;
      out.bound = s.sna.theorem_bound;
      formula = "H(min{r(D), |D| p_max})";
      trace = greedy_trace_json(s.sna.trace);
    } else {
      const SslUndirectedSolution s = solve_ssl_undirected(f.ssl);
      solved = s.feasible;
      out.status = s.feasible ? "solved" : "infeasible";
      if (s.witness) witness["v"] = f.labels[*s.witness];
      sol.sources = s.sources;
      out.bound = s.sna.theorem_bound;
      formula = "sum_l H(Delta_l) min{p_max/(k-l+1), 1}";
      trace = seq_trace_json(s.sna);
    }
  } else if (algo == "ssl-flow-bounds") {
    if (!f.is_ssl()) incompatible("needs an SSL instance");
    const FlowBoundsSolution s = solve_ssl_flow_bounds(f.ssl);
    solved = s.feasible;
    out.status = s.feasible ? "solved" : "infeasible";
    if (s.demand_witness) witness["v"] = f.labels[*s.demand_witness], witness["reason"] = "demand";
    if (s.budget_witness) witness["v"] = f.labels[*s.budget_witness], witness["reason"] = "flow-cost bound";
    if (!s.demand_witness && !s.budget_witness && !s.feasible) {
      witness["reason"] = double_cover_status_name(s.trace.status);
    }
    sol.sources = s.sources;
    out.bound = s.theorem_bound;
    formula = "H(d(V)) + H(L c(E))";
    trace["scale"] = s.scale.str();
    trace["scaled_edge_cost"] = s.scaled_edge_cost;
    trace["status"] = double_cover_status_name(s.trace.status);
    trace["phase1"] = greedy_trace_json(s.trace.phase1);
    trace["phase2"] = greedy_trace_json(s.trace.phase2);
    trace["wolsey_bound"] = s.trace.bound ? Json(rational_to_string(*s.trace.bound)) : Json(nullptr);
  } else {
    throw Error(ErrorKind::kInvalidArgument, "unknown algorithm '" + algo + "'");
  }
  r["status"] = out.status;

  if (solved) {
    const Verdict v = verify_solution(f, sol);
    if (!v.feasible) throw std::logic_error(algo + " returned a solution that fails verification");
    out.cost = f.is_ssl() ? f.ssl.cost_of(sol.sources) : f.sna.cost_of(sol.candidates);
    Json s;
    if (f.is_ssl()) {
      s["sources"] = labels_json(f, sol.sources);
    } else {
      s["candidates"] = sol.candidates;
    }
    r["feasible"] = true;
    r["solution"] = s;
    r["cost"] = cost_to_json(*out.cost);
    r["certificate"] = v.certificate;
    out.solution = sol;
  } else {
    r["feasible"] = false;
    r["witness"] = witness;
    out.exit_code = out.status == "stalled" ? exit_code::kFailure : exit_code::kInfeasible;
  }
  Json b;
  b["formula"] = formula;
  b["value"] = out.bound ? Json(rational_to_string(*out.bound)) : Json(nullptr);
  r["bound"] = b;

  if (f.metadata.known_optimum) {
    out.optimum = f.metadata.known_optimum;
    r["oracle_optimum"] = cost_to_json(*out.optimum);
    r["optimum_source"] = "metadata";
  } else if (o.oracle) {
    out.optimum = oracle_optimum(f, o.caps);
    r["oracle_optimum"] = out.optimum ? cost_to_json(*out.optimum) : Json(nullptr);
    r["optimum_source"] = "oracle";
  }
  if (out.cost && out.optimum && out.bound) {
    const Cost& c = *out.cost;
    const Cost& opt = *out.optimum;
    if (opt == Cost(0)) {
      r["ratio"] = c == Cost(0) ? Json(1) : Json("inf");
      out.within_bound = c == Cost(0);
    } else {
      r["ratio"] = cost_to_json(Cost(c.value() / opt.value()));
      out.within_bound = c <= opt * *out.bound;
    }
    r["within_bound"] = *out.within_bound;
    if (!*out.within_bound) out.exit_code = exit_code::kFailure;
  }
  r["trace"] = trace;
  return out;
}

// ---------------------------------------------------------------------------
// Ratio report.

struct RatioRow {
  std::string file;
  std::string status;
  std::string cost = "-";
  std::string optimum = "-";
  std::string ratio = "-";
  std::string bound = "-";
  bool violation = false;
  bool cap_exceeded = false;
};

inline std::vector<RatioRow> ratio_report(const std::string& dir, const SolveOptions& o, int jobs) {
  std::vector<std::string> files;
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::kInvalidArgument, dir + " is not a directory");
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());
  std::vector<RatioRow> rows(files.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      RatioRow& row = rows[i];
      row.file = std::filesystem::path(files[i]).filename().string();
      try {
        const InstanceFile f = load_instance(files[i]);
        SolveOptions opts = o;
        opts.oracle = true;
        const SolveOutcome s = solve_instance(f, opts);
        row.status = s.status;
        if (s.cost) row.cost = s.cost->str();
        if (s.optimum) row.optimum = s.optimum->str();
        if (s.bound) {
          std::ostringstream b;
          b << std::fixed << std::setprecision(4) << to_double(*s.bound);
          row.bound = b.str();
        }
        if (s.report.contains("ratio")) {
          const Json& ratio = s.report["ratio"];
          if (ratio.is_string() && ratio.get<std::string>() == "inf") {
            row.ratio = "inf";
          } else if (s.optimum->value() == 0) {
            row.ratio = "1.0000";
          } else {
            std::ostringstream q;
            q << std::fixed << std::setprecision(4) << to_double(s.cost->value() / s.optimum->value());
            row.ratio = q.str();
          }
        }
        row.violation = s.within_bound.has_value() && !*s.within_bound;
      } catch (const Error& e) {
        row.status = e.kind() == ErrorKind::kCapExceeded ? "cap-exceeded" : error_kind_name(e.kind());
        row.cap_exceeded = e.kind() == ErrorKind::kCapExceeded;
      } catch (const std::exception&) {
        row.status = "internal-error";
        row.violation = true;  // never let a crash pass as a clean report
      }
    }
  };
  std::vector<std::jthread> pool;
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));
  for (int t = 0; t < n; ++t) pool.emplace_back(work);
  pool.clear();
  return rows;
}

inline std::string ratio_table(const std::vector<RatioRow>& rows) {
  std::size_t width = 6;
  for (const auto& r : rows) width = std::max(width, r.file.size() + 2);
  const int w = static_cast<int>(width);
  std::ostringstream out;
  out << std::left << std::setw(w) << "file" << std::setw(14) << "status" << std::setw(10) << "cost" << std::setw(10)
      << "optimum" << std::setw(12) << "ratio" << std::setw(12) << "bound" << "flag\n";
  int solved = 0;
  int violations = 0;
  int capped = 0;
  for (const auto& r : rows) {
    out << std::setw(w) << r.file << std::setw(14) << r.status << std::setw(10) << r.cost << std::setw(10) << r.optimum
        << std::setw(12) << r.ratio << std::setw(12) << r.bound << (r.violation ? "EXCEEDS-BOUND" : "") << "\n";
    solved += r.status == "solved" ? 1 : 0;
    violations += r.violation ? 1 : 0;
    capped += r.cap_exceeded ? 1 : 0;
  }
  out << "instances " << rows.size() << ", solved " << solved << ", bound violations " << violations
      << ", cap exceeded " << capped << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Entry point.

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Source location and network augmentation solvers"};
  app.require_subcommand(1);

  GenOptions gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random instance");
  gen_cmd->add_option("--kind", gen.kind, "ssl | ssl-flow-bounds | sna | dsna | setcover");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--nodes", gen.nodes);
  gen_cmd->add_option("--edges", gen.edges, "edges of G");
  gen_cmd->add_flag("--undirected", gen.undirected);
  gen_cmd->add_option("--max-demand", gen.max_demand, "largest d_v or r_sv");
  gen_cmd->add_option("--max-cost", gen.max_cost);
  gen_cmd->add_option("--pq-mode", gen.pq_mode, "lambda | kappa_hat | kappa_prime | general");
  gen_cmd->add_flag("--fractional", gen.fractional);
  gen_cmd->add_option("--cost-mode", gen.cost_mode, "edge | node");
  gen_cmd->add_option("--candidates", gen.candidates);
  gen_cmd->add_option("--demands", gen.demands);
  gen_cmd->add_flag("--unrooted", gen.unrooted);
  gen_cmd->add_flag("--root-is-center", gen.root_is_center);
  gen_cmd->add_option("--max-capacity", gen.max_capacity);
  gen_cmd->add_option("--orientation", gen.orientation, "star edges: out | in | uniform | mixed");
  gen_cmd->add_option("--sets", gen.sets);
  gen_cmd->add_option("--elements", gen.elements);
  gen_cmd->add_option("--copies", gen.copies, "gadget copies M (default (|A|+|B|)^2)");
  gen_cmd->add_option("-o,--output", gen_out, "write here instead of stdout");

  SolveOptions solve;
  std::string solve_file;
  std::string solve_out;
  std::string solution_out;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and print a report");
  solve_cmd->add_option("instance", solve_file)->required();
  solve_cmd->add_option("-a,--algorithm", solve.algorithm, "auto | greedy-sna | seq-biset | ssl | ssl-flow-bounds");
  solve_cmd->add_flag("--allow-undirected", solve.allow_undirected, "run greedy-sna on undirected input (factor 2)");
  solve_cmd->add_flag("--oracle", solve.oracle, "compute the exact optimum");
  solve_cmd->add_option("--cap-nodes", solve.caps.ssl_nodes, "oracle cap on SSL nodes");
  solve_cmd->add_option("--cap-candidates", solve.caps.sna_candidates, "oracle cap on SNA candidates");
  solve_cmd->add_option("-o,--output", solve_out, "write the report here");
  solve_cmd->add_option("--solution-out", solution_out, "write the solution file here");

  std::string verify_instance;
  std::string verify_solution_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check a solution file against an instance");
  verify_cmd->add_option("instance", verify_instance)->required();
  verify_cmd->add_option("solution", verify_solution_path)->required();

  std::string oracle_file;
  OracleCaps oracle_caps;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum by enumeration");
  oracle_cmd->add_option("instance", oracle_file)->required();
  oracle_cmd->add_option("--cap-nodes", oracle_caps.ssl_nodes);
  oracle_cmd->add_option("--cap-candidates", oracle_caps.sna_candidates);

  std::string ratio_dir;
  SolveOptions ratio_opts;
  int jobs = 2;
  auto* ratio_cmd = app.add_subcommand("ratio-report", "Realized ratios over a directory of instances");
  ratio_cmd->add_option("directory", ratio_dir)->required();
  ratio_cmd->add_option("-a,--algorithm", ratio_opts.algorithm);
  ratio_cmd->add_flag("--allow-undirected", ratio_opts.allow_undirected);
  ratio_cmd->add_option("-j,--jobs", jobs, "worker threads");
  ratio_cmd->add_option("--cap-nodes", ratio_opts.caps.ssl_nodes);
  ratio_cmd->add_option("--cap-candidates", ratio_opts.caps.sna_candidates);

  PropertySuiteOptions suite;
  std::string artifacts;
  auto* suite_cmd = app.add_subcommand("property-suite", "Seeded exhaustive property checks");
  suite_cmd->add_option("--seed", suite.seed);
  suite_cmd->add_option("--instances", suite.instances);
  suite_cmd->add_option("--max-nodes", suite.max_nodes);
  suite_cmd->add_option("--artifacts", artifacts, "directory for counterexample files");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? exit_code::kOk : exit_code::kFailure;
  }

  const auto emit = [&](const std::string& text, const std::string& path) {
    if (path.empty()) {
      out << text;
    } else {
      write_file(path, text);
    }
  };
  try {
    if (*gen_cmd) {
      emit(serialize_instance(generate(gen)), gen_out);
      return exit_code::kOk;
    }
    if (*solve_cmd) {
      const InstanceFile f = load_instance(solve_file);
      const SolveOutcome s = solve_instance(f, solve);
      emit(dump_canonical(s.report), solve_out);
      if (s.solution && !solution_out.empty()) write_file(solution_out, serialize_solution(*s.solution, f));
      return s.exit_code;
    }
    if (*verify_cmd) {
      const InstanceFile f = load_instance(verify_instance);
      const SolutionFile s = parse_solution(read_file(verify_solution_path), f);
      const Verdict v = verify_solution(f, s);
      Json j;
      j["instance_sha256"] = s.instance_sha256;
      j["feasible"] = v.feasible;
      j["cost"] = cost_to_json(f.is_ssl() ? f.ssl.cost_of(s.sources) : f.sna.cost_of(s.candidates));
      j["certificate"] = v.certificate;
      out << dump_canonical(j);
      return v.feasible ? exit_code::kOk : exit_code::kInfeasible;
    }
    if (*oracle_cmd) {
      const InstanceFile f = load_instance(oracle_file);
      const ExactResult r = f.is_ssl() ? exact_ssl(f.ssl, oracle_caps) : exact_sna(f.sna, oracle_caps);
      Json j;
      j["instance_sha256"] = instance_hash(f);
      j["feasible"] = r.feasible;
      j["optimum"] = cost_to_json(r.optimum);
      if (f.is_ssl()) {
        j["solution"] = labels_json(f, r.solution);
      } else {
        j["solution"] = r.solution;
        if (f.sna.mode == CostMode::kNode) j["nodes"] = labels_json(f, r.nodes);
      }
      j["optimal_count"] = r.optimal_count;
      j["enumerated"] = r.enumerated;
      out << dump_canonical(j);
      return r.feasible ? exit_code::kOk : exit_code::kInfeasible;
    }
    if (*ratio_cmd) {
      const auto rows = ratio_report(ratio_dir, ratio_opts, jobs);
      out << ratio_table(rows);
      const bool bad = std::any_of(rows.begin(), rows.end(), [](const RatioRow& r) { return r.violation; });
      return bad ? exit_code::kFailure : exit_code::kOk;
    }
    if (*suite_cmd) {
      if (!artifacts.empty()) suite.artifact_dir = artifacts;
      const PropertyReport r = run_property_suite(suite);
      for (const auto& w : r.warnings) err << "warning: " << w << "\n";
      out << dump_canonical(property_report_json(r));
      return r.ok() ? exit_code::kOk : exit_code::kFailure;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::kFailure;
  }
  return exit_code::kFailure;
}

}  // namespace srcloc
