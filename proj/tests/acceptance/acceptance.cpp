// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 1 if any
// criterion fails.

#include <sys/wait.h>

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "localflow/augmented.hpp"
#include "localflow/certify.hpp"
#include "localflow/improve.hpp"
#include "localflow/local_flow.hpp"
#include "localflow/local_flow_exact.hpp"
#include "localflow/oracle.hpp"

namespace lf = localflow;
using lf::Rational;
using lf::VertexSet;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Shared across criteria.
lf::InvariantMonitor g_monitor;

struct CertificateAudit {
  std::size_t full_flows = 0;
  std::size_t routing_failures = 0;
  std::size_t decompositions = 0;
  std::size_t conservation_failures = 0;
  std::size_t local_flow_certificates = 0;
  std::size_t path_length_failures = 0;
  std::size_t longest_path = 0;
  std::size_t longest_allowed = 0;
  std::string first_failure;
} g_audit;

void note_failure(const std::string& what) {
  if (g_audit.first_failure.empty()) g_audit.first_failure = what;
}

// Checks a full flow against BiDemand(A, 1, eps) with congestion 1/alpha and
// decomposes it. `budget` is the phase budget when local_flow produced it.
void audit_full_flow(const lf::FlowState& f, std::optional<std::int64_t> budget) {
  const lf::AugmentedGraph& ag = f.network();
  if (f.value() != ag.source_total()) return;
  ++g_audit.full_flows;
  // An infinite eps leaves only the clamp vol(A) on each sink arc.
  const Rational c2 = ag.eps().is_infinite() ? Rational(ag.seed_volume()) : ag.eps().value();
  auto rep = lf::verify_bidemand_routing(f, {ag.seeds(), Rational(1), c2},
                                         Rational(1) / ag.alpha());
  if (!rep.ok) {
    ++g_audit.routing_failures;
    note_failure("routing: " + rep.violations.front());
  }
  lf::PathDecomposition pd = lf::decompose_paths(f);
  ++g_audit.decompositions;
  std::map<lf::Vertex, lf::Capacity> src;
  std::map<lf::Vertex, lf::Capacity> snk;
  lf::Capacity sum = 0;
  for (const lf::FlowPath& p : pd.paths) {
    src[p.vertices.front()] += p.amount;
    snk[p.vertices.back()] += p.amount;
    sum += p.amount;
  }
  bool conserved = sum == f.value() && pd.total == f.value();
  for (lf::Vertex v = 0; v < f.graph().num_vertices() && conserved; ++v) {
    conserved = src[v] == f.source_flow_of(v) && snk[v] == f.sink_flow_of(v);
  }
  if (!conserved) {
    ++g_audit.conservation_failures;
    note_failure("decomposition does not conserve the flow");
  }
  if (budget) {
    ++g_audit.local_flow_certificates;
    for (const lf::FlowPath& p : pd.paths) {
      g_audit.longest_path = std::max(g_audit.longest_path, p.arcs());
    }
    g_audit.longest_allowed = std::max<std::size_t>(g_audit.longest_allowed, *budget + 2);
    if (!lf::path_length_certificate(pd, *budget + 2)) {
      ++g_audit.path_length_failures;
      note_failure("path longer than I+2");
    }
  }
}

lf::LocalFlowOptions checked(std::optional<std::int64_t> phase_limit = std::nullopt) {
  lf::LocalFlowOptions o;
  o.check_invariants = true;
  o.phase_limit = phase_limit;
  return o;
}

lf::ExactFlowOptions checked_exact() {
  lf::ExactFlowOptions o;
  o.check_invariants = true;
  return o;
}

lf::ImproveOptions checked_improve(lf::Solver s) {
  lf::ImproveOptions o;
  o.solver = s;
  o.check_invariants = true;
  return o;
}

// Criterion 1.
Verdict oracle_equivalence(lf::testing::Rng& rng, int count) {
  const auto t0 = Clock::now();
  int mismatches = 0;
  int exact_default = 0;
  std::string first;
  for (int i = 0; i < count; ++i) {
    auto inst = lf::testing::random_instance(rng, 3, 14);
    auto ag = inst.network();
    auto global = lf::global_max_flow(ag, &g_monitor);
    const lf::Capacity ref = global.flow.value();
    auto by_default = lf::local_flow(*inst.graph, inst.seeds, inst.alpha, inst.eps, checked());
    auto forced =
        lf::local_flow(*inst.graph, inst.seeds, inst.alpha, inst.eps, checked(1 << 20));
    auto exact = lf::local_flow_exact(*inst.graph, inst.seeds, inst.alpha, inst.eps, checked_exact());
    g_monitor.merge(by_default.invariants);
    g_monitor.merge(forced.invariants);
    g_monitor.merge(exact.invariants);
    const auto brute = lf::oracle::brute_min_cut_value(ag);
    bool ok = forced.exact && forced.flow.value() == ref && exact.flow.value() == ref &&
              Rational(ref, ag.scale()) == brute.second;
    if (by_default.exact) {
      ++exact_default;
      ok = ok && by_default.flow.value() == ref;
    }
    if (!ok) {
      ++mismatches;
      if (first.empty()) first = "instance " + std::to_string(i);
    }
    audit_full_flow(global.flow, std::nullopt);
    audit_full_flow(exact.flow, std::nullopt);
    if (by_default.full_flow) audit_full_flow(by_default.flow, by_default.stats.phase_budget);
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << count << " instances, " << mismatches << " mismatches (" << exact_default
     << " exact within the default budget), " << secs << " s";
  if (!first.empty()) os << "; first at " << first;
  return {mismatches == 0 && count >= 500 && secs < 60.0, os.str()};
}

// Criterion 2.
Verdict lemma_32(lf::testing::Rng& rng, int count) {
  std::size_t cut_checks = 0;
  std::size_t flow_checks = 0;
  std::size_t violations = 0;
  int full = 0;
  for (int i = 0; i < count; ++i) {
    auto inst = lf::testing::random_instance(rng, 3, 14);
    const lf::Graph& g = *inst.graph;
    auto ag = inst.network();
    auto mf = lf::global_max_flow(ag, &g_monitor);
    const bool is_full = mf.flow.value() == ag.source_total();
    full += is_full;
    const Rational vol_a(inst.seeds.volume());
    lf::oracle::for_each_subset(g, [&](std::uint32_t mask) {
      VertexSet s = lf::oracle::from_mask(g, mask);
      const std::int64_t denom = std::min(s.volume(), g.volume() - s.volume());
      if (lf::cut_value(ag, s) < vol_a) {
        ++cut_checks;
        if (denom <= 0 || !(lf::conductance(g, s) < inst.alpha)) ++violations;
      }
      if (is_full && s.volume() > 0) {
        ++flow_checks;
        auto bound = lf::flow_certificate_bound(ag, s);
        if (bound && Rational(lf::boundary_edges(g, s), s.volume()) < *bound) ++violations;
      }
    });
  }
  std::ostringstream os;
  os << count << " instances (" << full << " full flows), " << cut_checks << " cut-side and "
     << flow_checks << " flow-side subset checks, " << violations << " violations";
  return {violations == 0, os.str()};
}

struct PlantedInstance {
  lf::testing::PlantedGraph planted;
  VertexSet a;
  Rational delta;
  std::size_t k = 0;
};

// A = B with up to vol(B)/3 removed and a little of the other side added.
PlantedInstance make_planted(std::size_t k, lf::testing::Rng& rng) {
  const double p_in = k <= 50 ? 0.3 : (k <= 100 ? 0.2 : 0.1);
  PlantedInstance out{lf::testing::planted_two_cluster(k, p_in, k / 10, rng), {}, Rational(0), k};
  const lf::Graph& g = out.planted.graph;
  const VertexSet& b = out.planted.cluster;
  std::vector<lf::Vertex> in_b(b.begin(), b.end());
  std::vector<lf::Vertex> outside;
  for (lf::Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!b.contains(v)) outside.push_back(v);
  }
  std::shuffle(in_b.begin(), in_b.end(), rng);
  std::shuffle(outside.begin(), outside.end(), rng);
  std::vector<lf::Vertex> a;
  std::int64_t removed = 0;
  for (lf::Vertex v : in_b) {
    if (3 * (removed + g.degree(v)) <= b.volume()) {
      removed += g.degree(v);
    } else {
      a.push_back(v);
    }
  }
  std::int64_t added = 0;
  std::int64_t vol_a = b.volume() - removed;
  for (lf::Vertex v : outside) {
    const std::int64_t d = g.degree(v);
    // vol(V - A) >= 3 (1/sigma - 1) vol(A) = 1.5 vol(A) at sigma = 2/3.
    if (12 * (added + d) <= b.volume() && 2 * (g.volume() - vol_a - d) >= 3 * (vol_a + d)) {
      a.push_back(v);
      added += d;
      vol_a += d;
    }
  }
  out.a = VertexSet(g, a);
  out.delta = Rational(b.volume() - removed, b.volume());
  return out;
}

struct PlantedRun {
  PlantedInstance inst;
  lf::ImproveResult approx;
  lf::ImproveResult exact;
};

std::vector<PlantedRun> run_planted(lf::testing::Rng& rng, int per_k) {
  std::vector<PlantedRun> runs;
  for (std::size_t k : {50u, 100u, 200u}) {
    for (int i = 0; i < per_k; ++i) {
      PlantedInstance inst = make_planted(k, rng);
      const lf::Graph& g = inst.planted.graph;
      auto approx = lf::local_improve_overlap(g, inst.a, Rational(2, 3),
                                              checked_improve(lf::Solver::kApprox));
      auto exact = lf::local_improve_overlap(g, inst.a, Rational(2, 3),
                                             checked_improve(lf::Solver::kExact));
      g_monitor.merge(approx.invariants);
      g_monitor.merge(exact.invariants);
      for (const auto* r : {&approx, &exact}) {
        if (r->outcome == lf::ImproveOutcome::kNoImprovement) audit_full_flow(*r->final_flow, {});
      }
      runs.push_back({std::move(inst), std::move(approx), std::move(exact)});
    }
  }
  return runs;
}

// Criterion 4.
Verdict theorem_1a(const std::vector<PlantedRun>& runs, double secs) {
  int violations = 0;
  int equal = 0;
  Rational worst(0);
  Rational min_delta(1);
  for (const PlantedRun& r : runs) {
    const lf::Graph& g = r.inst.planted.graph;
    const Rational phi_b = lf::conductance(g, r.inst.planted.cluster);
    min_delta = std::min(min_delta, r.inst.delta);
    if (r.inst.delta < Rational(2, 3)) ++violations;
    if (r.approx.outcome != lf::ImproveOutcome::kImproved) {
      ++violations;
      continue;
    }
    const Rational phi = *r.approx.conductance;
    if (Rational(r.approx.volume) * Rational(2, 3) > Rational(3 * r.inst.a.volume())) ++violations;
    if (phi > Rational(4) / r.inst.delta * phi_b) ++violations;
    if (phi == phi_b) ++equal;
    worst = std::max(worst, phi / phi_b);
  }
  std::ostringstream os;
  os << runs.size() << " planted instances, min delta " << min_delta.to_double() << ", "
     << violations << " violations, phi(S) = phi(B) on " << equal << ", worst ratio "
     << worst.to_double() << ", " << secs / static_cast<double>(runs.size()) << " s per instance";
  return {violations == 0, os.str()};
}

// Criterion 5.
Verdict theorem_1b(const std::vector<PlantedRun>& runs) {
  int violations = 0;
  int oracle_checks = 0;
  Rational worst(0);
  for (const PlantedRun& r : runs) {
    const lf::Graph& g = r.inst.planted.graph;
    const Rational phi_b = lf::conductance(g, r.inst.planted.cluster);
    if (r.exact.outcome != lf::ImproveOutcome::kImproved) {
      ++violations;
      continue;
    }
    const Rational phi = *r.exact.conductance;
    if (phi > Rational(2) / r.inst.delta * phi_b) ++violations;
    worst = std::max(worst, phi / phi_b);
    if (r.inst.k == 50) {
      ++oracle_checks;
      auto ag = lf::AugmentedGraph::build(g, r.inst.a, r.exact.alpha_max,
                                          lf::epsilon_sigma(Rational(2, 3), g, r.inst.a));
      auto ref = lf::global_max_flow(ag, &g_monitor);
      if (ref.flow.value() != r.exact.final_flow->value()) ++violations;
    }
  }
  std::ostringstream os;
  os << runs.size() << " planted instances, " << violations << " violations, worst ratio "
     << worst.to_double() << ", " << oracle_checks << " max-flow oracle checks at alpha_max";
  return {violations == 0 && oracle_checks > 0, os.str()};
}

// Criterion 6.
Verdict locality(int repeats) {
  struct Measure {
    std::int64_t touched = 0;
    std::int64_t union_touched = 0;
    std::int64_t vol_a = 0;
    double best_secs = 1e300;
    Rational phi;
  };
  auto measure = [&](std::size_t cliques) {
    lf::Graph g = lf::testing::ring_of_cliques(cliques, 10);
    std::vector<lf::Vertex> ids(10);
    for (lf::Vertex i = 0; i < 10; ++i) ids[i] = i;
    VertexSet a(g, ids);
    Measure m;
    m.vol_a = a.volume();
    for (int r = 0; r < repeats; ++r) {
      constexpr int kBatch = 20;
      const auto t0 = Clock::now();
      lf::ImproveResult res;
      for (int b = 0; b < kBatch; ++b) res = lf::local_improve_overlap(g, a, Rational(1, 2));
      m.best_secs = std::min(m.best_secs, seconds_since(t0) / kBatch);
      m.touched = std::max(m.touched, res.touched_volume);
      m.union_touched = std::max(m.union_touched, res.union_touched_volume);
      if (res.conductance) m.phi = *res.conductance;
    }
    return m;
  };
  Measure small = measure(10000);
  Measure large = measure(100000);
  const std::int64_t limit = 6 * small.vol_a;
  const double ratio = large.best_secs / small.best_secs;
  const bool ok = small.touched <= limit && large.touched <= limit &&
                  small.union_touched <= limit && large.union_touched <= limit && ratio < 2.0;
  std::ostringstream os;
  os << "touched volume " << small.touched << " / " << large.touched << " (union "
     << small.union_touched << " / " << large.union_touched << ", limit " << limit
     << "), improve time " << small.best_secs * 1e3 << " ms vs " << large.best_secs * 1e3
     << " ms, ratio " << ratio << ", phi " << small.phi;
  return {ok, os.str()};
}

// Smallest threshold of (4.1) over all subsets of a small graph.
std::optional<std::pair<VertexSet, Rational>> best_target(const lf::Graph& g, const VertexSet& a,
                                                          const lf::Epsilon& e) {
  std::optional<std::pair<VertexSet, Rational>> best;
  lf::oracle::for_each_subset(g, [&](std::uint32_t mask) {
    VertexSet s = lf::oracle::from_mask(g, mask);
    auto t = lf::oracle::condition_41_threshold(g, a, s, e);
    if (t && (!best || *t < best->second)) best.emplace(std::move(s), *t);
  });
  return best;
}

// Criterion 7.
Verdict layer_cuts(lf::testing::Rng& rng, const std::vector<PlantedRun>& planted) {
  int instances = 0;
  int violations = 0;
  std::int64_t max_bad_budget = -1;
  Rational worst(0);
  auto probe = [&](const lf::Graph& g, const VertexSet& a, const lf::Epsilon& e,
                   const VertexSet& target, const Rational& alpha) {
    if (!lf::oracle::eval_condition_41(g, a, target, alpha, e)) return;
    auto full = lf::local_flow(g, a, alpha, e, checked());
    g_monitor.merge(full.invariants);
    if (!full.exact || full.stats.phases < 1) return;
    // Any budget below the phases Dinic needs leaves the flow incomplete.
    std::uniform_int_distribution<std::int64_t> pick(0, static_cast<std::int64_t>(full.stats.phases) - 1);
    auto r = lf::local_flow(g, a, alpha, e, checked(pick(rng)));
    g_monitor.merge(r.invariants);
    if (r.exact) return;
    ++instances;
    if (!r.cut_conductance || !(*r.cut_conductance < Rational(2) * alpha)) {
      ++violations;
      max_bad_budget = std::max<std::int64_t>(max_bad_budget, static_cast<std::int64_t>(r.stats.phases));
    } else {
      worst = std::max(worst, *r.cut_conductance / alpha);
    }
  };
  for (int attempt = 0; attempt < 4000 && instances < 300; ++attempt) {
    auto inst = lf::testing::random_instance(rng, 4, 14);
    auto target = best_target(*inst.graph, inst.seeds, inst.eps);
    if (!target || target->second >= Rational(1)) continue;
    // A dyadic alpha strictly above the threshold.
    Rational alpha(1);
    for (int e = 1; e <= 12; ++e) {
      Rational step(1, std::int64_t{1} << e);
      Rational cand = Rational(((target->second / step).floor() + 1)) * step;
      if (cand <= Rational(1) && cand > target->second) alpha = cand;
      if (rng() % 3 == 0) break;
    }
    probe(*inst.graph, inst.seeds, inst.eps, target->first, alpha);
  }
  int planted_instances = instances;
  for (const PlantedRun& r : planted) {
    const lf::Graph& g = r.inst.planted.graph;
    const lf::Epsilon e = lf::epsilon_sigma(Rational(2, 3), g, r.inst.a);
    auto t = lf::oracle::condition_41_threshold(g, r.inst.a, r.inst.planted.cluster, e);
    if (!t) continue;
    for (const Rational& mult : {Rational(9, 8), Rational(3, 2), Rational(4)}) {
      Rational alpha = *t * mult;
      Rational dy(1, 1 << 16);
      alpha = Rational((alpha / dy).floor() + 1) * dy;
      if (alpha <= Rational(1)) probe(g, r.inst.a, e, r.inst.planted.cluster, alpha);
    }
  }
  planted_instances = instances - planted_instances;
  std::ostringstream os;
  os << instances << " truncated runs (" << planted_instances << " planted), " << violations
     << " with phi(S) >= 2 alpha";
  if (violations) os << " (all at budgets <= " << max_bad_budget << " phases)";
  os << ", largest passing phi(S)/alpha " << worst.to_double();
  return {violations == 0 && instances >= 100, os.str()};
}

// Criterion 8.
Verdict certificates() {
  std::ostringstream os;
  os << g_audit.full_flows << " full flows, " << g_audit.routing_failures << " routing failures, "
     << g_audit.conservation_failures << " of " << g_audit.decompositions
     << " decompositions not conserving, " << g_audit.path_length_failures << " of "
     << g_audit.local_flow_certificates << " local-flow certificates over I+2 (longest path "
     << g_audit.longest_path << " arcs, largest I+2 " << g_audit.longest_allowed << ")";
  if (!g_audit.first_failure.empty()) os << "; first: " << g_audit.first_failure;
  const bool ok = g_audit.full_flows > 0 && g_audit.local_flow_certificates > 0 &&
                  g_audit.routing_failures == 0 && g_audit.conservation_failures == 0 &&
                  g_audit.path_length_failures == 0;
  return {ok, os.str()};
}

// Upper end of a rational bisection for the smallest alpha satisfying (4.1).
Rational bisect_alpha_star(const lf::Graph& g, const VertexSet& a, const VertexSet& s,
                           const lf::Epsilon& e) {
  Rational lo(0);
  Rational hi(1);
  if (!lf::oracle::eval_condition_41(g, a, s, hi, e)) return Rational(2);
  for (int i = 0; i < 30; ++i) {
    Rational mid = (lo + hi) / Rational(2);
    (lf::oracle::eval_condition_41(g, a, s, mid, e) ? hi : lo) = mid;
  }
  return hi;
}

// Criterion 9.
Verdict binary_search(const std::vector<PlantedRun>& runs) {
  int violations = 0;
  int checked_runs = 0;
  double worst_approx = 0.0;
  double worst_exact = 0.0;
  const Rational eps(1, 5);
  for (const PlantedRun& r : runs) {
    const lf::Graph& g = r.inst.planted.graph;
    const lf::Epsilon e = lf::epsilon_sigma(Rational(2, 3), g, r.inst.a);
    const Rational star = bisect_alpha_star(g, r.inst.a, r.inst.planted.cluster, e);
    auto t = lf::oracle::condition_41_threshold(g, r.inst.a, r.inst.planted.cluster, e);
    if (star > Rational(1) || !t || !(*t < star) ||
        star - *t > Rational(1, std::int64_t{1} << 29)) {
      ++violations;
      continue;
    }
    ++checked_runs;
    if (r.approx.outcome != lf::ImproveOutcome::kImproved ||
        !(*r.approx.conductance < Rational(2) * (Rational(1) + eps) * star)) {
      ++violations;
    }
    if (r.exact.outcome != lf::ImproveOutcome::kImproved ||
        !(*r.exact.conductance < (Rational(1) + eps) * star)) {
      ++violations;
    }
    if (r.approx.conductance) worst_approx = std::max(worst_approx, (*r.approx.conductance / star).to_double());
    if (r.exact.conductance) worst_exact = std::max(worst_exact, (*r.exact.conductance / star).to_double());
  }
  std::ostringstream os;
  os << checked_runs << " planted instances, " << violations
     << " violations, largest phi(S)/alpha*: approx " << worst_approx << " (bound 2.4), exact "
     << worst_exact << " (bound 1.2)";
  return {violations == 0 && checked_runs > 0, os.str()};
}

struct Shell {
  int code;
  std::string out;
};

Shell shell(const std::string& cmd) {
  Shell s{-1, {}};
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!p) return s;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) s.out.append(buf.data(), n);
  const int status = pclose(p);
  s.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return s;
}

// Criterion 10.
Verdict cli_end_to_end(const std::string& cli, const std::string& data) {
  const std::string base = "'" + cli + "' ";
  const std::string fixture = " -g '" + data + "/barbell.edgelist' -a '" + data + "/barbell.seeds'";
  std::vector<std::string> failures;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };
  for (const char* cmd : {"improve", "improve-exact"}) {
    Shell s = shell(base + cmd + fixture + " --sigma 1/2");
    expect(s.code == 0, std::string(cmd) + " exit " + std::to_string(s.code));
    try {
      auto j = nlohmann::json::parse(s.out);
      expect(j["phi"] == nlohmann::json({{"num", 1}, {"den", 7}}), std::string(cmd) + " phi");
      expect(j["set"] == nlohmann::json({0, 1, 2}), std::string(cmd) + " set");
    } catch (const std::exception&) {
      expect(false, std::string(cmd) + " output is not JSON");
    }
  }
  Shell metis = shell(base + "improve -g '" + data + "/barbell.metis' -f metis -a '" + data +
                      "/barbell.seeds' --sigma 1/2 -o human");
  expect(metis.code == 0 && metis.out.find("phi: 1/7") != std::string::npos, "metis/human");
  expect(shell(base + "improve" + fixture + " --sigma 0").code == 2, "sigma 0 exit");
  expect(shell(base + "improve" + fixture + " --sigma 1/3").code == 2, "infeasible sigma exit");
  expect(shell(base + "improve -g /nonexistent --seed-vertices 0 --sigma 1/2").code == 2,
         "missing file exit");
  expect(shell(base + "improve" + fixture).code == 2, "missing --sigma exit");
  expect(shell(base + "certify" + fixture + " --alpha 1/2 --sigma 1/2 --write /dev/null").code == 1,
         "partial flow certificate exit");
  Shell stats = shell(base + "stats" + fixture);
  expect(stats.code == 0 && stats.out.find("\"vol_a\": 7") != std::string::npos, "stats");
  std::ostringstream os;
  os << (failures.empty() ? "improve and improve-exact emit phi {num:1, den:7}; exit codes 0/1/2 as documented"
                          : "failed: ");
  for (std::size_t i = 0; i < failures.size(); ++i) os << (i ? ", " : "") << failures[i];
  return {failures.empty(), os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::uint64_t seed = 20240601;
  int instances = 500;
  int per_k = 4;
  int repeats = 5;
  std::string cli = LOCALFLOW_CLI;
  std::string data = LOCALFLOW_TEST_DATA;
  std::vector<int> expect_fail;
  app.add_option("--seed", seed, "random seed");
  app.add_option("--expect-fail", expect_fail,
                 "criteria known to fail; still reported, not counted in the exit status");
  app.add_option("--instances", instances, "random instances for criteria 1 and 2");
  app.add_option("--planted", per_k, "planted instances per cluster size");
  app.add_option("--repeats", repeats, "timing repetitions for the locality check");
  app.add_option("--cli", cli, "command-line binary");
  app.add_option("--data", data, "fixture directory");
  CLI11_PARSE(app, argc, argv);

  lf::testing::Rng rng(seed);
  std::array<Verdict, 11> v;
  std::cout << "seed " << seed << std::endl;
  v[1] = oracle_equivalence(rng, instances);
  v[2] = lemma_32(rng, instances);
  auto t0 = Clock::now();
  auto planted = run_planted(rng, per_k);
  const double planted_secs = seconds_since(t0);
  v[4] = theorem_1a(planted, planted_secs);
  v[5] = theorem_1b(planted);
  v[6] = locality(repeats);
  v[7] = layer_cuts(rng, planted);
  v[8] = certificates();
  v[9] = binary_search(planted);
  v[10] = cli_end_to_end(cli, data);
  {
    std::ostringstream os;
    os << g_monitor.total_checks() << " runtime checks, " << g_monitor.total_violations()
       << " violations";
    for (const auto& [name, c] : g_monitor.counters()) {
      if (c.violations) os << "; " << name << ": " << c.first_failure;
    }
    v[3] = {g_monitor.total_checks() > 0 && g_monitor.clean(), os.str()};
  }

  static const char* names[] = {"",
                                "oracle equivalence",
                                "cut and flow certificates, exhaustive",
                                "runtime invariants",
                                "approximate improve on planted clusters",
                                "exact improve on planted clusters",
                                "locality on a ring of cliques",
                                "layer cuts under a lowered phase budget",
                                "flow certificates",
                                "binary search against alpha*",
                                "command line end to end"};
  bool all = true;
  for (int i = 1; i <= 10; ++i) {
    std::cout << (v[i].pass ? "[PASS] " : "[FAIL] ") << i << ". " << names[i] << ": "
              << v[i].detail << '\n';
    const bool known = std::find(expect_fail.begin(), expect_fail.end(), i) != expect_fail.end();
    all = all && (v[i].pass || known);
  }
  return all ? 0 : 1;
}
