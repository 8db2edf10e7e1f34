#include "localflow/improve.hpp"

#include <unordered_set>

#include "localflow/augmented.hpp"
#include "localflow/errors.hpp"
#include "localflow/local_flow.hpp"
#include "localflow/local_flow_exact.hpp"

namespace localflow {
namespace {

struct ProbeRun {
  Probe probe;
  VertexSet cut;
  FlowState flow;
};

ProbeRun run_probe(const Graph& g, const VertexSet& a, const Rational& alpha, const Epsilon& eps,
                   const ImproveOptions& options, InvariantMonitor& mon,
                   std::unordered_set<Vertex>& touched) {
  Probe probe;
  probe.alpha = alpha;
  if (options.solver == Solver::kApprox) {
    LocalFlowOptions lo;
    lo.phase_limit = options.phase_limit;
    lo.check_invariants = options.check_invariants;
    LocalFlowResult r = local_flow(g, a, alpha, eps, lo);
    mon.merge(r.invariants);
    probe.outcome = r.full_flow ? ProbeOutcome::kFullFlow : ProbeOutcome::kCutFound;
    probe.conductance = r.cut_conductance;
    probe.exact = r.exact;
    probe.phases = r.stats.phases;
    probe.touched_volume = r.stats.touched_volume;
    for (Vertex v : r.flow.expanded_vertices()) touched.insert(v);
    return ProbeRun{probe, std::move(r.cut), std::move(r.flow)};
  }
  ExactFlowOptions eo;
  eo.check_invariants = options.check_invariants;
  ExactFlowResult r = local_flow_exact(g, a, alpha, eps, eo);
  mon.merge(r.invariants);
  probe.outcome = r.full_flow ? ProbeOutcome::kFullFlow : ProbeOutcome::kCutFound;
  probe.conductance = r.cut_conductance;
  probe.exact = true;
  probe.phases = r.stats.binary_calls;
  probe.touched_volume = r.stats.touched_volume;
  for (Vertex v : r.flow.expanded_vertices()) touched.insert(v);
  return ProbeRun{probe, std::move(r.cut), std::move(r.flow)};
}

bool better(const Probe& p, const VertexSet& s, const Probe& q, const VertexSet& t) {
  if (*p.conductance != *q.conductance) return *p.conductance < *q.conductance;
  if (s.volume() != t.volume()) return s.volume() < t.volume();
  return s < t;
}

}  // namespace

ImproveResult local_improve(const Graph& g, const VertexSet& a, const Epsilon& eps_sigma,
                            const Rational& eps, const ImproveOptions& options) {
  if (!eps.is_positive() || eps > Rational(1)) {
    throw ParameterError("eps must lie in (0, 1], got " + eps.to_string());
  }
  AugmentedGraph::build(g, a, Rational(1), eps_sigma);  // parameter validation

  ImproveResult result;
  std::unordered_set<Vertex> touched;
  Rational lo(0);
  Rational hi(1);
  std::optional<ProbeRun> hi_run;
  std::optional<ProbeRun> best;
  auto record = [&](const ProbeRun& run) {
    result.trace.push_back(run.probe);
    result.touched_volume = std::max(result.touched_volume, run.probe.touched_volume);
    result.phases += run.probe.phases;
  };
  auto consider = [&](const ProbeRun& run) {
    if (run.probe.outcome != ProbeOutcome::kCutFound || !run.probe.conductance) return;
    if (!best || better(run.probe, run.cut, best->probe, best->cut)) best = run;
  };

  while (hi - lo > eps * lo) {
    const Rational mid = (lo + hi) / Rational(2);
    ProbeRun run = run_probe(g, a, mid, eps_sigma, options, result.invariants, touched);
    record(run);
    consider(run);
    if (run.probe.outcome == ProbeOutcome::kFullFlow) {
      lo = mid;
    } else {
      hi = mid;
      hi_run = std::move(run);
    }
    if (best && best->probe.conductance->is_zero()) break;
  }
  if (!hi_run) {
    ProbeRun run = run_probe(g, a, hi, eps_sigma, options, result.invariants, touched);
    record(run);
    consider(run);
    hi_run = std::move(run);
  }
  result.alpha_max = hi;
  for (Vertex v : touched) result.union_touched_volume += g.degree(v);

  if (hi_run->probe.outcome == ProbeOutcome::kFullFlow && !best) {
    result.outcome = ImproveOutcome::kNoImprovement;
    result.final_flow.emplace(std::move(hi_run->flow));
    return result;
  }
  const ProbeRun& chosen =
      (hi_run->probe.outcome == ProbeOutcome::kCutFound &&
       !better(best->probe, best->cut, hi_run->probe, hi_run->cut))
          ? *hi_run
          : *best;
  result.outcome = ImproveOutcome::kImproved;
  result.set = chosen.cut;
  result.conductance = chosen.probe.conductance;
  result.volume = chosen.cut.volume();
  result.source_probe = chosen.probe;
  result.final_flow.emplace(hi_run->flow);
  return result;
}

ImproveResult local_improve_overlap(const Graph& g, const VertexSet& a, const Rational& sigma,
                                    const ImproveOptions& options) {
  return local_improve(g, a, epsilon_sigma(sigma, g, a), Rational(1, 5), options);
}

PipelineResult pipeline_nibble_improve(const Graph& g, Vertex seed, const Rational& sigma,
                                       const ApprConfig& config, const ImproveOptions& options) {
  ApprVector p = appr_push(g, seed, config);
  SweepResult sweep = sweep_cut(g, p);
  ImproveResult improved = local_improve_overlap(g, sweep.set, sigma, options);
  return PipelineResult{std::move(sweep), std::move(improved)};
}

std::string to_string(ProbeOutcome o) { return o == ProbeOutcome::kFullFlow ? "full-flow" : "cut"; }

std::string to_string(ImproveOutcome o) {
  return o == ImproveOutcome::kImproved ? "improved" : "no-improvement";
}

std::string to_string(Solver s) { return s == Solver::kApprox ? "approx" : "exact"; }

}  // namespace localflow
