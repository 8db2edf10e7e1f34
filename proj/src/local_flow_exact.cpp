#include "localflow/local_flow_exact.hpp"

#include <cmath>
#include <string>

#include "localflow/errors.hpp"
#include "localflow/local_flow.hpp"

namespace localflow {

std::int64_t phase_length(std::int64_t vol_a, const Rational& sigma) {
  if (vol_a <= 0 || !sigma.is_positive()) throw ParameterError("phase length needs positive inputs");
  // x = 3 vol(A) / sigma = num / den.
  const __int128 num = static_cast<__int128>(3) * vol_a * sigma.den();
  const __int128 den = sigma.num();
  auto k = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(num) /
                                               static_cast<long double>(den)));
  while (k > 0 && static_cast<__int128>(k - 1) * (k - 1) * den >= num) --k;
  while (static_cast<__int128>(k) * k * den < num) ++k;
  return k;
}

int length_hat(const FlowState& fs, Capacity delta, const DistanceLabels& d, NodeId u,
               std::size_t a) {
  return arc_length(fs, Lengths::binary(delta), d, u, a);
}

Capacity min_layer_cut_residual(const FlowState& fs, const DistanceLabels& d) {
  if (!d.reaches_sink()) throw ParameterError("layer cuts need labels that reach t");
  const int last = d.sink - 2;
  std::vector<Capacity> cut(static_cast<std::size_t>(last) + 2, 0);
  for (NodeId u : fs.seed_nodes()) {
    const Capacity r = fs.source_residual(u);
    if (r > 0 && d.at(u) == 1) cut[0] += r;
  }
  for (NodeId u = 0; u < fs.num_nodes(); ++u) {
    const int du = d.at(u);
    if (du == DistanceLabels::kInf || du > last) continue;
    if (!fs.is_expanded(u)) throw InvariantViolation("layer vertex outside the local graph");
    const std::size_t begin = fs.arc_begin(u);
    const std::size_t end = begin + static_cast<std::size_t>(fs.degree(u));
    for (std::size_t a = begin; a < end; ++a) {
      const Capacity r = fs.arc_residual(a);
      if (r <= 0) continue;
      const int dv = d.at(fs.arc_head(a));
      // The arc leaves every S_j with du <= j < dv.
      const int stop = std::min(dv, last + 1);
      for (int j = du; j < stop; ++j) cut[j] += r;
    }
    if (!fs.is_seed(u) && fs.sink_residual(u) > 0) {
      for (int j = du; j <= last; ++j) cut[j] += fs.sink_residual(u);
    }
  }
  Capacity best = cut[0];
  for (int j = 1; j <= last; ++j) best = std::min(best, cut[j]);
  return best;
}

bool phase_progress_check(const PhaseReport& report) {
  if (report.disconnected) return true;
  if (2 * report.flow_gain >= report.bound) return true;
  return 2 * report.layer_cut_residual <= report.bound;
}

ExactFlowResult local_flow_exact(const Graph& g, const VertexSet& a, const Rational& alpha,
                                 const Epsilon& eps, const ExactFlowOptions& options) {
  AugmentedGraph ag = AugmentedGraph::build(g, a, alpha, eps);
  const std::int64_t lambda = phase_length(ag.seed_volume(), sigma_from_epsilon(eps));
  const Capacity source_total = ag.source_total();
  ExactFlowResult result{FlowState(std::move(ag)), VertexSet(), false, std::nullopt,
                         ExactFlowStats{}, {}, InvariantMonitor(options.strict_invariants)};
  FlowState& fs = result.flow;
  InvariantMonitor& mon = result.invariants;
  const bool checking = options.check_invariants || options.strict_invariants;
  ExactFlowStats& st = result.stats;
  st.lambda = lambda;
  SaturatedSet bs;

  Capacity bound = source_total;
  bool disconnected = false;
  while (bound >= 1 && !disconnected) {
    const Capacity delta = std::max<Capacity>(1, (bound + 6 * lambda - 1) / (6 * lambda));
    const Lengths len = Lengths::binary(delta);
    for (NodeId u = 0; u < fs.num_nodes(); ++u) fs.set_modern(u, fs.is_saturated(u));

    PhaseReport report;
    report.bound = bound;
    report.delta = delta;
    report.lambda = lambda;
    const Capacity value_before = fs.value();
    DistanceLabels prev;
    bool have_prev = false;
    BinaryOutcome last = BinaryOutcome::kDeltaFlow;

    auto check_labels = [&](const DistanceLabels& d) {
      if (!checking) return;
      mon.check("exact.layer_containment", layers_contained(fs, d),
                "layer outside the local graph in outer phase " + std::to_string(st.outer_phases));
      if (!have_prev) return;
      mon.check("exact.labels_monotone", labels_monotone(prev, d),
                "distance decreased in outer phase " + std::to_string(st.outer_phases));
      if (last == BinaryOutcome::kBlockingFlow) {
        mon.check("exact.sink_distance_grows", !d.reaches_sink() || d.sink > prev.sink,
                  "d(t) did not grow after a blocking flow in outer phase " +
                      std::to_string(st.outer_phases));
      }
    };

    DistanceLabels d;
    for (std::int64_t i = 0; i < 4 * lambda; ++i) {
      d = compute_distances(fs, len, Scope::kLocal);
      check_labels(d);
      if (!d.reaches_sink()) {
        disconnected = true;
        break;
      }
      BinaryBlockingResult r = binary_blocking_flow(fs, d, delta);
      ++st.binary_calls;
      st.max_contracted_nodes = std::max(st.max_contracted_nodes, r.contracted_nodes);
      if (r.outcome == BinaryOutcome::kDeltaFlow) {
        ++report.delta_flows;
      } else {
        ++report.blocking_flows;
      }
      last = r.outcome;
      bs = update_saturated_set(fs, std::move(bs));
      if (bs.sink_capacity() > source_total) {
        throw InvariantViolation("saturated sink capacity exceeds the source capacity");
      }
      if (checking) mon.check("exact.saturated_volume", saturated_volume_ok(fs, bs));
      prev = std::move(d);
      have_prev = true;
    }
    if (!disconnected) {
      d = compute_distances(fs, len, Scope::kLocal);
      check_labels(d);
      disconnected = !d.reaches_sink();
    }
    report.flow_gain = fs.value() - value_before;
    report.disconnected = disconnected;
    if (!disconnected) {
      report.final_sink_distance = d.sink;
      report.layer_cut_residual = min_layer_cut_residual(fs, d);
    }
    const bool certified = phase_progress_check(report);
    if (checking) {
      mon.check("exact.phase_progress", certified,
                "outer phase " + std::to_string(st.outer_phases) + " did not halve the bound");
    }
    ++st.outer_phases;
    st.delta_flows += report.delta_flows;
    st.blocking_flows += report.blocking_flows;
    result.phases.push_back(report);
    if (certified) {
      bound /= 2;
    } else {
      if (report.flow_gain == 0) throw InvariantViolation("outer phase made no progress");
      ++st.uncertified_phases;
    }
  }

  if (!disconnected) {
    DistanceLabels d = compute_distances(fs, Lengths::unit(), Scope::kLocal);
    if (d.reaches_sink()) throw InvariantViolation("flow is not maximum after the last phase");
  }
  result.full_flow = fs.value() == source_total;
  result.cut = residual_source_side(fs, Scope::kLocal);
  if (!result.cut.empty()) result.cut_conductance = conductance(g, result.cut);
  if (checking) fs.validate();
  st.touched_vertices = fs.num_nodes();
  st.touched_volume = fs.expanded_volume();
  st.saturated_volume = bs.volume();
  return result;
}

}  // namespace localflow
