#include "localflow/local_flow.hpp"

#include <cmath>
#include <string>

#include "localflow/errors.hpp"

namespace localflow {

SaturatedSet update_saturated_set(FlowState& fs, SaturatedSet bs) {
  for (NodeId u = 0; u < fs.num_nodes(); ++u) {
    if (fs.is_seed(u) || fs.is_saturated(u)) continue;
    if (fs.sink_capacity(u) > 0 && fs.sink_residual(u) == 0) {
      fs.mark_saturated(u);
      bs.members_.push_back(fs.vertex(u));
      bs.volume_ += fs.degree(u);
      bs.sink_capacity_ += fs.sink_capacity(u);
    }
  }
  return bs;
}

LocalGraphView local_graph(const AugmentedGraph& ag, const SaturatedSet& bs) {
  const Graph& g = ag.graph();
  LocalGraphView view;
  view.expandable = set_union(g, ag.seeds(), bs.to_set(g));
  view.frontier = neighbors(g, view.expandable);
  view.vertices = set_union(g, view.expandable, view.frontier);
  std::int64_t inside = 0;
  for (Vertex u : view.expandable) {
    for (Vertex v : g.neighbors(u)) {
      if (view.expandable.contains(v)) ++inside;
    }
  }
  view.edges = view.expandable.volume() - inside / 2;
  return view;
}

BlockingResult local_blocking_flow(FlowState& fs, const SaturatedSet& bs) {
  for (Vertex v : bs.members()) {
    NodeId n = fs.find(v);
    if (n == kNoNode || !fs.is_saturated(n)) {
      throw InvariantViolation("saturated set out of sync with flow state");
    }
  }
  DistanceLabels d = compute_distances(fs, Lengths::unit(), Scope::kLocal);
  return blocking_flow(fs, d);
}

std::int64_t iteration_bound(const Rational& alpha, std::int64_t vol_a, const Rational& sigma) {
  if (!alpha.is_positive() || !sigma.is_positive() || vol_a <= 0) {
    throw ParameterError("iteration bound needs positive alpha, sigma and volume");
  }
  long double x = 3.0L * static_cast<long double>(vol_a) * static_cast<long double>(sigma.den()) /
                  static_cast<long double>(sigma.num());
  long double inv_alpha =
      static_cast<long double>(alpha.den()) / static_cast<long double>(alpha.num());
  long double i = std::ceil(5.0L * inv_alpha * std::log(x));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(i));
}

bool layers_contained(const FlowState& fs, const DistanceLabels& d) {
  if (!d.reaches_sink()) return true;
  if (d.sink < 3) return false;
  const Graph& g = fs.graph();
  for (NodeId u = 0; u < fs.num_nodes(); ++u) {
    const int du = d.at(u);
    if (du == DistanceLabels::kInf || du == 0) continue;
    const bool inside = fs.is_seed(u) || fs.is_saturated(u);
    if (du <= d.sink - 2 && !inside) return false;
    if (du == d.sink - 1 && !inside) {
      bool adjacent = false;
      for (Vertex w : g.neighbors(fs.vertex(u))) {
        NodeId nw = fs.find(w);
        if (nw != kNoNode && (fs.is_seed(nw) || fs.is_saturated(nw))) {
          adjacent = true;
          break;
        }
      }
      if (!adjacent) return false;
    }
  }
  return true;
}

std::optional<LayerCut> best_layer_cut(const FlowState& fs, const DistanceLabels& d) {
  if (!d.reaches_sink()) return std::nullopt;
  const Graph& g = fs.graph();
  const int last = d.sink - 2;
  std::vector<std::vector<NodeId>> layers(std::max(last, 0) + 1);
  for (NodeId u = 0; u < fs.num_nodes(); ++u) {
    const int du = d.at(u);
    if (du >= 1 && du <= last) layers[du].push_back(u);
  }
  std::vector<char> in_s(fs.num_nodes(), 0);
  std::vector<Vertex> members;
  std::int64_t vol = 0;
  std::int64_t boundary = 0;
  std::optional<LayerCut> best;
  std::size_t best_size = 0;
  for (int j = 1; j <= last; ++j) {
    for (NodeId u : layers[j]) {
      const Vertex v = fs.vertex(u);
      std::int64_t inner = 0;
      for (Vertex w : g.neighbors(v)) {
        NodeId nw = fs.find(w);
        if (nw != kNoNode && in_s[nw]) ++inner;
      }
      in_s[u] = 1;
      members.push_back(v);
      vol += g.degree(v);
      boundary += g.degree(v) - 2 * inner;
    }
    const std::int64_t denom = std::min(vol, g.volume() - vol);
    if (denom <= 0) continue;
    Rational phi(boundary, denom);
    if (!best || phi < best->conductance) {
      best = LayerCut{VertexSet(), phi, j};
      best_size = members.size();
    }
  }
  if (best) {
    best->set = VertexSet(g, std::vector<Vertex>(members.begin(), members.begin() + best_size));
  }
  return best;
}

bool saturated_volume_ok(const FlowState& fs, const SaturatedSet& bs) {
  if (bs.sink_capacity() > fs.value()) return false;
  const Epsilon& eps = fs.network().eps();
  if (eps.is_infinite()) return true;
  const Rational unclamped = Rational(fs.network().scale()) * eps.value() * Rational(bs.volume());
  if (unclamped != Rational(bs.sink_capacity())) return true;
  return Rational(bs.volume()) * eps.value() <= Rational(fs.network().seed_volume());
}

LocalFlowResult local_flow(const Graph& g, const VertexSet& a, const Rational& alpha,
                           const Epsilon& eps, const LocalFlowOptions& options) {
  AugmentedGraph ag = AugmentedGraph::build(g, a, alpha, eps);
  const std::int64_t budget =
      options.phase_limit.value_or(iteration_bound(alpha, ag.seed_volume(), sigma_from_epsilon(eps)));
  if (budget < 0) throw ParameterError("phase limit must be nonnegative");
  const Capacity source_total = ag.source_total();

  LocalFlowResult result{FlowState(std::move(ag)), VertexSet(), false, false, std::nullopt, 0,
                         LocalFlowStats{}, InvariantMonitor(options.strict_invariants)};
  FlowState& fs = result.flow;
  InvariantMonitor& mon = result.invariants;
  const bool checking = options.check_invariants || options.strict_invariants;
  SaturatedSet bs;

  auto check_labels = [&](const DistanceLabels& d, const DistanceLabels* prev) {
    if (!checking) return;
    mon.check("local.layer_containment", layers_contained(fs, d),
              "layer outside the local graph at phase " + std::to_string(result.stats.phases));
    if (prev == nullptr) {
      mon.check("local.initial_sink_distance", !d.reaches_sink() || d.sink >= 3);
    } else {
      mon.check("local.labels_monotone", labels_monotone(*prev, d));
      mon.check("local.sink_distance_grows", !d.reaches_sink() || d.sink > prev->sink,
                "d(t) did not grow at phase " + std::to_string(result.stats.phases));
    }
  };

  DistanceLabels prev;
  DistanceLabels d;
  bool have_prev = false;
  for (std::int64_t i = 0; i < budget; ++i) {
    d = compute_distances(fs, Lengths::unit(), Scope::kLocal);
    check_labels(d, have_prev ? &prev : nullptr);
    if (!d.reaches_sink()) {
      result.exact = true;
      break;
    }
    BlockingResult br = blocking_flow(fs, d);
    if (br.value <= 0) throw InvariantViolation("blocking flow found no path to a reachable sink");
    ++result.stats.phases;
    bs = update_saturated_set(fs, std::move(bs));
    if (bs.sink_capacity() > source_total) {
      throw InvariantViolation("saturated sink capacity exceeds the source capacity");
    }
    if (checking) mon.check("local.saturated_volume", saturated_volume_ok(fs, bs));
    prev = std::move(d);
    have_prev = true;
  }
  if (!result.exact) {
    d = compute_distances(fs, Lengths::unit(), Scope::kLocal);
    check_labels(d, have_prev ? &prev : nullptr);
    if (!d.reaches_sink()) result.exact = true;
  }

  if (result.exact) {
    result.full_flow = fs.value() == source_total;
    result.cut = residual_source_side(fs, Scope::kLocal);
    if (!result.cut.empty()) result.cut_conductance = conductance(g, result.cut);
  } else {
    std::optional<LayerCut> lc = best_layer_cut(fs, d);
    if (!lc) throw InvariantViolation("no layer cut with defined conductance");
    result.cut = std::move(lc->set);
    result.cut_conductance = lc->conductance;
    result.layer = lc->layer;
  }
  if (checking) {
    mon.check("local.saturated_in_local_graph", [&] {
      for (Vertex v : fs.expanded_vertices()) {
        NodeId n = fs.find(v);
        if (!fs.is_seed(n) && !fs.is_saturated(n)) return false;
      }
      return true;
    }());
    fs.validate();
  }
  result.stats.phase_budget = budget;
  result.stats.touched_vertices = fs.num_nodes();
  result.stats.touched_volume = fs.expanded_volume();
  result.stats.saturated_volume = bs.volume();
  return result;
}

}  // namespace localflow
