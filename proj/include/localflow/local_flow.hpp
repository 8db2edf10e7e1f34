#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "localflow/augmented.hpp"
#include "localflow/flow.hpp"
#include "localflow/graph.hpp"

namespace localflow {

/// Vertices of V - A whose arc to t is saturated. Only grows.
class SaturatedSet {
 public:
  const std::vector<Vertex>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  std::int64_t volume() const { return volume_; }
  /// Sum of the sink capacities of the members (scaled).
  Capacity sink_capacity() const { return sink_capacity_; }

  VertexSet to_set(const Graph& g) const { return VertexSet(g, members_); }

 private:
  friend SaturatedSet update_saturated_set(FlowState& fs, SaturatedSet bs);

  std::vector<Vertex> members_;
  std::int64_t volume_ = 0;
  Capacity sink_capacity_ = 0;
};

/// Adds every touched non-seed vertex whose sink arc is saturated and marks
/// it in `fs` so local traversals expand it.
SaturatedSet update_saturated_set(FlowState& fs, SaturatedSet bs);

/// The saturated sink arcs carry at most the current flow value, and when
/// none of them is clamped, eps vol(B) <= vol(A).
bool saturated_volume_ok(const FlowState& fs, const SaturatedSet& bs);

/// The part of the augmented graph a local phase may use: vertices
/// {s, t} + A + B + N(A + B), arcs s -> A, v -> t for v in B + N(A + B),
/// and every original edge with an endpoint in A + B.
struct LocalGraphView {
  VertexSet expandable;  // A + B
  VertexSet frontier;    // N(A + B)
  VertexSet vertices;    // A + B + N(A + B)
  std::int64_t edges = 0;
};

LocalGraphView local_graph(const AugmentedGraph& ag, const SaturatedSet& bs);

/// Unit-length phase restricted to the local graph: distances then a
/// blocking flow. Equivalent to the same phase on the whole augmented graph.
BlockingResult local_blocking_flow(FlowState& fs, const SaturatedSet& bs);

/// ceil((5 / alpha) ln(3 vol(A) / sigma)), the phase budget of local_flow.
std::int64_t iteration_bound(const Rational& alpha, std::int64_t vol_a, const Rational& sigma);

struct LocalFlowOptions {
  /// Overrides the phase budget. Intended for tests.
  std::optional<std::int64_t> phase_limit;
  /// Record runtime invariant checks in the result.
  bool check_invariants = false;
  /// Throw InvariantViolation on the first failed check.
  bool strict_invariants = false;
};

struct LocalFlowStats {
  std::size_t phases = 0;          // augmenting phases run
  std::int64_t phase_budget = 0;   // I
  std::size_t touched_vertices = 0;
  std::int64_t touched_volume = 0;  // volume of the expanded vertices
  std::int64_t saturated_volume = 0;
};

struct LocalFlowResult {
  FlowState flow;
  /// Min cut when exact, chosen layer cut otherwise; empty for a full flow.
  VertexSet cut;
  bool exact = false;
  bool full_flow = false;
  std::optional<Rational> cut_conductance;
  /// Index j of the chosen layer cut; 0 when exact.
  int layer = 0;
  LocalFlowStats stats;
  InvariantMonitor invariants;
};

/// Local Dinic on G_A(alpha, eps). Runs at most I unit-length phases on the
/// local graph. Either the flow becomes maximum (exact; the cut is the
/// residual source side) or the lowest-conductance layer cut S_j,
/// 1 <= j <= d(t) - 2, is returned.
LocalFlowResult local_flow(const Graph& g, const VertexSet& a, const Rational& alpha,
                           const Epsilon& eps, const LocalFlowOptions& options = {});

struct LayerCut {
  VertexSet set;
  Rational conductance;
  int layer = 0;
};

/// Lowest-conductance prefix S_j = {v : 1 <= d(v) <= j}, 1 <= j <= d(t) - 2,
/// ties broken by the smallest j. nullopt if no prefix has a defined
/// conductance.
std::optional<LayerCut> best_layer_cut(const FlowState& fs, const DistanceLabels& d);

/// Layer containment for the current labels: layers 1 .. d(t)-2 lie in
/// A + B and layer d(t)-1 in A + B + N(A + B); also d(t) >= 3.
bool layers_contained(const FlowState& fs, const DistanceLabels& d);

}  // namespace localflow
