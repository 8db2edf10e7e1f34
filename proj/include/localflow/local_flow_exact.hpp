#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "localflow/augmented.hpp"
#include "localflow/flow.hpp"
#include "localflow/graph.hpp"

namespace localflow {

/// ceil(sqrt(3 vol(A) / sigma)): the number of binary blocking flows per
/// outer phase is 4 times this value.
std::int64_t phase_length(std::int64_t vol_a, const Rational& sigma);

/// Length of arc a leaving u under l-hat: l-tilde on modern arcs, 1 on
/// classical arcs (any arc touching s or t, or leaving the modern set).
int length_hat(const FlowState& fs, Capacity delta, const DistanceLabels& d, NodeId u,
               std::size_t a);

/// Minimum residual capacity over the layer cuts S_j = {s} + {v : d(v) <= j},
/// 0 <= j <= d(t) - 2. Requires labels that reach t.
Capacity min_layer_cut_residual(const FlowState& fs, const DistanceLabels& d);

/// Summary of one outer phase: the bound F on the remaining flow at its
/// start, the step delta, and what the phase achieved.
struct PhaseReport {
  Capacity bound = 0;  // F
  Capacity delta = 0;
  std::int64_t lambda = 0;
  Capacity flow_gain = 0;
  std::size_t delta_flows = 0;
  std::size_t blocking_flows = 0;
  int final_sink_distance = DistanceLabels::kInf;
  /// Residual capacity of the best layer cut after the phase; 0 when t is
  /// unreachable.
  Capacity layer_cut_residual = 0;
  bool disconnected = false;
};

/// True iff the phase certifies that the remaining flow is at most F/2:
/// it pushed at least F/2, or a layer cut has residual capacity at most F/2.
bool phase_progress_check(const PhaseReport& report);

struct ExactFlowOptions {
  bool check_invariants = false;
  bool strict_invariants = false;
};

struct ExactFlowStats {
  std::int64_t lambda = 0;
  std::size_t outer_phases = 0;
  std::size_t uncertified_phases = 0;  // phases repeated at the same F
  std::size_t binary_calls = 0;
  std::size_t delta_flows = 0;
  std::size_t blocking_flows = 0;
  std::size_t touched_vertices = 0;
  std::int64_t touched_volume = 0;
  std::int64_t saturated_volume = 0;
  std::size_t max_contracted_nodes = 0;
};

struct ExactFlowResult {
  FlowState flow;
  /// Residual source side of the maximum flow; empty for a full flow.
  VertexSet cut;
  bool full_flow = false;
  std::optional<Rational> cut_conductance;
  ExactFlowStats stats;
  std::vector<PhaseReport> phases;
  InvariantMonitor invariants;
};

/// Local maximum flow on G_A(alpha, eps) by binary blocking flows with step
/// delta = ceil(F / (6 lambda)), F halving from L vol(A). The result is
/// always a maximum flow.
/// Arcs are classified modern or classical against A plus the saturated set
/// as of the start of each outer phase; traversals always expand every
/// saturated vertex.
ExactFlowResult local_flow_exact(const Graph& g, const VertexSet& a, const Rational& alpha,
                                 const Epsilon& eps, const ExactFlowOptions& options = {});

}  // namespace localflow
