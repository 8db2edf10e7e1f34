#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "localflow/certify.hpp"
#include "localflow/flow.hpp"
#include "localflow/graph.hpp"
#include "localflow/seed.hpp"

namespace localflow {

enum class Solver { kApprox, kExact };

enum class ProbeOutcome { kFullFlow, kCutFound };

struct Probe {
  Rational alpha;
  ProbeOutcome outcome = ProbeOutcome::kFullFlow;
  /// Conductance of the probe's cut, when one was found.
  std::optional<Rational> conductance;
  /// True when the probe's flow is maximum (always for the exact solver).
  bool exact = true;
  std::size_t phases = 0;
  std::int64_t touched_volume = 0;
};

enum class ImproveOutcome { kImproved, kNoImprovement };

struct ImproveOptions {
  Solver solver = Solver::kApprox;
  bool check_invariants = false;
  /// Approximate solver only: overrides the phase budget.
  std::optional<std::int64_t> phase_limit;
};

struct ImproveResult {
  ImproveOutcome outcome = ImproveOutcome::kNoImprovement;
  /// Best cut found; empty for kNoImprovement.
  VertexSet set;
  std::optional<Rational> conductance;
  std::int64_t volume = 0;
  /// Upper end of the final bracket.
  Rational alpha_max{1};
  /// Probe that produced `set`.
  std::optional<Probe> source_probe;
  std::vector<Probe> trace;
  /// Largest per-probe volume of expanded vertices.
  std::int64_t touched_volume = 0;
  /// Volume of the union of expanded vertices over all probes.
  std::int64_t union_touched_volume = 0;
  std::size_t phases = 0;
  /// Flow of the final solve at alpha_max; a full flow for kNoImprovement.
  std::optional<FlowState> final_flow;
  InvariantMonitor invariants;
};

/// Binary search over dyadic alpha in [0, 1]. A full flow at alpha moves the
/// lower end up, a cut moves the upper end down; the search stops once
/// alpha_max - alpha_min <= eps alpha_min and solves once more at alpha_max.
/// The lowest-conductance cut seen is returned (ties: smaller volume, then
/// lexicographically smaller set). A full flow at alpha = 1 means no
/// improvement. The search also stops at a cut of conductance 0.
ImproveResult local_improve(const Graph& g, const VertexSet& a, const Epsilon& eps_sigma,
                            const Rational& eps, const ImproveOptions& options = {});

/// local_improve with eps_sigma from sigma (range checked) and eps = 1/5.
ImproveResult local_improve_overlap(const Graph& g, const VertexSet& a, const Rational& sigma,
                                    const ImproveOptions& options = {});

struct PipelineResult {
  SweepResult seed_set;
  ImproveResult improved;
};

/// Personalized PageRank sweep from one vertex, then local_improve_overlap
/// on the sweep set.
PipelineResult pipeline_nibble_improve(const Graph& g, Vertex seed, const Rational& sigma,
                                       const ApprConfig& config = {},
                                       const ImproveOptions& options = {});

std::string to_string(ProbeOutcome o);
std::string to_string(ImproveOutcome o);
std::string to_string(Solver s);

}  // namespace localflow
