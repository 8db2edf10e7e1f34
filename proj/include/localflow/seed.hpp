#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "localflow/graph.hpp"

namespace localflow {

struct ApprConfig {
  /// Teleport probability beta.
  double teleport = 0.1;
  /// Target volume; defaults to vol(V) / 2.
  std::optional<std::int64_t> volume_cap;
  /// Push threshold; defaults to 1 / (10 volume_cap).
  std::optional<double> r_max;
};

/// Sparse approximate personalized PageRank vector p with its residual r.
struct ApprVector {
  std::vector<std::pair<Vertex, double>> estimate;  // sorted by vertex
  std::vector<std::pair<Vertex, double>> residual;  // sorted by vertex
  double r_max = 0.0;
  std::size_t pushes = 0;
};

/// FIFO push from a single seed. On return every vertex u has residual below
/// r_max deg(u). If no push fires the estimate is the seed indicator.
ApprVector appr_push(const Graph& g, Vertex seed, const ApprConfig& config = {});

struct SweepResult {
  VertexSet set;
  Rational conductance;
  std::size_t prefix = 0;
};

/// Sorts the support by estimate / degree (descending, ties by vertex id)
/// and returns the lowest-conductance prefix of volume at most vol(V) / 2,
/// ties broken by the shortest prefix.
SweepResult sweep_cut(const Graph& g, const ApprVector& p);

}  // namespace localflow
