#pragma once

#include <cstdint>
#include <optional>

#include "localflow/graph.hpp"
#include "localflow/rational.hpp"

namespace localflow {

/// Scaled integer capacity. All capacities of an augmented graph are
/// multiplied by a common scale L so that they are integral.
using Capacity = std::int64_t;

/// Flow network G_A(alpha, eps) built over a graph G and seed set A:
///   s -> u for u in A with capacity deg(u),
///   u <-> v for each edge of G with capacity 1/alpha in both directions,
///   v -> t for v outside A with capacity eps * deg(v).
/// Capacities are stored implicitly; the object is O(|A|) in size. Sink
/// capacities never exceed vol(A) (the total source capacity), and an
/// infinite eps yields exactly vol(A) on every sink arc.
class AugmentedGraph {
 public:
  /// Throws ParameterError unless A is nonempty, vol(A) > 0,
  /// vol(A) <= vol(V - A), 0 < alpha <= 1, and eps >= vol(A) / vol(V - A).
  static AugmentedGraph build(const Graph& g, VertexSet seeds, Rational alpha, Epsilon eps);

  /// Same graph, seeds and eps at a different alpha.
  AugmentedGraph with_alpha(Rational alpha) const;

  const Graph& graph() const { return *graph_; }
  const VertexSet& seeds() const { return seeds_; }
  bool is_seed(Vertex v) const { return seeds_.contains(v); }
  const Rational& alpha() const { return alpha_; }
  const Epsilon& eps() const { return eps_; }
  std::int64_t seed_volume() const { return seeds_.volume(); }

  /// Common scale L.
  Capacity scale() const { return scale_; }
  /// L / alpha, the capacity of each direction of each original edge.
  Capacity edge_capacity() const { return edge_cap_; }
  Capacity source_capacity(Vertex u) const { return scale_ * graph_->degree(u); }
  /// Capacity of v -> t; zero for seed vertices, which have no sink arc.
  Capacity sink_capacity(Vertex v) const;
  /// L * vol(A), the value of a full flow.
  Capacity source_total() const { return scale_ * seeds_.volume(); }

 private:
  AugmentedGraph() = default;

  const Graph* graph_ = nullptr;
  VertexSet seeds_;
  Rational alpha_;
  Epsilon eps_ = Epsilon::infinite();
  Capacity scale_ = 1;
  Capacity edge_cap_ = 0;
  Capacity sink_num_ = 0;  // sink capacity is deg * sink_num_ / sink_den_
  Capacity sink_den_ = 1;
};

/// eps_sigma = 1 / (3 (1/sigma - 1)), infinite at sigma = 1. Throws
/// ParameterError unless 0 < sigma <= 1.
Epsilon epsilon_from_sigma(const Rational& sigma);

/// Inverse of epsilon_from_sigma: sigma = 3 eps / (1 + 3 eps).
Rational sigma_from_epsilon(const Epsilon& eps);

/// Smallest sigma whose eps_sigma is at least vol(A) / vol(V - A).
Rational min_feasible_sigma(const Graph& g, const VertexSet& a);

/// epsilon_from_sigma with the range check against vol(A) / vol(V - A);
/// the error message names the smallest feasible sigma.
Epsilon epsilon_sigma(const Rational& sigma, const Graph& g, const VertexSet& a);

/// Capacity of the s-t cut ({s} + S, rest) in scaled units.
Capacity scaled_cut_value(const AugmentedGraph& ag, const VertexSet& s);

/// scaled_cut_value / L, i.e. |E(S, V-S)|/alpha + vol(A - S) + sum of sink
/// capacities over S - A.
Rational cut_value(const AugmentedGraph& ag, const VertexSet& s);

/// vol(A) - (vol(A & S) - eps vol(S - A) - |E(S, V-S)|/alpha). Equal to
/// cut_value whenever no sink arc of S - A is clamped. Throws ParameterError
/// for an infinite eps with S - A nonempty.
Rational cut_value_closed_form(const AugmentedGraph& ag, const VertexSet& s);

struct CutCertificate {
  Rational cut_value;
  Rational conductance;
};

/// For a cut of value below vol(A) returns its value and phi(S), which is
/// then strictly below alpha. Returns nullopt when the cut value is at least
/// vol(A).
std::optional<CutCertificate> cut_certificate_check(const AugmentedGraph& ag, const VertexSet& s);

/// alpha ((1 + eps) vol(A & S) / vol(S) - eps): lower bound on
/// |E(S, V-S)| / vol(S) implied by a full flow. nullopt stands for minus
/// infinity (infinite eps with S - A nonempty). Throws for vol(S) = 0.
std::optional<Rational> flow_certificate_bound(const AugmentedGraph& ag, const VertexSet& s);

}  // namespace localflow
