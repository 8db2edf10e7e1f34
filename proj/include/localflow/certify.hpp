#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "localflow/augmented.hpp"
#include "localflow/flow.hpp"
#include "localflow/graph.hpp"

namespace localflow {

/// Demand that sends exactly c1 deg(u) from every u in `sources` and lets
/// every other vertex v absorb at most c2 deg(v).
struct BiDemand {
  VertexSet sources;
  Rational c1;
  Rational c2;
};

struct RoutingReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks that f (in the scaled units of its network) routes the demand with
/// congestion at most `congestion` on every original edge, plus the usual
/// flow-state invariants.
RoutingReport verify_bidemand_routing(const FlowState& f, const BiDemand& demand,
                                      const Rational& congestion);

/// An s-t flow path; s and t are implicit. vertices.front() is a seed,
/// vertices.back() is not.
struct FlowPath {
  std::vector<Vertex> vertices;
  Capacity amount = 0;

  /// Number of arcs including the arcs at s and t.
  std::size_t arcs() const { return vertices.size() + 1; }
};

struct PathDecomposition {
  Capacity scale = 1;
  Capacity total = 0;
  /// Flow removed by cancelling cycles before peeling paths.
  Capacity cycle_flow = 0;
  std::vector<FlowPath> paths;
};

/// Cancels flow cycles, then peels shortest paths off the acyclic remainder.
PathDecomposition decompose_paths(const FlowState& f);

/// alpha f(S, V-S) / L, where f(S, V-S) sums the paths that start in S and
/// end outside S.
Rational expansion_lower_bound(const PathDecomposition& paths, const AugmentedGraph& ag,
                               const VertexSet& s);

/// True iff every path has at most max_arcs arcs.
bool path_length_certificate(const PathDecomposition& paths, std::int64_t max_arcs);

/// |E(S, V-S)| / (vol(S & A) - vol(S - A) vol(A) / vol(V - A)); nullopt when
/// the denominator is not positive.
std::optional<Rational> quotient_score(const Graph& g, const VertexSet& a, const VertexSet& s);

/// One minus the second eigenvalue of the lazy random walk on G[B]; 0 when
/// G[B] is disconnected or has fewer than two vertices. Power iteration with
/// deflation, tolerance 1e-9.
double spectral_gap(const Graph& g, const VertexSet& b);

/// spectral_gap / ln vol_B(B), with vol_B the volume inside G[B].
double conn_proxy(const Graph& g, const VertexSet& b);

/// Self-contained text certificate of a full flow.
struct FlowCertificate {
  Rational alpha;
  Epsilon eps = Epsilon::infinite();
  Capacity scale = 1;
  std::int64_t vol_a = 0;
  Capacity flow_value = 0;
  std::vector<Vertex> seeds;
  std::vector<FlowPath> paths;
};

FlowCertificate make_certificate(const FlowState& f);
void write_certificate(std::ostream& os, const FlowCertificate& cert);
/// Throws InputError with the offending line.
FlowCertificate read_certificate(std::istream& is);

/// Validates a certificate against g: parameters, seeds, path adjacency, the
/// full source demand, sink capacities and edge capacities.
RoutingReport validate_certificate(const Graph& g, const FlowCertificate& cert);

}  // namespace localflow
