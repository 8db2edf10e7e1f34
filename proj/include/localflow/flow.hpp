#pragma once

#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "localflow/augmented.hpp"
#include "localflow/graph.hpp"

namespace localflow {

/// Dense index of a touched vertex inside one FlowState.
using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = UINT32_MAX;

/// Which vertices a traversal may expand (scan the original edges of).
///   kLocal:  only seeds and vertices marked saturated; every other touched
///            vertex contributes just its arc to t.
///   kGlobal: every vertex.
enum class Scope { kLocal, kGlobal };

/// Flow on an augmented graph, stored sparsely. Only touched vertices own
/// storage, so the footprint is proportional to the explored region rather
/// than to |V|. Original edges carry antisymmetric flow per half-arc.
class FlowState {
 public:
  explicit FlowState(AugmentedGraph ag);

  const AugmentedGraph& network() const { return ag_; }
  const Graph& graph() const { return ag_.graph(); }

  /// Total flow into t.
  Capacity value() const { return value_; }

  std::size_t num_nodes() const { return nodes_.size(); }
  NodeId find(Vertex v) const;
  NodeId touch(Vertex v);
  Vertex vertex(NodeId n) const { return nodes_[n].vertex; }
  std::int64_t degree(NodeId n) const { return graph().degree(nodes_[n].vertex); }
  std::span<const NodeId> seed_nodes() const { return seed_nodes_; }

  bool is_seed(NodeId n) const { return nodes_[n].flags & kSeedFlag; }
  bool is_expanded(NodeId n) const { return nodes_[n].arc_begin != kNoArc; }
  bool is_saturated(NodeId n) const { return nodes_[n].flags & kSaturatedFlag; }
  /// Membership in the set used to classify arcs as modern (both endpoints
  /// in the set) or classical. Seeds always belong to it.
  bool is_modern(NodeId n) const { return nodes_[n].flags & (kSeedFlag | kModernFlag); }
  void mark_saturated(NodeId n) { nodes_[n].flags |= kSaturatedFlag; }
  void set_modern(NodeId n, bool on);

  /// Materialise the original arcs of n (and create nodes for its
  /// neighbours). Idempotent.
  void expand(NodeId n);

  // Arcs of an expanded node occupy [arc_begin(n), arc_begin(n) + degree(n)),
  // in the adjacency order of the graph.
  std::size_t arc_begin(NodeId n) const { return nodes_[n].arc_begin; }
  NodeId arc_head(std::size_t a) const { return arc_head_[a]; }
  Capacity arc_flow(std::size_t a) const { return arc_flow_[a]; }
  Capacity arc_residual(std::size_t a) const { return ag_.edge_capacity() - arc_flow_[a]; }
  /// Residual capacity of the opposite direction of arc a.
  Capacity arc_reverse_residual(std::size_t a) const {
    return ag_.edge_capacity() + arc_flow_[a];
  }
  void push_arc(std::size_t a, Capacity x);

  Capacity source_flow(NodeId n) const { return nodes_[n].source_flow; }
  Capacity source_residual(NodeId n) const;
  Capacity sink_flow(NodeId n) const { return nodes_[n].sink_flow; }
  Capacity sink_capacity(NodeId n) const { return nodes_[n].sink_cap; }
  Capacity sink_residual(NodeId n) const { return nodes_[n].sink_cap - nodes_[n].sink_flow; }
  void push_source(NodeId n, Capacity x);
  void push_sink(NodeId n, Capacity x);

  // Queries by vertex id; zero for untouched vertices.
  Capacity source_flow_of(Vertex v) const;
  Capacity sink_flow_of(Vertex v) const;
  /// Flow on half-arc `a` of the graph, which must leave vertex u.
  Capacity edge_flow(Vertex u, ArcIndex a) const;

  std::vector<Vertex> touched_vertices() const;
  std::vector<Vertex> expanded_vertices() const;
  std::int64_t expanded_volume() const { return expanded_volume_; }

  /// Checks capacities, antisymmetry, conservation and the flow value.
  /// Throws InvariantViolation.
  void validate() const;

 private:
  static constexpr std::size_t kNoArc = SIZE_MAX;
  static constexpr std::uint8_t kSeedFlag = 1;
  static constexpr std::uint8_t kSaturatedFlag = 2;
  static constexpr std::uint8_t kModernFlag = 4;

  struct Node {
    Vertex vertex = 0;
    std::uint8_t flags = 0;
    Capacity source_flow = 0;
    Capacity sink_flow = 0;
    Capacity sink_cap = 0;
    std::size_t arc_begin = kNoArc;
  };

  AugmentedGraph ag_;
  std::unordered_map<Vertex, NodeId> index_;
  std::vector<Node> nodes_;
  std::vector<NodeId> seed_nodes_;
  std::vector<NodeId> arc_head_;
  std::vector<Capacity> arc_flow_;
  std::vector<std::size_t> arc_mate_;  // kNoArc while the head is unexpanded
  Capacity value_ = 0;
  std::int64_t expanded_volume_ = 0;
};

/// Arc length family for distance computations.
struct Lengths {
  enum class Kind { kUnit, kBinary };
  Kind kind = Kind::kUnit;
  /// Binary lengths only: an arc is short (length 0) iff it is modern and
  /// its residual is at least 3 delta, or it is a special arc.
  Capacity delta = 0;

  static Lengths unit() { return {}; }
  static Lengths binary(Capacity delta) { return {Kind::kBinary, delta}; }
};

/// Residual distances from s. Labels are exact wherever they are finite.
struct DistanceLabels {
  static constexpr int kInf = INT_MAX;

  std::vector<int> dist;  // by NodeId; absent nodes are at infinity
  int sink = kInf;
  /// True when every reachable node was scanned: the search neither stopped
  /// at the layer of t nor passed an unexpanded node.
  bool complete = false;

  int at(NodeId n) const { return n < dist.size() ? dist[n] : kInf; }
  bool reaches_sink() const { return sink != kInf; }
};

/// Shortest residual distances from s under unit or binary lengths.
/// With stop_at_sink the search ends once every node closer than t has been
/// scanned; nodes beyond are left at infinity.
DistanceLabels compute_distances(FlowState& fs, const Lengths& len, Scope scope,
                                 bool stop_at_sink = true);

/// Length of arc a leaving node u under `len`, including the special-arc
/// rule for binary lengths (both endpoints at the same distance, residual in
/// [2 delta, 3 delta), reverse residual at least 3 delta).
int arc_length(const FlowState& fs, const Lengths& len, const DistanceLabels& d, NodeId u,
               std::size_t a);
/// True if arc a leaving u is modern: both endpoints are seeds or marked.
bool is_modern_arc(const FlowState& fs, NodeId u, std::size_t a);

struct BlockingResult {
  Capacity value = 0;
  std::size_t paths = 0;
};

/// Blocking flow on the unit-length admissible graph of `d`.
BlockingResult blocking_flow(FlowState& fs, const DistanceLabels& d);

enum class BinaryOutcome { kDeltaFlow, kBlockingFlow };

struct BinaryBlockingResult {
  BinaryOutcome outcome = BinaryOutcome::kBlockingFlow;
  Capacity value = 0;
  std::size_t contracted_nodes = 0;  // nodes inside components of size > 1
};

/// Flow of value exactly delta, or a blocking flow of smaller value, on the
/// binary-length admissible graph of `d` (computed with Lengths::binary(delta)).
/// Strongly connected groups of short arcs are contracted; flow through a
/// group is routed along an in-tree and an out-tree of short arcs.
BinaryBlockingResult binary_blocking_flow(FlowState& fs, const DistanceLabels& d,
                                          Capacity delta);

/// Vertices reachable from s in the residual graph (the minimal min cut once
/// the flow is maximum).
VertexSet residual_source_side(FlowState& fs, Scope scope);

/// Running tally of runtime invariant checks.
class InvariantMonitor {
 public:
  struct Counter {
    std::size_t checks = 0;
    std::size_t violations = 0;
    std::string first_failure;
  };

  /// When strict, a failed check throws InvariantViolation.
  explicit InvariantMonitor(bool strict = false) : strict_(strict) {}

  void check(std::string_view name, bool ok, std::string_view detail = {});
  void merge(const InvariantMonitor& other);

  const std::map<std::string, Counter, std::less<>>& counters() const { return counters_; }
  std::size_t total_checks() const;
  std::size_t total_violations() const;
  bool clean() const { return total_violations() == 0; }
  std::string summary() const;

 private:
  bool strict_;
  std::map<std::string, Counter, std::less<>> counters_;
};

/// d'(u) >= d(u) on every node labelled by both, and d'(t) >= d(t).
bool labels_monotone(const DistanceLabels& before, const DistanceLabels& after);

struct MaxFlowResult {
  FlowState flow;
  VertexSet min_cut;
  std::size_t phases = 0;
};

/// Dinic's algorithm on the whole augmented graph; the reference solver.
/// With a monitor, distance monotonicity and strict growth of d(t) per phase
/// are checked on complete labels.
MaxFlowResult global_max_flow(const AugmentedGraph& ag, InvariantMonitor* monitor = nullptr);

}  // namespace localflow
