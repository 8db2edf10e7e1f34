#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "localflow/rational.hpp"

namespace localflow {

using Vertex = std::uint32_t;
/// Index of a half-arc in the adjacency arrays of a Graph.
using ArcIndex = std::size_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
};

/// Immutable undirected multigraph in compressed adjacency form. Parallel
/// edges are kept; self-loops are rejected. Every undirected edge appears as
/// two half-arcs and each half-arc knows its mate.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return heads_.size() / 2; }
  /// vol(V) = 2m.
  std::int64_t volume() const { return static_cast<std::int64_t>(heads_.size()); }

  std::int64_t degree(Vertex v) const {
    return static_cast<std::int64_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {heads_.data() + offsets_[v], heads_.data() + offsets_[v + 1]};
  }

  ArcIndex arc_begin(Vertex v) const { return offsets_[v]; }
  ArcIndex arc_end(Vertex v) const { return offsets_[v + 1]; }
  Vertex arc_head(ArcIndex a) const { return heads_[a]; }
  ArcIndex arc_mate(ArcIndex a) const { return mates_[a]; }

  /// Edge list with each undirected edge once, in input order.
  std::vector<Edge> edges() const;

  bool contains(Vertex v) const { return v < num_vertices(); }

 private:
  std::vector<ArcIndex> offsets_;
  std::vector<Vertex> heads_;
  std::vector<ArcIndex> mates_;
  std::vector<ArcIndex> edge_arc_;  // first half-arc of each input edge
};

/// Sorted set of distinct vertices of one graph with its volume cached.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(const Graph& g, std::vector<Vertex> ids);

  static VertexSet all(const Graph& g);

  std::span<const Vertex> members() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(Vertex v) const;
  std::int64_t volume() const { return volume_; }

  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.ids_ == b.ids_; }
  /// Lexicographic order on the sorted member lists.
  friend bool operator<(const VertexSet& a, const VertexSet& b) { return a.ids_ < b.ids_; }

 private:
  std::vector<Vertex> ids_;
  std::int64_t volume_ = 0;
};

std::int64_t volume(const Graph& g, std::span<const Vertex> s);

/// |E(S, V - S)|, counting parallel edges with multiplicity.
std::int64_t boundary_edges(const Graph& g, const VertexSet& s);

/// |E(S, V - S)| / min(vol(S), vol(V - S)). Throws ParameterError when the
/// minimum volume is zero.
Rational conductance(const Graph& g, const VertexSet& s);

/// External neighbours of S: vertices outside S adjacent to S.
VertexSet neighbors(const Graph& g, const VertexSet& s);

/// Subgraph induced by S; vertex i of the result is s.members()[i].
Graph induced_subgraph(const Graph& g, const VertexSet& s);

VertexSet complement(const Graph& g, const VertexSet& s);
VertexSet set_union(const Graph& g, const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const Graph& g, const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const Graph& g, const VertexSet& a, const VertexSet& b);

}  // namespace localflow
