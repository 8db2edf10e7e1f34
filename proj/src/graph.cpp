#include "localflow/graph.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "localflow/errors.hpp"

namespace localflow {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u >= n || e.v >= n) {
      throw ParameterError("edge " + std::to_string(i) + " has endpoint out of range");
    }
    if (e.u == e.v) throw ParameterError("self-loop at vertex " + std::to_string(e.u));
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.heads_.resize(2 * edges.size());
  g.mates_.resize(2 * edges.size());
  g.edge_arc_.resize(edges.size());
  std::vector<ArcIndex> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    ArcIndex a = fill[e.u]++;
    ArcIndex b = fill[e.v]++;
    g.heads_[a] = e.v;
    g.heads_[b] = e.u;
    g.mates_[a] = b;
    g.mates_[b] = a;
    g.edge_arc_[i] = a;
  }
  return g;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_arc_.size());
  for (ArcIndex a : edge_arc_) out.push_back({heads_[mates_[a]], heads_[a]});
  return out;
}

VertexSet::VertexSet(const Graph& g, std::vector<Vertex> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  for (Vertex v : ids_) {
    if (!g.contains(v)) throw ParameterError("vertex " + std::to_string(v) + " out of range");
    volume_ += g.degree(v);
  }
}

VertexSet VertexSet::all(const Graph& g) {
  std::vector<Vertex> ids(g.num_vertices());
  for (std::size_t v = 0; v < ids.size(); ++v) ids[v] = static_cast<Vertex>(v);
  return VertexSet(g, std::move(ids));
}

bool VertexSet::contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

std::int64_t volume(const Graph& g, std::span<const Vertex> s) {
  std::int64_t vol = 0;
  for (Vertex v : s) {
    if (!g.contains(v)) throw ParameterError("vertex " + std::to_string(v) + " out of range");
    vol += g.degree(v);
  }
  return vol;
}

std::int64_t boundary_edges(const Graph& g, const VertexSet& s) {
  std::int64_t cut = 0;
  for (Vertex u : s) {
    for (Vertex v : g.neighbors(u)) {
      if (!s.contains(v)) ++cut;
    }
  }
  return cut;
}

Rational conductance(const Graph& g, const VertexSet& s) {
  std::int64_t denom = std::min(s.volume(), g.volume() - s.volume());
  if (denom <= 0) throw ParameterError("conductance undefined: zero volume side");
  return Rational(boundary_edges(g, s), denom);
}

VertexSet neighbors(const Graph& g, const VertexSet& s) {
  std::vector<Vertex> out;
  for (Vertex u : s) {
    for (Vertex v : g.neighbors(u)) {
      if (!s.contains(v)) out.push_back(v);
    }
  }
  return VertexSet(g, std::move(out));
}

Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  if (s.empty()) throw ParameterError("induced subgraph of the empty set");
  std::vector<Edge> edges;
  auto ids = s.members();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    Vertex u = ids[i];
    for (ArcIndex a = g.arc_begin(u); a < g.arc_end(u); ++a) {
      Vertex v = g.arc_head(a);
      if (v < u) {
        auto it = std::lower_bound(ids.begin(), ids.end(), v);
        if (it != ids.end() && *it == v) {
          edges.push_back({static_cast<Vertex>(it - ids.begin()), static_cast<Vertex>(i)});
        }
      }
    }
  }
  return Graph::from_edges(ids.size(), edges);
}

VertexSet complement(const Graph& g, const VertexSet& s) {
  std::vector<Vertex> out;
  out.reserve(g.num_vertices() - s.size());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (!s.contains(static_cast<Vertex>(v))) out.push_back(static_cast<Vertex>(v));
  }
  return VertexSet(g, std::move(out));
}

VertexSet set_union(const Graph& g, const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(g, std::move(out));
}

VertexSet set_intersection(const Graph& g, const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(g, std::move(out));
}

VertexSet set_difference(const Graph& g, const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(g, std::move(out));
}

}  // namespace localflow
