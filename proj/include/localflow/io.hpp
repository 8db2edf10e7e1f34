#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "localflow/graph.hpp"

namespace localflow {

enum class GraphFormat { kEdgeList, kMetis };

/// Edge list: one "u v" pair per line, 0-based ids, '#' starts a comment,
/// repeated pairs become parallel edges. n is one more than the largest id.
Graph read_edgelist(std::istream& is);

/// METIS: header "n m [fmt]" then one 1-based adjacency line per vertex;
/// '%' starts a comment. Weighted formats are rejected.
Graph read_metis(std::istream& is);

/// Throws InputError (with the line number where one applies).
Graph load_graph(const std::string& path, GraphFormat format);

/// Whitespace-separated 0-based vertex ids; '#' comments.
VertexSet read_vertex_set(std::istream& is, const Graph& g);
VertexSet load_vertex_set(const std::string& path, const Graph& g);

void write_edgelist(std::ostream& os, const Graph& g);
void write_metis(std::ostream& os, const Graph& g);

GraphFormat parse_format(const std::string& name);

}  // namespace localflow
