#include "localflow/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "localflow/errors.hpp"

namespace localflow {
namespace {

std::string strip_comment(const std::string& line, char marker) {
  const auto pos = line.find(marker);
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::int64_t> parse_ints(const std::string& text, std::size_t line_no) {
  std::vector<std::int64_t> out;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    std::int64_t x = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
      throw InputError("expected an integer, got '" + tok + "'", line_no);
    }
    out.push_back(x);
  }
  return out;
}

constexpr std::int64_t kMaxVertex = std::int64_t{1} << 31;

}  // namespace

Graph read_edgelist(std::istream& is) {
  std::vector<Edge> edges;
  std::int64_t max_id = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto xs = parse_ints(strip_comment(line, '#'), line_no);
    if (xs.empty()) continue;
    if (xs.size() != 2) throw InputError("expected two vertex ids", line_no);
    for (auto x : xs) {
      if (x < 0 || x >= kMaxVertex) throw InputError("vertex id out of range", line_no);
    }
    if (xs[0] == xs[1]) {
      throw InputError("self-loop on vertex " + std::to_string(xs[0]), line_no);
    }
    edges.push_back({static_cast<Vertex>(xs[0]), static_cast<Vertex>(xs[1])});
    max_id = std::max({max_id, xs[0], xs[1]});
  }
  return Graph::from_edges(static_cast<std::size_t>(max_id + 1), edges);
}

Graph read_metis(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::int64_t> header;
  while (header.empty() && std::getline(is, line)) {
    ++line_no;
    header = parse_ints(strip_comment(line, '%'), line_no);
  }
  if (header.empty()) throw InputError("missing METIS header", line_no);
  if (header.size() < 2 || header.size() > 4) {
    throw InputError("METIS header must be 'n m [fmt [ncon]]'", line_no);
  }
  if (header.size() >= 3 && header[2] != 0) {
    throw InputError("weighted METIS formats are not supported", line_no);
  }
  const std::int64_t n = header[0];
  const std::int64_t m = header[1];
  if (n < 0 || n >= kMaxVertex || m < 0) throw InputError("bad METIS header", line_no);
  const std::size_t header_line = line_no;

  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
  std::vector<std::size_t> adj_line(static_cast<std::size_t>(n), 0);
  std::int64_t v = 0;
  while (v < n && std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos &&
        line[line.find_first_not_of(" \t\r")] == '%') {
      continue;
    }
    adj_line[v] = line_no;
    for (auto w : parse_ints(line, line_no)) {
      if (w < 1 || w > n) throw InputError("neighbour id out of range", line_no);
      if (w - 1 == v) throw InputError("self-loop on vertex " + std::to_string(w), line_no);
      adj[v].push_back(static_cast<Vertex>(w - 1));
      if (w - 1 > v) edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(w - 1)});
    }
    ++v;
  }
  if (v < n) throw InputError("expected " + std::to_string(n) + " adjacency lines", line_no);
  while (std::getline(is, line)) {
    ++line_no;
    if (!parse_ints(strip_comment(line, '%'), line_no).empty()) {
      throw InputError("trailing data after the adjacency lines", line_no);
    }
  }
  for (std::int64_t u = 0; u < n; ++u) {
    std::vector<Vertex> fwd = adj[u];
    std::sort(fwd.begin(), fwd.end());
    for (Vertex w : fwd) {
      const auto& back = adj[w];
      if (std::count(back.begin(), back.end(), static_cast<Vertex>(u)) !=
          std::count(fwd.begin(), fwd.end(), w)) {
        throw InputError("adjacency of vertices " + std::to_string(u + 1) + " and " +
                         std::to_string(w + 1) + " is not symmetric",
                         adj_line[u]);
      }
    }
  }
  if (static_cast<std::int64_t>(edges.size()) != m) {
    throw InputError("header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()),
                     header_line);
  }
  return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

Graph load_graph(const std::string& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return format == GraphFormat::kMetis ? read_metis(in) : read_edgelist(in);
}

VertexSet read_vertex_set(std::istream& is, const Graph& g) {
  std::vector<Vertex> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    for (auto x : parse_ints(strip_comment(line, '#'), line_no)) {
      if (x < 0 || x >= static_cast<std::int64_t>(g.num_vertices())) {
        throw InputError("vertex " + std::to_string(x) + " is not in the graph", line_no);
      }
      ids.push_back(static_cast<Vertex>(x));
    }
  }
  return VertexSet(g, std::move(ids));
}

VertexSet load_vertex_set(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_vertex_set(in, g);
}

void write_edgelist(std::ostream& os, const Graph& g) {
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

void write_metis(std::ostream& os, const Graph& g) {
  os << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    bool first = true;
    for (Vertex w : g.neighbors(v)) {
      os << (first ? "" : " ") << w + 1;
      first = false;
    }
    os << '\n';
  }
}

GraphFormat parse_format(const std::string& name) {
  if (name == "edgelist") return GraphFormat::kEdgeList;
  if (name == "metis") return GraphFormat::kMetis;
  throw InputError("unknown graph format '" + name + "'");
}

}  // namespace localflow
