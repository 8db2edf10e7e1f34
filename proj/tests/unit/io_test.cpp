#include <gtest/gtest.h>

#include <sstream>

#include "generators.hpp"
#include "localflow/errors.hpp"
#include "localflow/io.hpp"

namespace localflow {
namespace {

std::vector<std::pair<Vertex, Vertex>> edge_pairs(const Graph& g) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int error_line(const std::string& text, GraphFormat f) {
  std::istringstream is(text);
  try {
    if (f == GraphFormat::kEdgeList) {
      read_edgelist(is);
    } else {
      read_metis(is);
    }
  } catch (const InputError& e) {
    return static_cast<int>(e.line());
  }
  return -1;
}

TEST(EdgeList, Path) {
  std::istringstream is("# path\n0 1\n1 2\n\n2 3\n");
  Graph g = read_edgelist(is);
  EXPECT_EQ(g.num_vertices(), 4u);
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.degree(0), 1);
  EXPECT_EQ(g.degree(1), 2);
}

TEST(EdgeList, ParallelEdgesAndIsolatedIds) {
  std::istringstream is("0 1\n1 0\n4 1\n");
  Graph g = read_edgelist(is);
  EXPECT_EQ(g.num_vertices(), 5u);
  EXPECT_EQ(g.degree(1), 3);
  EXPECT_EQ(g.degree(2), 0);
}

TEST(EdgeList, Errors) {
  EXPECT_EQ(error_line("0 0\n", GraphFormat::kEdgeList), 1);
  EXPECT_EQ(error_line("0 1\n# c\n1 x\n", GraphFormat::kEdgeList), 3);
  EXPECT_EQ(error_line("0 1\n1 2 3\n", GraphFormat::kEdgeList), 2);
  EXPECT_EQ(error_line("0 -1\n", GraphFormat::kEdgeList), 1);
  EXPECT_EQ(error_line("0\n", GraphFormat::kEdgeList), 1);
}

TEST(Metis, MatchesEdgeList) {
  std::istringstream m("3 2\n2\n1 3\n2\n");
  std::istringstream e("0 1\n1 2\n");
  Graph a = read_metis(m);
  Graph b = read_edgelist(e);
  EXPECT_EQ(a.num_vertices(), b.num_vertices());
  EXPECT_EQ(edge_pairs(a), edge_pairs(b));
}

TEST(Metis, Errors) {
  EXPECT_EQ(error_line("3 3\n2\n1 3\n2\n", GraphFormat::kMetis), 1);  // count mismatch
  EXPECT_GT(error_line("3 2 1\n2\n1 3\n2\n", GraphFormat::kMetis), 0);  // weighted
  EXPECT_EQ(error_line("3 2\n2\n3\n2\n", GraphFormat::kMetis), 2);      // asymmetric
  EXPECT_GT(error_line("3 2\n2\n1 4\n2\n", GraphFormat::kMetis), 0);    // out of range
  EXPECT_GT(error_line("2 1\n2\n1\n1\n", GraphFormat::kMetis), 0);      // trailing line
  EXPECT_GT(error_line("2 1\n1\n2\n", GraphFormat::kMetis), 0);        // self-loop
  EXPECT_NE(error_line("", GraphFormat::kMetis), -1);
  std::istringstream ok("% comment\n2 1 0\n2\n1\n");
  EXPECT_NO_THROW(read_metis(ok));
}

TEST(Formats, RoundTrip) {
  testing::Rng rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = testing::random_graph(3 + trial, 0.3, rng, trial % 3);
    std::stringstream es;
    write_edgelist(es, g);
    Graph ge = read_edgelist(es);
    std::stringstream ms;
    write_metis(ms, g);
    Graph gm = read_metis(ms);
    EXPECT_EQ(edge_pairs(ge), edge_pairs(g));
    EXPECT_EQ(edge_pairs(gm), edge_pairs(g));
    EXPECT_EQ(gm.num_vertices(), g.num_vertices());
  }
}

TEST(Fixtures, BarbellInBothFormats) {
  const std::string dir = LOCALFLOW_TEST_DATA;
  Graph e = load_graph(dir + "/barbell.edgelist", GraphFormat::kEdgeList);
  Graph m = load_graph(dir + "/barbell.metis", GraphFormat::kMetis);
  EXPECT_EQ(edge_pairs(e), edge_pairs(m));
  EXPECT_EQ(edge_pairs(e), edge_pairs(testing::triangle_k5_barbell()));
  VertexSet a = load_vertex_set(dir + "/barbell.seeds", e);
  EXPECT_EQ(a, VertexSet(e, {0, 1, 2}));
  EXPECT_THROW(load_graph(dir + "/missing.edgelist", GraphFormat::kEdgeList), InputError);
}

TEST(VertexSets, Parse) {
  Graph g = testing::path_graph(5);
  std::istringstream ok("# seeds\n3 1\n1\n");
  EXPECT_EQ(read_vertex_set(ok, g), VertexSet(g, {1, 3}));
  std::istringstream bad("1 9\n");
  EXPECT_THROW(read_vertex_set(bad, g), InputError);
  std::istringstream junk("1 a\n");
  EXPECT_THROW(read_vertex_set(junk, g), InputError);
}

TEST(Formats, ParseName) {
  EXPECT_EQ(parse_format("edgelist"), GraphFormat::kEdgeList);
  EXPECT_EQ(parse_format("metis"), GraphFormat::kMetis);
  EXPECT_THROW(parse_format("gml"), InputError);
}

}  // namespace
}  // namespace localflow
