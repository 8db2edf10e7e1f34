#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "generators.hpp"
#include "localflow/errors.hpp"
#include "localflow/seed.hpp"

namespace localflow {
namespace {

// beta (I - (1 - beta) A D^-1)^-1 x
Eigen::VectorXd pagerank(const Graph& g, double beta, const Eigen::VectorXd& x) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    for (Vertex v : g.neighbors(u)) m(v, u) -= (1.0 - beta) / static_cast<double>(g.degree(u));
  }
  return beta * m.partialPivLu().solve(x);
}

Eigen::VectorXd dense(const Graph& g, const std::vector<std::pair<Vertex, double>>& sparse) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.num_vertices()));
  for (const auto& [v, x] : sparse) out(v) += x;
  return out;
}

TEST(ApprPush, PageRankIdentity) {
  testing::Rng rng(3);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = testing::random_graph(5 + trial % 30, 0.3, rng, trial % 4);
    Vertex seed = 0;
    while (seed < g.num_vertices() && g.degree(seed) == 0) ++seed;
    if (seed == g.num_vertices()) continue;
    ApprConfig cfg;
    cfg.teleport = trial % 2 ? 0.1 : 0.25;
    cfg.r_max = trial % 3 == 0 ? 1e-3 : 1e-5;
    ApprVector p = appr_push(g, seed, cfg);
    Eigen::VectorXd chi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.num_vertices()));
    chi(seed) = 1.0;
    Eigen::VectorXd lhs = dense(g, p.estimate) + pagerank(g, cfg.teleport, dense(g, p.residual));
    Eigen::VectorXd rhs = pagerank(g, cfg.teleport, chi);
    EXPECT_LT((lhs - rhs).lpNorm<Eigen::Infinity>(), 1e-9);
    EXPECT_NEAR(dense(g, p.estimate).sum() + dense(g, p.residual).sum(), 1.0, 1e-9);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      EXPECT_LT(dense(g, p.residual)(v), *cfg.r_max * static_cast<double>(g.degree(v)) + 1e-15);
    }
    ++checked;
  }
  EXPECT_GT(checked, 40);
}

TEST(ApprPush, LargeToleranceGivesSeedIndicator) {
  Graph g = testing::triangle_k5_barbell();
  for (double r_max : {1.0, 2.5}) {
    ApprConfig cfg;
    cfg.r_max = r_max;
    ApprVector p = appr_push(g, 3, cfg);
    EXPECT_EQ(p.pushes, 0u);
    ASSERT_EQ(p.estimate.size(), 1u);
    EXPECT_EQ(p.estimate[0], (std::pair<Vertex, double>{3, 1.0}));
  }
}

TEST(ApprPush, DefaultsAndErrors) {
  Graph g = testing::ring_of_cliques(50, 6);
  ApprVector p = appr_push(g, 0);
  EXPECT_DOUBLE_EQ(p.r_max, 1.0 / (10.0 * static_cast<double>(g.volume() / 2)));
  ApprConfig bad;
  bad.teleport = 1.0;
  EXPECT_THROW(appr_push(g, 0, bad), ParameterError);
  bad.teleport = 0.1;
  bad.r_max = 0.0;
  EXPECT_THROW(appr_push(g, 0, bad), ParameterError);
  EXPECT_THROW(appr_push(g, static_cast<Vertex>(g.num_vertices()), {}), ParameterError);
  Graph iso = Graph::from_edges(3, std::vector<Edge>{{0, 1}});
  EXPECT_THROW(appr_push(iso, 2, {}), ParameterError);
}

TEST(ApprPush, LocalSupportOnALargeRing) {
  Graph g = testing::ring_of_cliques(5000, 10);
  ApprConfig cfg;
  cfg.r_max = 1e-4;
  ApprVector p = appr_push(g, 0, cfg);
  std::int64_t vol = 0;
  for (const auto& [v, x] : p.estimate) vol += g.degree(v);
  EXPECT_LE(static_cast<double>(vol), 1.0 / (cfg.teleport * *cfg.r_max));
}

TEST(SweepCut, TriangleOfTheBarbell) {
  Graph g = testing::two_triangle_barbell();
  ApprVector p;
  p.estimate = {{0, 0.2}, {1, 0.2}, {2, 0.3}};
  SweepResult s = sweep_cut(g, p);
  EXPECT_EQ(s.set, VertexSet(g, {0, 1, 2}));
  EXPECT_EQ(s.conductance, Rational(1, 7));
  EXPECT_EQ(s.prefix, 3u);

  Graph h = testing::triangle_k5_barbell();
  p.estimate = {{0, 0.2}, {1, 0.2}, {2, 0.3}, {3, 0.1}};
  s = sweep_cut(h, p);
  EXPECT_EQ(s.set, VertexSet(h, {0, 1, 2}));
  EXPECT_EQ(s.conductance, Rational(1, 7));
}

TEST(SweepCut, PrefersShortestOnTies) {
  Graph g = testing::cycle_graph(8);
  ApprVector p;
  p.estimate = {{0, 0.4}, {1, 0.3}, {2, 0.2}, {3, 0.1}};
  SweepResult s = sweep_cut(g, p);  // prefixes have phi 1, 1/2, 1/3, 1/4
  EXPECT_EQ(s.prefix, 4u);
  EXPECT_EQ(s.conductance, Rational(1, 4));
  ApprVector empty;
  EXPECT_THROW(sweep_cut(g, empty), ParameterError);
}

TEST(SeedGen, Deterministic) {
  testing::Rng rng(11);
  Graph g = testing::random_graph(60, 0.1, rng, 5);
  Vertex seed = 0;
  while (g.degree(seed) == 0) ++seed;
  ApprVector a = appr_push(g, seed);
  ApprVector b = appr_push(g, seed);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.residual, b.residual);
  EXPECT_EQ(sweep_cut(g, a).set, sweep_cut(g, b).set);
}

}  // namespace
}  // namespace localflow
