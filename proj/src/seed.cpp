#include "localflow/seed.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "localflow/errors.hpp"

namespace localflow {
namespace {

std::vector<std::pair<Vertex, double>> sorted_entries(
    const std::unordered_map<Vertex, double>& m) {
  std::vector<std::pair<Vertex, double>> out(m.begin(), m.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ApprVector appr_push(const Graph& g, Vertex seed, const ApprConfig& config) {
  if (!g.contains(seed)) throw ParameterError("seed vertex out of range");
  if (g.degree(seed) == 0) throw ParameterError("seed vertex is isolated");
  if (!(config.teleport > 0.0 && config.teleport < 1.0)) {
    throw ParameterError("teleport must lie in (0, 1)");
  }
  const std::int64_t cap = config.volume_cap.value_or(g.volume() / 2);
  if (cap <= 0) throw ParameterError("volume cap must be positive");
  const double r_max = config.r_max.value_or(1.0 / (10.0 * static_cast<double>(cap)));
  if (!(r_max > 0.0)) throw ParameterError("r_max must be positive");
  const double beta = config.teleport;

  std::unordered_map<Vertex, double> p;
  std::unordered_map<Vertex, double> r;
  std::unordered_set<Vertex> queued;
  std::deque<Vertex> queue;
  r[seed] = 1.0;
  auto over = [&](Vertex v, double rv) { return rv >= r_max * static_cast<double>(g.degree(v)); };
  if (over(seed, 1.0)) {
    queue.push_back(seed);
    queued.insert(seed);
  }
  ApprVector out;
  out.r_max = r_max;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    queued.erase(u);
    const double ru = r[u];
    if (!over(u, ru)) continue;
    p[u] += beta * ru;
    r[u] = 0.0;
    const double share = (1.0 - beta) * ru / static_cast<double>(g.degree(u));
    for (Vertex v : g.neighbors(u)) {
      double& rv = r[v];
      rv += share;
      if (over(v, rv) && queued.insert(v).second) queue.push_back(v);
    }
    ++out.pushes;
  }
  if (p.empty()) p[seed] = 1.0;
  out.estimate = sorted_entries(p);
  std::erase_if(r, [](const auto& kv) { return kv.second == 0.0; });
  out.residual = sorted_entries(r);
  return out;
}

SweepResult sweep_cut(const Graph& g, const ApprVector& p) {
  std::vector<std::pair<Vertex, double>> order;
  for (const auto& [v, x] : p.estimate) {
    if (x > 0.0 && g.degree(v) > 0) order.emplace_back(v, x / static_cast<double>(g.degree(v)));
  }
  if (order.empty()) throw ParameterError("sweep over an empty support");
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::unordered_set<Vertex> in;
  std::int64_t vol = 0;
  std::int64_t boundary = 0;
  std::optional<Rational> best;
  std::size_t best_len = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Vertex v = order[i].first;
    std::int64_t inner = 0;
    for (Vertex w : g.neighbors(v)) inner += in.count(w);
    in.insert(v);
    vol += g.degree(v);
    boundary += g.degree(v) - 2 * inner;
    if (2 * vol > g.volume()) break;
    const std::int64_t denom = std::min(vol, g.volume() - vol);
    if (denom <= 0) continue;
    Rational phi(boundary, denom);
    if (!best || phi < *best) {
      best = phi;
      best_len = i + 1;
    }
  }
  if (!best) throw ParameterError("no sweep prefix with volume at most vol(V)/2");
  std::vector<Vertex> ids;
  for (std::size_t i = 0; i < best_len; ++i) ids.push_back(order[i].first);
  return SweepResult{VertexSet(g, std::move(ids)), *best, best_len};
}

}  // namespace localflow
