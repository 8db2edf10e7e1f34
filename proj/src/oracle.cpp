#include "localflow/oracle.hpp"

#include <bit>
#include <vector>

#include "localflow/errors.hpp"

namespace localflow::oracle {
namespace {

void check_size(const Graph& g) {
  if (g.num_vertices() > kMaxVertices) {
    throw ParameterError("exhaustive oracle limited to " + std::to_string(kMaxVertices) +
                         " vertices, got " + std::to_string(g.num_vertices()));
  }
}

// Walks the subsets in reflected Gray-code order, keeping vol(S) and
// |E(S, V-S)| up to date. Visits the empty set first.
template <class F>
void gray_walk(const Graph& g, F&& visit) {
  const std::size_t n = g.num_vertices();
  std::uint32_t mask = 0;
  std::int64_t vol = 0;
  std::int64_t boundary = 0;
  visit(mask, vol, boundary, -1, false);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int v = std::countr_zero(i);
    std::int64_t inside = 0;
    for (Vertex w : g.neighbors(static_cast<Vertex>(v))) inside += (mask >> w) & 1u;
    const bool adding = !((mask >> v) & 1u);
    const std::int64_t deg = g.degree(static_cast<Vertex>(v));
    if (adding) {
      boundary += deg - 2 * inside;
      vol += deg;
    } else {
      boundary -= deg - 2 * inside;
      vol -= deg;
    }
    mask ^= 1u << v;
    visit(mask, vol, boundary, v, adding);
  }
}

bool lex_less(std::uint32_t a, std::uint32_t b) {
  // Sorted member lists compared lexicographically.
  while (a != 0 && b != 0) {
    const int x = std::countr_zero(a);
    const int y = std::countr_zero(b);
    if (x != y) return x < y;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

}  // namespace

VertexSet from_mask(const Graph& g, std::uint32_t mask) {
  std::vector<Vertex> ids;
  for (std::uint32_t m = mask; m != 0; m &= m - 1) {
    ids.push_back(static_cast<Vertex>(std::countr_zero(m)));
  }
  return VertexSet(g, std::move(ids));
}

void for_each_subset(const Graph& g, const std::function<void(std::uint32_t)>& f) {
  check_size(g);
  const std::uint64_t total = std::uint64_t{1} << g.num_vertices();
  for (std::uint64_t m = 1; m < total; ++m) f(static_cast<std::uint32_t>(m));
}

std::optional<std::pair<VertexSet, Rational>> brute_min_conductance(
    const Graph& g, std::optional<std::int64_t> max_vol) {
  check_size(g);
  const std::int64_t total_vol = g.volume();
  const std::uint32_t full = (std::uint32_t{1} << g.num_vertices()) - 1;
  std::optional<std::uint32_t> best_mask;
  std::int64_t best_b = 0;
  std::int64_t best_d = 1;
  std::int64_t best_vol = 0;
  gray_walk(g, [&](std::uint32_t mask, std::int64_t vol, std::int64_t b, int, bool) {
    if (mask == 0 || mask == full) return;
    if (max_vol && vol > *max_vol) return;
    const std::int64_t d = std::min(vol, total_vol - vol);
    if (d <= 0) return;
    if (best_mask) {
      const __int128 lhs = static_cast<__int128>(b) * best_d;
      const __int128 rhs = static_cast<__int128>(best_b) * d;
      if (lhs > rhs) return;
      if (lhs == rhs) {
        if (vol > best_vol) return;
        if (vol == best_vol && !lex_less(mask, *best_mask)) return;
      }
    }
    best_mask = mask;
    best_b = b;
    best_d = d;
    best_vol = vol;
  });
  if (!best_mask) return std::nullopt;
  return std::make_pair(from_mask(g, *best_mask), Rational(best_b, best_d));
}

std::pair<VertexSet, Rational> brute_min_cut_value(const AugmentedGraph& ag) {
  const Graph& g = ag.graph();
  check_size(g);
  const std::size_t n = g.num_vertices();
  std::vector<Capacity> sink(n);
  std::uint32_t seed_mask = 0;
  for (Vertex v = 0; v < n; ++v) {
    sink[v] = ag.sink_capacity(v);
    if (ag.is_seed(v)) seed_mask |= 1u << v;
  }
  // Scaled value: edge_cap |dS| + L vol(A - S) + sink(S - A).
  Capacity sink_in = 0;
  std::int64_t seed_vol_in = 0;
  std::uint32_t best_mask = 0;
  __int128 best = -1;
  std::int64_t best_vol = 0;
  gray_walk(g, [&](std::uint32_t mask, std::int64_t vol, std::int64_t b, int v, bool adding) {
    if (v >= 0) {
      const Capacity sgn = adding ? 1 : -1;
      if ((seed_mask >> v) & 1u) {
        seed_vol_in += sgn * g.degree(static_cast<Vertex>(v));
      } else {
        sink_in += sgn * sink[v];
      }
    }
    const __int128 value = static_cast<__int128>(ag.edge_capacity()) * b +
                           static_cast<__int128>(ag.scale()) * (ag.seed_volume() - seed_vol_in) +
                           sink_in;
    bool take = best < 0 || value < best;
    if (!take && value == best) {
      if (vol != best_vol) {
        take = vol < best_vol;
      } else if (std::popcount(mask) != std::popcount(best_mask)) {
        take = std::popcount(mask) < std::popcount(best_mask);
      } else {
        take = lex_less(mask, best_mask);
      }
    }
    if (take) {
      best = value;
      best_mask = mask;
      best_vol = vol;
    }
  });
  return {from_mask(g, best_mask), Rational(static_cast<std::int64_t>(best), ag.scale())};
}

bool eval_condition_41(const Graph& g, const VertexSet& a, const VertexSet& s_star,
                       const Rational& alpha, const Epsilon& eps_sigma) {
  if (s_star.empty()) throw ParameterError("condition requires a nonempty set");
  const std::int64_t inside = set_intersection(g, a, s_star).volume();
  const std::int64_t outside = set_difference(g, s_star, a).volume();
  Rational rhs(inside);
  if (outside > 0) {
    if (eps_sigma.is_infinite()) return false;
    rhs -= eps_sigma.value() * Rational(outside);
  }
  return Rational(boundary_edges(g, s_star)) < alpha * rhs;
}

std::optional<Rational> condition_41_threshold(const Graph& g, const VertexSet& a,
                                               const VertexSet& s_star, const Epsilon& eps_sigma) {
  if (s_star.empty()) throw ParameterError("condition requires a nonempty set");
  const std::int64_t inside = set_intersection(g, a, s_star).volume();
  const std::int64_t outside = set_difference(g, s_star, a).volume();
  if (outside > 0 && eps_sigma.is_infinite()) return std::nullopt;
  Rational x(inside);
  if (outside > 0) x -= eps_sigma.value() * Rational(outside);
  if (!x.is_positive()) return std::nullopt;
  return Rational(boundary_edges(g, s_star)) / x;
}

}  // namespace localflow::oracle
