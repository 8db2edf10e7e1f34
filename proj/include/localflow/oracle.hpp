#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "localflow/augmented.hpp"
#include "localflow/graph.hpp"

namespace localflow::oracle {

/// Largest vertex count the exhaustive routines accept.
inline constexpr std::size_t kMaxVertices = 20;

/// Minimum conductance over all proper nonempty subsets, optionally only
/// those with vol(S) <= max_vol. Ties: smaller volume, then lexicographic.
/// nullopt when no subset qualifies. Throws ParameterError for n > 20.
std::optional<std::pair<VertexSet, Rational>> brute_min_conductance(
    const Graph& g, std::optional<std::int64_t> max_vol = std::nullopt);

/// Minimum cut_value over all S (including the empty set). Ties: smaller
/// volume, then fewer vertices, then lexicographic.
std::pair<VertexSet, Rational> brute_min_cut_value(const AugmentedGraph& ag);

/// |E(S, V-S)| < alpha (vol(A & S) - eps vol(S - A)), exactly.
bool eval_condition_41(const Graph& g, const VertexSet& a, const VertexSet& s_star,
                       const Rational& alpha, const Epsilon& eps_sigma);

/// Infimum of the alpha for which eval_condition_41 holds:
/// |E(S, V-S)| / (vol(A & S) - eps vol(S - A)). nullopt when no alpha works.
std::optional<Rational> condition_41_threshold(const Graph& g, const VertexSet& a,
                                               const VertexSet& s_star, const Epsilon& eps_sigma);

/// Calls f on every nonempty subset, given as a bit mask over vertex ids.
void for_each_subset(const Graph& g, const std::function<void(std::uint32_t)>& f);

VertexSet from_mask(const Graph& g, std::uint32_t mask);

}  // namespace localflow::oracle
