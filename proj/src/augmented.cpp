#include "localflow/augmented.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "localflow/errors.hpp"

namespace localflow {
namespace {

Capacity mul_checked(Capacity a, Capacity b) {
  __int128 p = static_cast<__int128>(a) * b;
  if (p > std::numeric_limits<Capacity>::max() || p < std::numeric_limits<Capacity>::min()) {
    throw std::overflow_error("capacity overflow");
  }
  return static_cast<Capacity>(p);
}

struct SideVolumes {
  std::int64_t in_a = 0;   // vol(A & S)
  std::int64_t out_a = 0;  // vol(S - A)
};

SideVolumes side_volumes(const AugmentedGraph& ag, const VertexSet& s) {
  SideVolumes sv;
  for (Vertex v : s) {
    if (ag.is_seed(v)) {
      sv.in_a += ag.graph().degree(v);
    } else {
      sv.out_a += ag.graph().degree(v);
    }
  }
  return sv;
}

}  // namespace

AugmentedGraph AugmentedGraph::build(const Graph& g, VertexSet seeds, Rational alpha,
                                     Epsilon eps) {
  if (seeds.empty()) throw ParameterError("seed set is empty");
  for (Vertex v : seeds) {
    if (!g.contains(v)) throw ParameterError("seed vertex out of range");
  }
  std::int64_t vol_a = seeds.volume();
  std::int64_t vol_rest = g.volume() - vol_a;
  if (vol_a <= 0) throw ParameterError("seed set has zero volume");
  if (vol_a > vol_rest) {
    throw ParameterError("vol(A) = " + std::to_string(vol_a) + " exceeds vol(V - A) = " +
                         std::to_string(vol_rest));
  }
  if (!alpha.is_positive() || alpha > Rational(1)) {
    throw ParameterError("alpha must lie in (0, 1], got " + alpha.to_string());
  }
  if (!eps.is_infinite() && eps.value() < Rational(vol_a, vol_rest)) {
    throw ParameterError("eps = " + eps.to_string() + " is below vol(A)/vol(V-A) = " +
                         Rational(vol_a, vol_rest).to_string());
  }

  AugmentedGraph ag;
  ag.graph_ = &g;
  ag.seeds_ = std::move(seeds);
  ag.alpha_ = alpha;
  ag.eps_ = eps;
  std::int64_t p = alpha.num();
  std::int64_t q = alpha.den();
  ag.scale_ = eps.is_infinite() ? p : lcm_checked(p, eps.value().den());
  ag.edge_cap_ = mul_checked(ag.scale_ / p, q);
  if (!eps.is_infinite()) {
    ag.sink_num_ = mul_checked(ag.scale_ / eps.value().den(), eps.value().num());
  }
  mul_checked(ag.scale_, vol_a);
  return ag;
}

AugmentedGraph AugmentedGraph::with_alpha(Rational alpha) const {
  return build(*graph_, seeds_, alpha, eps_);
}

Capacity AugmentedGraph::sink_capacity(Vertex v) const {
  if (is_seed(v)) return 0;
  Capacity total = source_total();
  if (eps_.is_infinite()) return total;
  __int128 c = static_cast<__int128>(sink_num_) * graph_->degree(v);
  return c >= total ? total : static_cast<Capacity>(c);
}

Epsilon epsilon_from_sigma(const Rational& sigma) {
  if (!sigma.is_positive() || sigma > Rational(1)) {
    throw ParameterError("sigma must lie in (0, 1], got " + sigma.to_string());
  }
  if (sigma == Rational(1)) return Epsilon::infinite();
  return Epsilon(Rational(1) / (Rational(3) * (Rational(1) / sigma - Rational(1))));
}

Rational sigma_from_epsilon(const Epsilon& eps) {
  if (eps.is_infinite()) return Rational(1);
  Rational three_e = Rational(3) * eps.value();
  return three_e / (Rational(1) + three_e);
}

Rational min_feasible_sigma(const Graph& g, const VertexSet& a) {
  std::int64_t vol_a = a.volume();
  std::int64_t vol_rest = g.volume() - vol_a;
  if (vol_a <= 0 || vol_rest <= 0) throw ParameterError("seed set volume out of range");
  return Rational(3 * vol_a, 3 * vol_a + vol_rest);
}

Epsilon epsilon_sigma(const Rational& sigma, const Graph& g, const VertexSet& a) {
  Epsilon eps = epsilon_from_sigma(sigma);
  Rational smallest = min_feasible_sigma(g, a);
  if (sigma < smallest) {
    throw ParameterError("sigma = " + sigma.to_string() +
                         " is infeasible for this seed set; the smallest feasible sigma is " +
                         smallest.to_string());
  }
  return eps;
}

Capacity scaled_cut_value(const AugmentedGraph& ag, const VertexSet& s) {
  const Graph& g = ag.graph();
  Capacity total = 0;
  total += mul_checked(boundary_edges(g, s), ag.edge_capacity());
  for (Vertex u : ag.seeds()) {
    if (!s.contains(u)) total += ag.source_capacity(u);
  }
  for (Vertex v : s) {
    if (!ag.is_seed(v)) total += ag.sink_capacity(v);
  }
  return total;
}

Rational cut_value(const AugmentedGraph& ag, const VertexSet& s) {
  return Rational(scaled_cut_value(ag, s), ag.scale());
}

Rational cut_value_closed_form(const AugmentedGraph& ag, const VertexSet& s) {
  SideVolumes sv = side_volumes(ag, s);
  if (ag.eps().is_infinite() && sv.out_a > 0) {
    throw ParameterError("closed form undefined for infinite eps with S - A nonempty");
  }
  Rational eps_term = ag.eps().is_infinite() ? Rational(0) : ag.eps().value() * Rational(sv.out_a);
  Rational gain = Rational(sv.in_a) - eps_term -
                  Rational(boundary_edges(ag.graph(), s)) / ag.alpha();
  return Rational(ag.seed_volume()) - gain;
}

std::optional<CutCertificate> cut_certificate_check(const AugmentedGraph& ag,
                                                    const VertexSet& s) {
  Rational value = cut_value(ag, s);
  if (value >= Rational(ag.seed_volume())) return std::nullopt;
  return CutCertificate{value, conductance(ag.graph(), s)};
}

std::optional<Rational> flow_certificate_bound(const AugmentedGraph& ag, const VertexSet& s) {
  if (s.volume() <= 0) throw ParameterError("flow certificate bound needs vol(S) > 0");
  SideVolumes sv = side_volumes(ag, s);
  Rational vol_s(s.volume());
  if (ag.eps().is_infinite()) {
    if (sv.out_a > 0) return std::nullopt;
    return ag.alpha() * Rational(sv.in_a) / vol_s;
  }
  const Rational& e = ag.eps().value();
  return ag.alpha() * ((Rational(1) + e) * Rational(sv.in_a) / vol_s - e);
}

}  // namespace localflow
