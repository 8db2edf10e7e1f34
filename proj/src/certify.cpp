#include "localflow/certify.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "localflow/errors.hpp"

namespace localflow {
namespace {

Rational scaled(const Rational& c, std::int64_t deg, Capacity scale) {
  return c * Rational(deg) * Rational(scale);
}

struct Support {
  struct Arc {
    std::uint32_t from;
    std::uint32_t to;
    Capacity amount;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<std::uint32_t>> out;
};

}  // namespace

RoutingReport verify_bidemand_routing(const FlowState& f, const BiDemand& demand,
                                      const Rational& congestion) {
  RoutingReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };
  try {
    f.validate();
  } catch (const InvariantViolation& e) {
    fail(e.what());
  }
  const Graph& g = f.graph();
  const Capacity scale = f.network().scale();
  for (Vertex u : demand.sources) {
    Rational want = scaled(demand.c1, g.degree(u), scale);
    if (Rational(f.source_flow_of(u)) != want) {
      fail("source " + std::to_string(u) + " sends " + std::to_string(f.source_flow_of(u)) +
           ", demand " + want.to_string());
    }
  }
  const Rational edge_limit = congestion * Rational(scale);
  for (NodeId n = 0; n < f.num_nodes(); ++n) {
    const Vertex v = f.vertex(n);
    if (!demand.sources.contains(v)) {
      if (f.source_flow(n) != 0) fail("non-source " + std::to_string(v) + " receives from s");
      Rational limit = scaled(demand.c2, g.degree(v), scale);
      if (Rational(f.sink_flow(n)) > limit) {
        fail("sink " + std::to_string(v) + " absorbs " + std::to_string(f.sink_flow(n)) +
             " over " + limit.to_string());
      }
    } else if (f.sink_flow(n) != 0) {
      fail("source " + std::to_string(v) + " sends to t");
    }
    if (!f.is_expanded(n)) continue;
    const std::size_t begin = f.arc_begin(n);
    for (std::size_t a = begin; a < begin + static_cast<std::size_t>(f.degree(n)); ++a) {
      Capacity x = f.arc_flow(a);
      if (Rational(x < 0 ? -x : x) > edge_limit) {
        fail("edge at " + std::to_string(v) + " carries " + std::to_string(x) + " over " +
             edge_limit.to_string());
      }
    }
  }
  return report;
}

PathDecomposition decompose_paths(const FlowState& f) {
  const std::uint32_t n = static_cast<std::uint32_t>(f.num_nodes());
  const std::uint32_t s = n;
  const std::uint32_t t = n + 1;
  Support sup;
  sup.out.resize(n + 2);
  auto add = [&](std::uint32_t from, std::uint32_t to, Capacity x) {
    sup.out[from].push_back(static_cast<std::uint32_t>(sup.arcs.size()));
    sup.arcs.push_back({from, to, x});
  };
  for (NodeId u : f.seed_nodes()) {
    if (f.source_flow(u) > 0) add(s, u, f.source_flow(u));
  }
  for (NodeId u = 0; u < n; ++u) {
    if (f.is_expanded(u)) {
      const std::size_t begin = f.arc_begin(u);
      for (std::size_t a = begin; a < begin + static_cast<std::size_t>(f.degree(u)); ++a) {
        const Capacity x = f.arc_flow(a);
        const NodeId v = f.arc_head(a);
        if (x > 0) add(u, v, x);
        if (x < 0 && !f.is_expanded(v)) add(v, u, -x);
      }
    }
    if (f.sink_flow(u) > 0) add(u, t, f.sink_flow(u));
  }

  PathDecomposition out;
  out.scale = f.network().scale();

  // Cancel cycles with a depth-first search; nodes popped after a cancellation
  // are revisited later.
  std::vector<std::uint8_t> state(n + 2, 0);  // 0 new, 1 on stack, 2 finished
  std::vector<std::size_t> cur(n + 2, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::uint32_t> via;  // via[i]: arc from stack[i - 1] to stack[i]
  std::vector<std::size_t> pos(n + 2, 0);
  for (std::uint32_t r = 0; r < n + 2; ++r) {
    if (state[r] != 0) continue;
    stack.assign(1, r);
    via.assign(1, 0);
    state[r] = 1;
    pos[r] = 0;
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      auto& outs = sup.out[u];
      while (cur[u] < outs.size() &&
             (sup.arcs[outs[cur[u]]].amount == 0 || state[sup.arcs[outs[cur[u]]].to] == 2)) {
        ++cur[u];
      }
      if (cur[u] == outs.size()) {
        state[u] = 2;
        stack.pop_back();
        via.pop_back();
        continue;
      }
      const std::uint32_t arc = outs[cur[u]];
      const std::uint32_t v = sup.arcs[arc].to;
      if (state[v] == 0) {
        state[v] = 1;
        pos[v] = stack.size();
        stack.push_back(v);
        via.push_back(arc);
        continue;
      }
      // v is on the stack: cancel the cycle v -> ... -> u -> v.
      Capacity m = sup.arcs[arc].amount;
      for (std::size_t i = pos[v] + 1; i < stack.size(); ++i) m = std::min(m, sup.arcs[via[i]].amount);
      sup.arcs[arc].amount -= m;
      for (std::size_t i = pos[v] + 1; i < stack.size(); ++i) sup.arcs[via[i]].amount -= m;
      out.cycle_flow += m;
      while (stack.size() > pos[v] + 1) {
        state[stack.back()] = 0;
        stack.pop_back();
        via.pop_back();
      }
    }
  }

  // Peel shortest s-t paths off the acyclic remainder.
  std::vector<std::int64_t> parent(n + 2);
  std::vector<std::uint32_t> queue;
  while (true) {
    std::fill(parent.begin(), parent.end(), -1);
    queue.assign(1, s);
    parent[s] = -2;
    for (std::size_t qi = 0; qi < queue.size() && parent[t] == -1; ++qi) {
      const std::uint32_t u = queue[qi];
      for (std::uint32_t arc : sup.out[u]) {
        const auto& e = sup.arcs[arc];
        if (e.amount == 0 || parent[e.to] != -1) continue;
        parent[e.to] = arc;
        queue.push_back(e.to);
      }
    }
    if (parent[t] == -1) break;
    Capacity m = sup.arcs[parent[t]].amount;
    for (std::uint32_t x = t; x != s; x = sup.arcs[parent[x]].from) {
      m = std::min(m, sup.arcs[parent[x]].amount);
    }
    FlowPath p;
    p.amount = m;
    for (std::uint32_t x = t; x != s; x = sup.arcs[parent[x]].from) {
      sup.arcs[parent[x]].amount -= m;
      if (x != t) p.vertices.push_back(f.vertex(x));
    }
    std::reverse(p.vertices.begin(), p.vertices.end());
    out.total += m;
    out.paths.push_back(std::move(p));
  }
  if (out.total != f.value()) throw InvariantViolation("path decomposition lost flow");
  return out;
}

Rational expansion_lower_bound(const PathDecomposition& paths, const AugmentedGraph& ag,
                               const VertexSet& s) {
  Capacity crossing = 0;
  for (const FlowPath& p : paths.paths) {
    if (s.contains(p.vertices.front()) && !s.contains(p.vertices.back())) crossing += p.amount;
  }
  return ag.alpha() * Rational(crossing, paths.scale);
}

bool path_length_certificate(const PathDecomposition& paths, std::int64_t max_arcs) {
  return std::all_of(paths.paths.begin(), paths.paths.end(), [&](const FlowPath& p) {
    return static_cast<std::int64_t>(p.arcs()) <= max_arcs;
  });
}

std::optional<Rational> quotient_score(const Graph& g, const VertexSet& a, const VertexSet& s) {
  std::int64_t in_a = 0;
  std::int64_t out_a = 0;
  for (Vertex v : s) (a.contains(v) ? in_a : out_a) += g.degree(v);
  const std::int64_t vol_rest = g.volume() - a.volume();
  if (vol_rest <= 0) return std::nullopt;
  Rational den = Rational(in_a) - Rational(out_a) * Rational(a.volume(), vol_rest);
  if (!den.is_positive()) return std::nullopt;
  return Rational(boundary_edges(g, s)) / den;
}

double spectral_gap(const Graph& g, const VertexSet& b) {
  if (b.size() < 2) return 0.0;
  Graph h = induced_subgraph(g, b);
  const std::size_t n = h.num_vertices();
  if (n < 2) return 0.0;
  // Connectivity check.
  std::vector<char> seen(n, 0);
  std::vector<Vertex> queue{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Vertex w : h.neighbors(queue[i])) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  if (queue.size() != n) return 0.0;

  // N = (I + D^-1/2 A D^-1/2) / 2 has the lazy walk's spectrum; deflate the
  // top eigenvector sqrt(d) and power-iterate for the second eigenvalue.
  std::vector<double> sq(n);
  double norm_top = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    sq[v] = std::sqrt(static_cast<double>(h.degree(v)));
    norm_top += static_cast<double>(h.degree(v));
  }
  norm_top = std::sqrt(norm_top);
  for (double& x : sq) x /= norm_top;
  auto deflate = [&](std::vector<double>& x) {
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += x[i] * sq[i];
    for (std::size_t i = 0; i < n; ++i) x[i] -= dot * sq[i];
  };
  auto normalize = [&](std::vector<double>& x) {
    double nr = 0.0;
    for (double v : x) nr += v * v;
    nr = std::sqrt(nr);
    if (nr < 1e-300) return 0.0;
    for (double& v : x) v /= nr;
    return nr;
  };
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (Vertex u = 0; u < n; ++u) {
      double acc = 0.0;
      for (Vertex w : h.neighbors(u)) acc += x[w] / (sq[w] * norm_top);
      y[u] = 0.5 * (x[u] + acc / (sq[u] * norm_top));
    }
  };
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(n);
  std::vector<double> y(n);
  for (double& v : x) v = dist(rng);
  deflate(x);
  if (normalize(x) == 0.0) return 1.0;
  double mu = 0.0;
  constexpr double kTol = 1e-9;
  for (int it = 0; it < 1000000; ++it) {
    apply(x, y);
    deflate(y);
    double rq = 0.0;
    for (std::size_t i = 0; i < n; ++i) rq += x[i] * y[i];
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res += (y[i] - rq * x[i]) * (y[i] - rq * x[i]);
    mu = rq;
    if (std::sqrt(res) < kTol * 1e-2) break;
    if (normalize(y) == 0.0) {
      mu = 0.0;
      break;
    }
    std::swap(x, y);
  }
  return 1.0 - mu;
}

double conn_proxy(const Graph& g, const VertexSet& b) {
  double gap = spectral_gap(g, b);
  if (gap == 0.0) return 0.0;
  const double vol_b = static_cast<double>(induced_subgraph(g, b).volume());
  return gap / std::log(vol_b);
}

FlowCertificate make_certificate(const FlowState& f) {
  const AugmentedGraph& ag = f.network();
  FlowCertificate cert;
  cert.alpha = ag.alpha();
  cert.eps = ag.eps();
  cert.scale = ag.scale();
  cert.vol_a = ag.seed_volume();
  cert.flow_value = f.value();
  cert.seeds.assign(ag.seeds().begin(), ag.seeds().end());
  cert.paths = decompose_paths(f).paths;
  return cert;
}

void write_certificate(std::ostream& os, const FlowCertificate& cert) {
  os << "localflow-certificate 1\n";
  os << "alpha " << cert.alpha << "\n";
  os << "eps_sigma " << cert.eps.to_string() << "\n";
  os << "scale " << cert.scale << "\n";
  os << "vol_a " << cert.vol_a << "\n";
  os << "flow_value " << cert.flow_value << "\n";
  os << "seeds";
  for (Vertex v : cert.seeds) os << " " << v;
  os << "\n";
  os << "paths " << cert.paths.size() << "\n";
  for (const FlowPath& p : cert.paths) {
    os << "path " << p.amount << " :";
    for (Vertex v : p.vertices) os << " " << v;
    os << "\n";
  }
}

FlowCertificate read_certificate(std::istream& is) {
  FlowCertificate cert;
  std::string line;
  std::size_t lineno = 0;
  auto next = [&](const std::string& key) {
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line[0] != '#') break;
    }
    if (!is && line.empty()) throw InputError("certificate ends before '" + key + "'", lineno);
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word != key) throw InputError("expected '" + key + "', found '" + word + "'", lineno);
    std::string rest;
    std::getline(ls, rest);
    return rest;
  };
  auto to_int = [&](const std::string& s) {
    std::istringstream ss(s);
    std::int64_t v = 0;
    if (!(ss >> v) || !(ss >> std::ws).eof()) throw InputError("malformed integer", lineno);
    return v;
  };
  if (to_int(next("localflow-certificate")) != 1) {
    throw InputError("unsupported certificate version", lineno);
  }
  try {
    cert.alpha = Rational::parse(next("alpha"));
    std::istringstream es(next("eps_sigma"));
    std::string e;
    es >> e;
    cert.eps = e == "inf" ? Epsilon::infinite() : Epsilon(Rational::parse(e));
  } catch (const InputError& err) {
    throw InputError(err.what(), lineno);
  } catch (const ParameterError& err) {
    throw InputError(err.what(), lineno);
  }
  cert.scale = to_int(next("scale"));
  cert.vol_a = to_int(next("vol_a"));
  cert.flow_value = to_int(next("flow_value"));
  {
    std::istringstream ss(next("seeds"));
    std::int64_t v;
    while (ss >> v) {
      if (v < 0) throw InputError("negative vertex id", lineno);
      cert.seeds.push_back(static_cast<Vertex>(v));
    }
    if (!ss.eof()) throw InputError("malformed seed list", lineno);
  }
  const std::int64_t count = to_int(next("paths"));
  if (count < 0) throw InputError("negative path count", lineno);
  for (std::int64_t i = 0; i < count; ++i) {
    std::istringstream ss(next("path"));
    FlowPath p;
    std::string colon;
    if (!(ss >> p.amount) || !(ss >> colon) || colon != ":") {
      throw InputError("malformed path line", lineno);
    }
    std::int64_t v;
    while (ss >> v) {
      if (v < 0) throw InputError("negative vertex id", lineno);
      p.vertices.push_back(static_cast<Vertex>(v));
    }
    if (!ss.eof() || p.vertices.empty()) throw InputError("malformed path line", lineno);
    cert.paths.push_back(std::move(p));
  }
  return cert;
}

RoutingReport validate_certificate(const Graph& g, const FlowCertificate& cert) {
  RoutingReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };
  for (Vertex v : cert.seeds) {
    if (!g.contains(v)) {
      fail("seed " + std::to_string(v) + " out of range");
      return report;
    }
  }
  std::optional<AugmentedGraph> ag;
  try {
    ag.emplace(AugmentedGraph::build(g, VertexSet(g, cert.seeds), cert.alpha, cert.eps));
  } catch (const ParameterError& e) {
    fail(e.what());
    return report;
  }
  if (ag->scale() != cert.scale) fail("scale does not match the parameters");
  if (ag->seed_volume() != cert.vol_a) fail("vol_a does not match the seed set");
  if (cert.flow_value != ag->source_total()) fail("flow value is not a full flow");

  std::map<Vertex, Capacity> source;
  std::map<Vertex, Capacity> sink;
  std::map<std::pair<Vertex, Vertex>, Capacity> edge;  // flow from first to second
  Capacity total = 0;
  for (std::size_t i = 0; i < cert.paths.size(); ++i) {
    const FlowPath& p = cert.paths[i];
    const std::string where = "path " + std::to_string(i);
    if (p.amount <= 0) fail(where + " has nonpositive amount");
    bool in_range = true;
    for (Vertex v : p.vertices) in_range = in_range && g.contains(v);
    if (!in_range) {
      fail(where + " has a vertex out of range");
      continue;
    }
    if (!ag->is_seed(p.vertices.front())) fail(where + " does not start at a seed");
    if (ag->is_seed(p.vertices.back())) fail(where + " ends at a seed");
    for (std::size_t k = 0; k + 1 < p.vertices.size(); ++k) {
      const Vertex u = p.vertices[k];
      const Vertex v = p.vertices[k + 1];
      auto nb = g.neighbors(u);
      if (std::find(nb.begin(), nb.end(), v) == nb.end()) {
        fail(where + " uses a non-edge " + std::to_string(u) + "-" + std::to_string(v));
        continue;
      }
      if (u < v) {
        edge[{u, v}] += p.amount;
      } else {
        edge[{v, u}] -= p.amount;
      }
    }
    source[p.vertices.front()] += p.amount;
    sink[p.vertices.back()] += p.amount;
    total += p.amount;
  }
  if (total != cert.flow_value) fail("path amounts do not sum to the flow value");
  for (Vertex u : ag->seeds()) {
    if (source[u] != ag->source_capacity(u)) {
      fail("seed " + std::to_string(u) + " sends " + std::to_string(source[u]) + " instead of " +
           std::to_string(ag->source_capacity(u)));
    }
  }
  for (const auto& [v, x] : sink) {
    if (x > ag->sink_capacity(v)) fail("vertex " + std::to_string(v) + " absorbs over capacity");
  }
  for (const auto& [key, x] : edge) {
    auto nb = g.neighbors(key.first);
    const Capacity mult = std::count(nb.begin(), nb.end(), key.second);
    const Capacity limit = mult * ag->edge_capacity();
    if (x > limit || -x > limit) {
      fail("edge " + std::to_string(key.first) + "-" + std::to_string(key.second) +
           " over capacity");
    }
  }
  return report;
}

}  // namespace localflow
