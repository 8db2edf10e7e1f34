#include "localflow/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <thread>

#include "localflow/augmented.hpp"
#include "localflow/certify.hpp"
#include "localflow/errors.hpp"
#include "localflow/improve.hpp"
#include "localflow/io.hpp"
#include "localflow/local_flow.hpp"
#include "localflow/local_flow_exact.hpp"
#include "localflow/seed.hpp"

namespace localflow {
namespace {

using nlohmann::json;

json to_json(const Rational& r) { return json{{"num", r.num()}, {"den", r.den()}}; }

json to_json(const Epsilon& e) {
  if (e.is_infinite()) return "inf";
  return to_json(e.value());
}

json to_json(const VertexSet& s) { return json(std::vector<Vertex>(s.begin(), s.end())); }

struct Common {
  std::string graph_path;
  std::string format = "edgelist";
  std::string output = "json";
};

struct SeedArgs {
  std::string path;
  std::vector<Vertex> vertices;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-g,--graph", c.graph_path, "graph file")->required();
  cmd->add_option("-f,--format", c.format, "edgelist | metis")
      ->check(CLI::IsMember({"edgelist", "metis"}));
  cmd->add_option("-o,--output", c.output, "json | human")
      ->check(CLI::IsMember({"json", "human"}));
}

void add_seeds(CLI::App* cmd, SeedArgs& s) {
  auto* file = cmd->add_option("-a,--seeds", s.path, "seed set file");
  auto* list = cmd->add_option("--seed-vertices", s.vertices, "seed vertex ids");
  file->excludes(list);
}

VertexSet resolve_seeds(const SeedArgs& s, const Graph& g) {
  if (!s.path.empty()) return load_vertex_set(s.path, g);
  for (Vertex v : s.vertices) {
    if (!g.contains(v)) throw InputError("seed vertex " + std::to_string(v) + " is not in the graph");
  }
  if (s.vertices.empty()) throw InputError("a seed set is required (--seeds or --seed-vertices)");
  return VertexSet(g, s.vertices);
}

Rational parse_rational(const std::string& name, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const InputError& e) {
    throw InputError("--" + name + ": " + e.what());
  }
}

void emit(std::ostream& out, const Common& c, const json& j,
          const std::vector<std::pair<std::string, std::string>>& human) {
  if (c.output == "json") {
    out << j.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : human) out << k << ": " << v << '\n';
}

std::string set_string(const VertexSet& s) {
  std::string out;
  for (Vertex v : s) out += (out.empty() ? "" : " ") + std::to_string(v);
  return out;
}

int cmd_stats(const Common& c, const SeedArgs& s, std::ostream& out) {
  const Graph g = load_graph(c.graph_path, parse_format(c.format));
  json j{{"n", g.num_vertices()}, {"m", g.num_edges()}, {"volume", g.volume()}};
  std::vector<std::pair<std::string, std::string>> human{
      {"n", std::to_string(g.num_vertices())},
      {"m", std::to_string(g.num_edges())},
      {"volume", std::to_string(g.volume())}};
  if (!s.path.empty() || !s.vertices.empty()) {
    const VertexSet a = resolve_seeds(s, g);
    j["seeds"] = to_json(a);
    j["vol_a"] = a.volume();
    j["boundary"] = boundary_edges(g, a);
    human.emplace_back("vol(A)", std::to_string(a.volume()));
    human.emplace_back("boundary", std::to_string(boundary_edges(g, a)));
    const std::int64_t other = g.volume() - a.volume();
    if (std::min(a.volume(), other) > 0) {
      const Rational phi = conductance(g, a);
      j["phi"] = to_json(phi);
      human.emplace_back("phi(A)", phi.to_string());
    } else {
      j["phi"] = nullptr;
    }
    if (a.volume() > 0 && a.volume() <= other) {
      const Rational sig = min_feasible_sigma(g, a);
      j["min_sigma"] = to_json(sig);
      human.emplace_back("min sigma", sig.to_string());
    }
  }
  emit(out, c, j, human);
  return kExitOk;
}

struct ImproveArgs {
  std::string sigma;
  std::string eps = "1/5";
  bool check_invariants = false;
  std::optional<std::int64_t> phase_limit;
  std::string certificate_path;
};

json probe_json(const Probe& p) {
  json j{{"alpha", to_json(p.alpha)}, {"outcome", to_string(p.outcome)},
         {"phases", p.phases},         {"touched_volume", p.touched_volume}};
  j["phi"] = p.conductance ? to_json(*p.conductance) : json(nullptr);
  return j;
}

int cmd_improve(const Common& c, const SeedArgs& s, const ImproveArgs& ia, Solver solver,
                std::ostream& out) {
  const Graph g = load_graph(c.graph_path, parse_format(c.format));
  const VertexSet a = resolve_seeds(s, g);
  const Rational sigma = parse_rational("sigma", ia.sigma);
  const Rational eps = parse_rational("eps", ia.eps);
  ImproveOptions opt;
  opt.solver = solver;
  opt.check_invariants = ia.check_invariants;
  opt.phase_limit = ia.phase_limit;
  const ImproveResult r = local_improve(g, a, epsilon_sigma(sigma, g, a), eps, opt);

  json trace = json::array();
  for (const Probe& p : r.trace) trace.push_back(probe_json(p));
  json j{{"outcome", to_string(r.outcome)},
         {"solver", to_string(solver)},
         {"sigma", to_json(sigma)},
         {"eps", to_json(eps)},
         {"eps_sigma", to_json(epsilon_from_sigma(sigma))},
         {"set", to_json(r.set)},
         {"vol", r.volume},
         {"alpha_max", to_json(r.alpha_max)},
         {"alpha_trace", trace},
         {"touched_volume", r.touched_volume},
         {"union_touched_volume", r.union_touched_volume},
         {"phases", r.phases}};
  j["phi"] = r.conductance ? to_json(*r.conductance) : json(nullptr);
  if (ia.check_invariants) {
    j["invariant_checks"] = r.invariants.total_checks();
    j["invariant_violations"] = r.invariants.total_violations();
  }
  std::vector<std::pair<std::string, std::string>> human{
      {"outcome", to_string(r.outcome)},
      {"solver", to_string(solver)},
      {"probes", std::to_string(r.trace.size())},
      {"alpha_max", r.alpha_max.to_string()},
      {"touched volume", std::to_string(r.touched_volume)}};
  if (r.outcome == ImproveOutcome::kImproved) {
    human.emplace_back("set", set_string(r.set));
    human.emplace_back("phi", r.conductance->to_string());
    human.emplace_back("vol", std::to_string(r.volume));
  } else if (r.final_flow) {
    const FlowCertificate cert = make_certificate(*r.final_flow);
    j["certificate"] = json{{"alpha", to_json(cert.alpha)},
                            {"scale", cert.scale},
                            {"flow_value", cert.flow_value},
                            {"paths", cert.paths.size()}};
    if (!ia.certificate_path.empty()) {
      std::ofstream f(ia.certificate_path);
      if (!f) throw InputError("cannot write " + ia.certificate_path);
      write_certificate(f, cert);
    }
  }
  emit(out, c, j, human);
  return r.outcome == ImproveOutcome::kImproved ? kExitOk : kExitNegative;
}

struct FlowArgs {
  std::string alpha;
  std::string sigma = "1";
  std::string solver = "approx";
  std::optional<std::int64_t> phase_limit;
  bool check_invariants = false;
};

int cmd_flow(const Common& c, const SeedArgs& s, const FlowArgs& fa, std::ostream& out) {
  const Graph g = load_graph(c.graph_path, parse_format(c.format));
  const VertexSet a = resolve_seeds(s, g);
  const Rational alpha = parse_rational("alpha", fa.alpha);
  const Rational sigma = parse_rational("sigma", fa.sigma);
  const Epsilon e = epsilon_sigma(sigma, g, a);
  json j{{"alpha", to_json(alpha)}, {"eps_sigma", to_json(e)}, {"solver", fa.solver}};
  bool full = false;
  Capacity value = 0;
  Capacity scale = 1;
  VertexSet cut;
  std::optional<Rational> phi;
  if (fa.solver == "exact") {
    ExactFlowOptions o;
    o.check_invariants = fa.check_invariants;
    const ExactFlowResult r = local_flow_exact(g, a, alpha, e, o);
    full = r.full_flow;
    value = r.flow.value();
    scale = r.flow.network().scale();
    cut = r.cut;
    phi = r.cut_conductance;
    j["exact"] = true;
    j["binary_calls"] = r.stats.binary_calls;
    j["touched_volume"] = r.stats.touched_volume;
    if (fa.check_invariants) j["invariant_violations"] = r.invariants.total_violations();
  } else {
    LocalFlowOptions o;
    o.phase_limit = fa.phase_limit;
    o.check_invariants = fa.check_invariants;
    const LocalFlowResult r = local_flow(g, a, alpha, e, o);
    full = r.full_flow;
    value = r.flow.value();
    scale = r.flow.network().scale();
    cut = r.cut;
    phi = r.cut_conductance;
    j["exact"] = r.exact;
    j["phases"] = r.stats.phases;
    j["phase_budget"] = r.stats.phase_budget;
    j["layer"] = r.layer;
    j["touched_volume"] = r.stats.touched_volume;
    if (fa.check_invariants) j["invariant_violations"] = r.invariants.total_violations();
  }
  const Rational flow_value(value, scale);
  j["flow_value"] = to_json(flow_value);
  j["vol_a"] = a.volume();
  j["full_flow"] = full;
  j["cut"] = to_json(cut);
  j["phi"] = phi ? to_json(*phi) : json(nullptr);
  std::vector<std::pair<std::string, std::string>> human{
      {"flow value", flow_value.to_string()},
      {"vol(A)", std::to_string(a.volume())},
      {"full flow", full ? "yes" : "no"}};
  if (!cut.empty()) {
    human.emplace_back("cut", set_string(cut));
    human.emplace_back("phi", phi ? phi->to_string() : "undefined");
  }
  emit(out, c, j, human);
  return kExitOk;
}

struct CertifyArgs {
  std::string alpha = "1";
  std::string sigma = "1";
  std::string write_path;
  std::string validate_path;
};

int cmd_certify(const Common& c, const SeedArgs& s, const CertifyArgs& ca, std::ostream& out,
                std::ostream& err) {
  const Graph g = load_graph(c.graph_path, parse_format(c.format));
  if (ca.write_path.empty() == ca.validate_path.empty()) {
    throw InputError("give exactly one of --write and --validate");
  }
  if (!ca.write_path.empty()) {
    const VertexSet a = resolve_seeds(s, g);
    const Rational alpha = parse_rational("alpha", ca.alpha);
    const Rational sigma = parse_rational("sigma", ca.sigma);
    const ExactFlowResult r = local_flow_exact(g, a, alpha, epsilon_sigma(sigma, g, a));
    if (!r.full_flow) {
      err << "flow value " << Rational(r.flow.value(), r.flow.network().scale())
          << " is below vol(A) = " << a.volume() << "; no certificate written\n";
      emit(out, c, json{{"written", false}, {"cut", to_json(r.cut)}},
           {{"written", "no"}, {"cut", set_string(r.cut)}});
      return kExitNegative;
    }
    std::ofstream f(ca.write_path);
    if (!f) throw InputError("cannot write " + ca.write_path);
    const FlowCertificate cert = make_certificate(r.flow);
    write_certificate(f, cert);
    emit(out, c, json{{"written", true}, {"paths", cert.paths.size()}},
         {{"written", ca.write_path}, {"paths", std::to_string(cert.paths.size())}});
    return kExitOk;
  }
  std::ifstream f(ca.validate_path);
  if (!f) throw InputError("cannot open " + ca.validate_path);
  const FlowCertificate cert = read_certificate(f);
  const RoutingReport rep = validate_certificate(g, cert);
  for (const auto& v : rep.violations) err << v << '\n';
  emit(out, c, json{{"valid", rep.ok}, {"violations", rep.violations}},
       {{"valid", rep.ok ? "yes" : "no"}});
  return rep.ok ? kExitOk : kExitNegative;
}

struct SeedCmdArgs {
  std::vector<Vertex> vertices;
  double teleport = 0.1;
  std::optional<std::int64_t> volume_cap;
  unsigned jobs = 1;
};

int cmd_seed(const Common& c, const SeedCmdArgs& sa, std::ostream& out) {
  const Graph g = load_graph(c.graph_path, parse_format(c.format));
  if (sa.vertices.empty()) throw InputError("--vertex is required");
  for (Vertex v : sa.vertices) {
    if (!g.contains(v)) throw InputError("vertex " + std::to_string(v) + " is not in the graph");
  }
  ApprConfig config;
  config.teleport = sa.teleport;
  config.volume_cap = sa.volume_cap;

  std::vector<std::optional<SweepResult>> results(sa.vertices.size());
  std::vector<std::string> errors(sa.vertices.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < sa.vertices.size(); i = next++) {
      try {
        results[i] = sweep_cut(g, appr_push(g, sa.vertices[i], config));
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(sa.jobs, sa.vertices.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) throw ParameterError(errors[i]);
  }
  json arr = json::array();
  std::vector<std::pair<std::string, std::string>> human;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const SweepResult& r = *results[i];
    arr.push_back(json{{"vertex", sa.vertices[i]},
                       {"set", to_json(r.set)},
                       {"vol", r.set.volume()},
                       {"phi", to_json(r.conductance)}});
    human.emplace_back("vertex " + std::to_string(sa.vertices[i]),
                       set_string(r.set) + " (phi " + r.conductance.to_string() + ")");
  }
  emit(out, c, json{{"sweeps", arr}}, human);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flow-based local graph clustering", "localflow"};
  app.require_subcommand(1);

  Common common;
  SeedArgs seeds;

  auto* stats = app.add_subcommand("stats", "graph size and seed set statistics");
  add_common(stats, common);
  add_seeds(stats, seeds);

  ImproveArgs ia;
  auto* improve = app.add_subcommand("improve", "local improvement, approximate solver");
  auto* improve_exact = app.add_subcommand("improve-exact", "local improvement, exact solver");
  for (auto* cmd : {improve, improve_exact}) {
    add_common(cmd, common);
    add_seeds(cmd, seeds);
    cmd->add_option("-s,--sigma", ia.sigma, "locality parameter in (0, 1]")->required();
    cmd->add_option("-e,--eps", ia.eps, "binary search precision in (0, 1]");
    cmd->add_flag("--check-invariants", ia.check_invariants, "record runtime checks");
    cmd->add_option("--certificate", ia.certificate_path,
                    "write the full-flow certificate when there is no improvement");
  }
  improve->add_option("--phase-limit", ia.phase_limit, "override the phase budget");

  FlowArgs fa;
  auto* flow = app.add_subcommand("flow", "one flow computation at a fixed alpha");
  add_common(flow, common);
  add_seeds(flow, seeds);
  flow->add_option("--alpha", fa.alpha, "alpha in (0, 1]")->required();
  flow->add_option("-s,--sigma", fa.sigma, "locality parameter in (0, 1]");
  flow->add_option("--solver", fa.solver, "approx | exact")
      ->check(CLI::IsMember({"approx", "exact"}));
  flow->add_option("--phase-limit", fa.phase_limit, "override the phase budget");
  flow->add_flag("--check-invariants", fa.check_invariants, "record runtime checks");

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "write or validate a flow certificate");
  add_common(certify, common);
  add_seeds(certify, seeds);
  certify->add_option("--alpha", ca.alpha, "alpha in (0, 1]");
  certify->add_option("-s,--sigma", ca.sigma, "locality parameter in (0, 1]");
  certify->add_option("--write", ca.write_path, "certificate output path");
  certify->add_option("--validate", ca.validate_path, "certificate to check");

  SeedCmdArgs sa;
  auto* seed = app.add_subcommand("seed", "personalized PageRank sweep sets");
  add_common(seed, common);
  seed->add_option("-v,--vertex", sa.vertices, "seed vertices (one job each)");
  seed->add_option("--teleport", sa.teleport, "teleport probability");
  seed->add_option("--volume-cap", sa.volume_cap, "target volume");
  seed->add_option("-j,--jobs", sa.jobs, "worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    if (stats->parsed()) return cmd_stats(common, seeds, out);
    if (improve->parsed()) return cmd_improve(common, seeds, ia, Solver::kApprox, out);
    if (improve_exact->parsed()) return cmd_improve(common, seeds, ia, Solver::kExact, out);
    if (flow->parsed()) return cmd_flow(common, seeds, fa, out);
    if (certify->parsed()) return cmd_certify(common, seeds, ca, out, err);
    if (seed->parsed()) return cmd_seed(common, sa, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return kExitInputError;
}

}  // namespace localflow
