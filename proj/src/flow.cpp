#include "localflow/flow.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "localflow/errors.hpp"

namespace localflow {
namespace {

constexpr NodeId kSourceNode = kNoNode - 1;
constexpr NodeId kSinkNode = kNoNode - 2;

}  // namespace

FlowState::FlowState(AugmentedGraph ag) : ag_(std::move(ag)) {
  seed_nodes_.reserve(ag_.seeds().size());
  for (Vertex v : ag_.seeds()) seed_nodes_.push_back(touch(v));
}

NodeId FlowState::find(Vertex v) const {
  auto it = index_.find(v);
  return it == index_.end() ? kNoNode : it->second;
}

NodeId FlowState::touch(Vertex v) {
  auto [it, inserted] = index_.try_emplace(v, static_cast<NodeId>(nodes_.size()));
  if (inserted) {
    Node node;
    node.vertex = v;
    if (ag_.is_seed(v)) node.flags |= kSeedFlag;
    node.sink_cap = ag_.sink_capacity(v);
    nodes_.push_back(node);
  }
  return it->second;
}

void FlowState::set_modern(NodeId n, bool on) {
  if (on) {
    nodes_[n].flags |= kModernFlag;
  } else {
    nodes_[n].flags &= static_cast<std::uint8_t>(~kModernFlag);
  }
}

void FlowState::expand(NodeId n) {
  if (is_expanded(n)) return;
  const Graph& g = graph();
  const Vertex u = nodes_[n].vertex;
  const std::size_t deg = static_cast<std::size_t>(g.degree(u));
  const std::size_t begin = arc_head_.size();
  nodes_[n].arc_begin = begin;
  arc_head_.resize(begin + deg);
  arc_flow_.resize(begin + deg, 0);
  arc_mate_.resize(begin + deg, kNoArc);
  for (std::size_t k = 0; k < deg; ++k) {
    const ArcIndex pos = g.arc_begin(u) + k;
    const Vertex w = g.arc_head(pos);
    const NodeId nw = touch(w);
    arc_head_[begin + k] = nw;
    if (is_expanded(nw)) {
      const std::size_t mate = nodes_[nw].arc_begin + (g.arc_mate(pos) - g.arc_begin(w));
      arc_mate_[begin + k] = mate;
      arc_mate_[mate] = begin + k;
      arc_flow_[begin + k] = -arc_flow_[mate];
    }
  }
  expanded_volume_ += static_cast<std::int64_t>(deg);
}

void FlowState::push_arc(std::size_t a, Capacity x) {
  arc_flow_[a] += x;
  if (arc_mate_[a] != kNoArc) arc_flow_[arc_mate_[a]] -= x;
}

Capacity FlowState::source_residual(NodeId n) const {
  if (!is_seed(n)) return 0;
  return ag_.scale() * degree(n) - nodes_[n].source_flow;
}

void FlowState::push_source(NodeId n, Capacity x) { nodes_[n].source_flow += x; }

void FlowState::push_sink(NodeId n, Capacity x) {
  nodes_[n].sink_flow += x;
  value_ += x;
}

Capacity FlowState::source_flow_of(Vertex v) const {
  NodeId n = find(v);
  return n == kNoNode ? 0 : nodes_[n].source_flow;
}

Capacity FlowState::sink_flow_of(Vertex v) const {
  NodeId n = find(v);
  return n == kNoNode ? 0 : nodes_[n].sink_flow;
}

Capacity FlowState::edge_flow(Vertex u, ArcIndex a) const {
  const Graph& g = graph();
  NodeId n = find(u);
  if (n != kNoNode && is_expanded(n)) return arc_flow_[nodes_[n].arc_begin + (a - g.arc_begin(u))];
  const Vertex w = g.arc_head(a);
  NodeId nw = find(w);
  if (nw != kNoNode && is_expanded(nw)) {
    return -arc_flow_[nodes_[nw].arc_begin + (g.arc_mate(a) - g.arc_begin(w))];
  }
  return 0;
}

std::vector<Vertex> FlowState::touched_vertices() const {
  std::vector<Vertex> out;
  out.reserve(nodes_.size());
  for (const Node& node : nodes_) out.push_back(node.vertex);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> FlowState::expanded_vertices() const {
  std::vector<Vertex> out;
  for (const Node& node : nodes_) {
    if (node.arc_begin != kNoArc) out.push_back(node.vertex);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void FlowState::validate() const {
  auto fail = [](const std::string& what) { throw InvariantViolation("flow state: " + what); };
  const Capacity cap = ag_.edge_capacity();
  std::vector<Capacity> net(nodes_.size(), 0);
  for (NodeId n = 0; n < nodes_.size(); ++n) {
    if (!is_expanded(n)) continue;
    const std::size_t begin = nodes_[n].arc_begin;
    for (std::size_t a = begin; a < begin + static_cast<std::size_t>(degree(n)); ++a) {
      if (arc_flow_[a] > cap || arc_flow_[a] < -cap) fail("edge capacity exceeded");
      const std::size_t mate = arc_mate_[a];
      if (mate != kNoArc) {
        if (arc_mate_[mate] != a) fail("mate links inconsistent");
        if (arc_flow_[mate] != -arc_flow_[a]) fail("flow not antisymmetric");
      } else {
        if (is_expanded(arc_head_[a])) fail("missing mate between expanded nodes");
        net[arc_head_[a]] -= arc_flow_[a];
      }
      net[n] += arc_flow_[a];
    }
  }
  Capacity into_t = 0;
  Capacity out_of_s = 0;
  for (NodeId n = 0; n < nodes_.size(); ++n) {
    const Node& node = nodes_[n];
    if (node.sink_flow < 0 || node.sink_flow > node.sink_cap) fail("sink capacity exceeded");
    if (node.source_flow < 0 || node.source_flow > (is_seed(n) ? ag_.scale() * degree(n) : 0)) {
      fail("source capacity exceeded");
    }
    if (net[n] + node.sink_flow - node.source_flow != 0) {
      fail("conservation fails at vertex " + std::to_string(node.vertex));
    }
    into_t += node.sink_flow;
    out_of_s += node.source_flow;
  }
  if (into_t != value_ || out_of_s != value_) fail("flow value inconsistent");
}

bool is_modern_arc(const FlowState& fs, NodeId u, std::size_t a) {
  return fs.is_modern(u) && fs.is_modern(fs.arc_head(a));
}

int arc_length(const FlowState& fs, const Lengths& len, const DistanceLabels& d, NodeId u,
               std::size_t a) {
  if (len.kind == Lengths::Kind::kUnit) return 1;
  if (!is_modern_arc(fs, u, a)) return 1;
  const Capacity r = fs.arc_residual(a);
  if (r >= 3 * len.delta) return 0;
  const NodeId v = fs.arc_head(a);
  if (d.at(u) != DistanceLabels::kInf && d.at(u) == d.at(v) && r >= 2 * len.delta &&
      fs.arc_reverse_residual(a) >= 3 * len.delta) {
    return 0;
  }
  return 1;
}

DistanceLabels compute_distances(FlowState& fs, const Lengths& len, Scope scope,
                                 bool stop_at_sink) {
  DistanceLabels d;
  d.dist.assign(fs.num_nodes(), DistanceLabels::kInf);
  std::deque<std::pair<NodeId, int>> dq;
  const bool binary = len.kind == Lengths::Kind::kBinary;
  auto relax = [&](NodeId v, int nd, bool front) {
    if (v >= d.dist.size()) d.dist.resize(fs.num_nodes(), DistanceLabels::kInf);
    if (nd < d.dist[v]) {
      d.dist[v] = nd;
      if (front) {
        dq.emplace_front(v, nd);
      } else {
        dq.emplace_back(v, nd);
      }
    }
  };
  for (NodeId u : fs.seed_nodes()) {
    if (fs.source_residual(u) > 0) relax(u, 1, false);
  }
  bool stopped = false;
  bool skipped = false;
  while (!dq.empty()) {
    auto [u, du] = dq.front();
    dq.pop_front();
    if (du != d.dist[u]) continue;
    if (stop_at_sink && du >= d.sink) {
      stopped = true;
      break;
    }
    if (scope == Scope::kGlobal || fs.is_seed(u) || fs.is_saturated(u)) {
      fs.expand(u);
      const std::size_t begin = fs.arc_begin(u);
      const std::size_t end = begin + static_cast<std::size_t>(fs.degree(u));
      for (std::size_t a = begin; a < end; ++a) {
        const Capacity r = fs.arc_residual(a);
        if (r <= 0) continue;
        const NodeId v = fs.arc_head(a);
        const bool short_arc = binary && r >= 3 * len.delta && is_modern_arc(fs, u, a);
        relax(v, short_arc ? du : du + 1, short_arc);
      }
    } else {
      skipped = true;
    }
    if (!fs.is_seed(u) && fs.sink_residual(u) > 0) d.sink = std::min(d.sink, du + 1);
  }
  d.dist.resize(fs.num_nodes(), DistanceLabels::kInf);
  d.complete = !stopped && !skipped;
  return d;
}

BlockingResult blocking_flow(FlowState& fs, const DistanceLabels& d) {
  BlockingResult result;
  if (!d.reaches_sink()) return result;
  struct Step {
    NodeId tail;
    std::size_t slot;
    NodeId head;
  };
  const std::size_t n = fs.num_nodes();
  std::vector<std::size_t> cur(n);
  for (NodeId u = 0; u < n; ++u) {
    cur[u] = fs.is_expanded(u) ? 0 : static_cast<std::size_t>(fs.degree(u));
  }
  std::vector<char> dead(n, 0);
  std::size_t cur_s = 0;
  const auto seeds = fs.seed_nodes();
  std::vector<Step> path;

  auto residual = [&](const Step& st) -> Capacity {
    if (st.tail == kSourceNode) return fs.source_residual(st.head);
    if (st.head == kSinkNode) return fs.sink_residual(st.tail);
    return fs.arc_residual(fs.arc_begin(st.tail) + st.slot);
  };
  auto apply = [&](const Step& st, Capacity x) {
    if (st.tail == kSourceNode) {
      fs.push_source(st.head, x);
    } else if (st.head == kSinkNode) {
      fs.push_sink(st.tail, x);
    } else {
      fs.push_arc(fs.arc_begin(st.tail) + st.slot, x);
    }
  };

  while (true) {
    const NodeId u = path.empty() ? kSourceNode : path.back().head;
    if (u == kSinkNode) {
      Capacity b = residual(path.front());
      for (const Step& st : path) b = std::min(b, residual(st));
      for (const Step& st : path) apply(st, b);
      result.value += b;
      ++result.paths;
      std::size_t i = 0;
      while (i < path.size() && residual(path[i]) > 0) ++i;
      path.resize(i);
      continue;
    }
    if (u == kSourceNode) {
      bool found = false;
      for (; cur_s < seeds.size(); ++cur_s) {
        const NodeId v = seeds[cur_s];
        if (!dead[v] && fs.source_residual(v) > 0 && d.at(v) == 1 && 1 < d.sink) {
          path.push_back({kSourceNode, cur_s, v});
          found = true;
          break;
        }
      }
      if (!found) break;
      continue;
    }
    const int du = d.at(u);
    const std::size_t deg = static_cast<std::size_t>(fs.degree(u));
    bool found = false;
    for (; cur[u] <= deg; ++cur[u]) {
      const std::size_t k = cur[u];
      if (k == deg) {
        if (!fs.is_seed(u) && fs.sink_residual(u) > 0 && du + 1 == d.sink) {
          path.push_back({u, k, kSinkNode});
          found = true;
          break;
        }
        continue;
      }
      const std::size_t a = fs.arc_begin(u) + k;
      const NodeId v = fs.arc_head(a);
      const int dv = d.at(v);
      if (!dead[v] && fs.arc_residual(a) > 0 && dv == du + 1 && dv < d.sink) {
        path.push_back({u, k, v});
        found = true;
        break;
      }
    }
    if (found) continue;
    dead[u] = 1;
    path.pop_back();
    if (path.empty()) {
      ++cur_s;
    } else {
      ++cur[path.back().head];
    }
  }
  return result;
}

BinaryBlockingResult binary_blocking_flow(FlowState& fs, const DistanceLabels& d,
                                          Capacity delta) {
  BinaryBlockingResult result;
  if (!d.reaches_sink() || delta <= 0) return result;
  const Lengths len = Lengths::binary(delta);
  const std::size_t n = fs.num_nodes();
  auto active = [&](NodeId u) { return d.at(u) < d.sink; };

  // Short admissible arcs, grouped by tail and by head.
  struct ShortArc {
    NodeId tail;
    NodeId head;
    std::size_t arc;
  };
  std::vector<ShortArc> short_arcs;
  std::vector<std::size_t> out_begin(n + 1, 0);
  for (NodeId u = 0; u < n; ++u) {
    if (!active(u) || !fs.is_expanded(u)) continue;
    const std::size_t begin = fs.arc_begin(u);
    const std::size_t end = begin + static_cast<std::size_t>(fs.degree(u));
    for (std::size_t a = begin; a < end; ++a) {
      if (fs.arc_residual(a) <= 0) continue;
      const NodeId v = fs.arc_head(a);
      if (d.at(v) != d.at(u)) continue;
      if (arc_length(fs, len, d, u, a) != 0) continue;
      short_arcs.push_back({u, v, a});
      ++out_begin[u + 1];
    }
  }
  for (std::size_t i = 0; i < n; ++i) out_begin[i + 1] += out_begin[i];

  // Tarjan's algorithm over short arcs, iterative.
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> comp(n, kUnvisited);
  std::vector<std::uint32_t> index(n, kUnvisited);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<NodeId> stack;
  std::vector<std::pair<NodeId, std::size_t>> call;
  std::uint32_t next_index = 0;
  std::uint32_t num_comps = 0;
  for (NodeId root = 0; root < n; ++root) {
    if (!active(root) || index[root] != kUnvisited) continue;
    call.emplace_back(root, out_begin[root]);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [u, it] = call.back();
      if (it < out_begin[u + 1]) {
        const NodeId v = short_arcs[it].head;
        ++it;
        if (index[v] == kUnvisited) {
          index[v] = low[v] = next_index++;
          stack.push_back(v);
          on_stack[v] = 1;
          call.emplace_back(v, out_begin[v]);
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], index[v]);
        }
        continue;
      }
      const NodeId done = u;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = num_comps;
        } while (w != done);
        ++num_comps;
      }
    }
  }
  std::vector<std::uint32_t> comp_size(num_comps, 0);
  for (NodeId u = 0; u < n; ++u) {
    if (comp[u] != kUnvisited) ++comp_size[comp[u]];
  }

  // Admissible arcs between different components, grouped by tail component.
  constexpr std::size_t kSinkSlot = SIZE_MAX;
  struct CrossArc {
    NodeId tail;
    std::size_t arc;  // kSinkSlot for the arc to t
    NodeId head;      // kSinkNode for the arc to t
  };
  std::vector<CrossArc> cross;
  std::vector<std::uint32_t> cross_comp;
  for (NodeId u = 0; u < n; ++u) {
    if (!active(u)) continue;
    const int du = d.at(u);
    if (fs.is_expanded(u)) {
      const std::size_t begin = fs.arc_begin(u);
      const std::size_t end = begin + static_cast<std::size_t>(fs.degree(u));
      for (std::size_t a = begin; a < end; ++a) {
        if (fs.arc_residual(a) <= 0) continue;
        const NodeId v = fs.arc_head(a);
        const int dv = d.at(v);
        if (dv >= d.sink) continue;
        if (dv != du + arc_length(fs, len, d, u, a)) continue;
        if (comp[v] == comp[u]) continue;
        cross.push_back({u, a, v});
        cross_comp.push_back(comp[u]);
      }
    }
    if (!fs.is_seed(u) && fs.sink_residual(u) > 0 && du + 1 == d.sink) {
      cross.push_back({u, kSinkSlot, kSinkNode});
      cross_comp.push_back(comp[u]);
    }
  }
  std::vector<std::size_t> cross_begin(num_comps + 1, 0);
  for (std::uint32_t c : cross_comp) ++cross_begin[c + 1];
  for (std::size_t c = 0; c < num_comps; ++c) cross_begin[c + 1] += cross_begin[c];
  std::vector<std::size_t> cross_order(cross.size());
  {
    std::vector<std::size_t> fill(cross_begin.begin(), cross_begin.end() - 1);
    for (std::size_t i = 0; i < cross.size(); ++i) cross_order[fill[cross_comp[i]]++] = i;
  }

  std::vector<NodeId> source_arcs;
  for (NodeId u : fs.seed_nodes()) {
    if (fs.source_residual(u) > 0 && d.at(u) == 1 && 1 < d.sink) source_arcs.push_back(u);
  }

  // Blocking flow on the component DAG, capped at delta.
  std::vector<Capacity> excess(n, 0);
  std::vector<std::size_t> cur(cross_begin.begin(), cross_begin.end() - 1);
  std::vector<char> dead(num_comps, 0);
  std::size_t cur_s = 0;
  constexpr std::size_t kFromSource = SIZE_MAX;
  struct Step {
    std::size_t cross;  // kFromSource: s -> source_arcs[slot]
    std::size_t slot;
  };
  std::vector<Step> path;
  auto head_of = [&](const Step& st) {
    return st.cross == kFromSource ? source_arcs[st.slot] : cross[st.cross].head;
  };
  auto residual = [&](const Step& st) -> Capacity {
    if (st.cross == kFromSource) return fs.source_residual(source_arcs[st.slot]);
    const CrossArc& c = cross[st.cross];
    if (c.arc == kSinkSlot) return fs.sink_residual(c.tail);
    return fs.arc_residual(c.arc);
  };
  auto apply = [&](const Step& st, Capacity x) {
    if (st.cross == kFromSource) {
      const NodeId v = source_arcs[st.slot];
      fs.push_source(v, x);
      if (comp_size[comp[v]] > 1) excess[v] += x;
      return;
    }
    const CrossArc& c = cross[st.cross];
    if (comp_size[comp[c.tail]] > 1) excess[c.tail] -= x;
    if (c.arc == kSinkSlot) {
      fs.push_sink(c.tail, x);
      return;
    }
    fs.push_arc(c.arc, x);
    if (comp_size[comp[c.head]] > 1) excess[c.head] += x;
  };

  Capacity total = 0;
  while (total < delta) {
    const NodeId u = path.empty() ? kSourceNode : head_of(path.back());
    if (u == kSinkNode) {
      Capacity b = delta - total;
      for (const Step& st : path) b = std::min(b, residual(st));
      for (const Step& st : path) apply(st, b);
      total += b;
      std::size_t i = 0;
      while (i < path.size() && residual(path[i]) > 0) ++i;
      path.resize(i);
      continue;
    }
    if (u == kSourceNode) {
      bool found = false;
      for (; cur_s < source_arcs.size(); ++cur_s) {
        const NodeId v = source_arcs[cur_s];
        if (!dead[comp[v]] && fs.source_residual(v) > 0) {
          path.push_back({kFromSource, cur_s});
          found = true;
          break;
        }
      }
      if (!found) break;
      continue;
    }
    const std::uint32_t cu = comp[u];
    bool found = false;
    for (; cur[cu] < cross_begin[cu + 1]; ++cur[cu]) {
      const std::size_t ci = cross_order[cur[cu]];
      const Step st{ci, 0};
      const NodeId v = cross[ci].head;
      if (v != kSinkNode && dead[comp[v]]) continue;
      if (residual(st) <= 0) continue;
      path.push_back(st);
      found = true;
      break;
    }
    if (found) continue;
    dead[cu] = 1;
    path.pop_back();
    if (path.empty()) {
      ++cur_s;
    } else {
      const NodeId top = head_of(path.back());
      ++cur[comp[top]];
    }
  }
  result.value = total;
  result.outcome = total == delta ? BinaryOutcome::kDeltaFlow : BinaryOutcome::kBlockingFlow;

  // Route the imbalance inside each contracted component through its root.
  std::vector<std::size_t> in_begin(n + 1, 0);
  for (const ShortArc& s : short_arcs) ++in_begin[s.head + 1];
  for (std::size_t i = 0; i < n; ++i) in_begin[i + 1] += in_begin[i];
  std::vector<std::size_t> in_order(short_arcs.size());
  {
    std::vector<std::size_t> fill(in_begin.begin(), in_begin.end() - 1);
    for (std::size_t i = 0; i < short_arcs.size(); ++i) in_order[fill[short_arcs[i].head]++] = i;
  }
  std::vector<std::vector<NodeId>> members(num_comps);
  for (NodeId u = 0; u < n; ++u) {
    if (comp[u] != kUnvisited && comp_size[comp[u]] > 1) members[comp[u]].push_back(u);
  }
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> parent_arc(n);
  std::vector<NodeId> parent(n);
  std::vector<Capacity> load(n, 0);
  auto push_checked = [&](std::size_t a, Capacity x) {
    if (x <= 0) return;
    if (fs.arc_residual(a) < x) throw InvariantViolation("tree routing exceeds residual capacity");
    fs.push_arc(a, x);
  };
  for (std::uint32_t c = 0; c < num_comps; ++c) {
    if (comp_size[c] <= 1) continue;
    const auto& mem = members[c];
    result.contracted_nodes += mem.size();
    Capacity surplus = 0;
    Capacity deficit = 0;
    for (NodeId x : mem) {
      if (excess[x] > 0) surplus += excess[x];
      if (excess[x] < 0) deficit -= excess[x];
    }
    if (surplus != deficit) throw InvariantViolation("component imbalance does not cancel");
    if (surplus == 0) continue;
    if (surplus > delta) throw InvariantViolation("component throughput exceeds delta");
    const NodeId root = mem.front();
    // In-tree: every member sends its surplus toward the root.
    std::vector<NodeId> order{root};
    seen[root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const NodeId y = order[i];
      for (std::size_t k = in_begin[y]; k < in_begin[y + 1]; ++k) {
        const ShortArc& s = short_arcs[in_order[k]];
        if (comp[s.tail] != c || seen[s.tail]) continue;
        seen[s.tail] = 1;
        parent_arc[s.tail] = s.arc;
        parent[s.tail] = y;
        order.push_back(s.tail);
      }
    }
    if (order.size() != mem.size()) throw InvariantViolation("in-tree does not span component");
    for (NodeId x : mem) load[x] = std::max<Capacity>(excess[x], 0);
    for (std::size_t i = order.size(); i-- > 1;) {
      const NodeId x = order[i];
      push_checked(parent_arc[x], load[x]);
      load[parent[x]] += load[x];
    }
    for (NodeId x : mem) seen[x] = 0;
    // Out-tree: the root serves every member's deficit.
    order.assign(1, root);
    seen[root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const NodeId y = order[i];
      for (std::size_t k = out_begin[y]; k < out_begin[y + 1]; ++k) {
        const ShortArc& s = short_arcs[k];
        if (comp[s.head] != c || seen[s.head]) continue;
        seen[s.head] = 1;
        parent_arc[s.head] = s.arc;
        parent[s.head] = y;
        order.push_back(s.head);
      }
    }
    if (order.size() != mem.size()) throw InvariantViolation("out-tree does not span component");
    for (NodeId x : mem) load[x] = std::max<Capacity>(-excess[x], 0);
    for (std::size_t i = order.size(); i-- > 1;) {
      const NodeId x = order[i];
      push_checked(parent_arc[x], load[x]);
      load[parent[x]] += load[x];
    }
    for (NodeId x : mem) seen[x] = 0;
  }
  return result;
}

VertexSet residual_source_side(FlowState& fs, Scope scope) {
  DistanceLabels d = compute_distances(fs, Lengths::unit(), scope, false);
  std::vector<Vertex> side;
  for (NodeId u = 0; u < fs.num_nodes(); ++u) {
    if (d.at(u) != DistanceLabels::kInf) side.push_back(fs.vertex(u));
  }
  return VertexSet(fs.graph(), std::move(side));
}

void InvariantMonitor::check(std::string_view name, bool ok, std::string_view detail) {
  auto it = counters_.find(name);
  if (it == counters_.end()) it = counters_.emplace(std::string(name), Counter{}).first;
  Counter& c = it->second;
  ++c.checks;
  if (ok) return;
  ++c.violations;
  if (c.first_failure.empty()) c.first_failure = detail.empty() ? "failed" : std::string(detail);
  if (strict_) {
    throw InvariantViolation(std::string(name) + ": " + c.first_failure);
  }
}

void InvariantMonitor::merge(const InvariantMonitor& other) {
  for (const auto& [name, oc] : other.counters_) {
    Counter& c = counters_[name];
    c.checks += oc.checks;
    c.violations += oc.violations;
    if (c.first_failure.empty()) c.first_failure = oc.first_failure;
  }
}

std::size_t InvariantMonitor::total_checks() const {
  std::size_t t = 0;
  for (const auto& [name, c] : counters_) t += c.checks;
  return t;
}

std::size_t InvariantMonitor::total_violations() const {
  std::size_t t = 0;
  for (const auto& [name, c] : counters_) t += c.violations;
  return t;
}

std::string InvariantMonitor::summary() const {
  std::ostringstream os;
  for (const auto& [name, c] : counters_) {
    os << name << ": " << c.checks << " checks, " << c.violations << " violations";
    if (c.violations > 0) os << " (" << c.first_failure << ")";
    os << "\n";
  }
  return os.str();
}

bool labels_monotone(const DistanceLabels& before, const DistanceLabels& after) {
  constexpr int kInf = DistanceLabels::kInf;
  const std::size_t n = std::max(before.dist.size(), after.dist.size());
  for (NodeId u = 0; u < n; ++u) {
    const int b = before.at(u);
    const int a = after.at(u);
    if (b != kInf && a != kInf && a < b) return false;
    if (b == kInf && a != kInf && before.complete) return false;
  }
  return after.sink >= before.sink;
}

MaxFlowResult global_max_flow(const AugmentedGraph& ag, InvariantMonitor* monitor) {
  FlowState fs(ag);
  std::size_t phases = 0;
  DistanceLabels prev;
  while (true) {
    DistanceLabels d = compute_distances(fs, Lengths::unit(), Scope::kGlobal, false);
    if (monitor != nullptr) {
      if (phases == 0) {
        monitor->check("dinic.initial_sink_distance", !d.reaches_sink() || d.sink >= 3);
      } else {
        monitor->check("dinic.labels_monotone", labels_monotone(prev, d));
        monitor->check("dinic.sink_distance_grows", !d.reaches_sink() || d.sink > prev.sink);
      }
    }
    if (!d.reaches_sink()) {
      std::vector<Vertex> side;
      for (NodeId u = 0; u < fs.num_nodes(); ++u) {
        if (d.at(u) != DistanceLabels::kInf) side.push_back(fs.vertex(u));
      }
      VertexSet cut(ag.graph(), std::move(side));
      return MaxFlowResult{std::move(fs), std::move(cut), phases};
    }
    blocking_flow(fs, d);
    ++phases;
    prev = std::move(d);
  }
}

}  // namespace localflow
