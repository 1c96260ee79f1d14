#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <string>

namespace oracle {

std::vector<bool> reach(const TemporalGraph& g, VertexId source, Semantics sem) {
  constexpr Time kNever = static_cast<Time>(-1);
  std::vector<Time> arrival(g.vertex_count(), kNever);
  arrival[source] = 0;
  auto usable = [&](Time at, Time t) {
    return at != kNever && (sem == Semantics::NonStrict ? t >= at : t > at);
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : g.edges()) {
      for (const auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        if (usable(arrival[a], e.t) && (arrival[b] == kNever || e.t < arrival[b])) {
          arrival[b] = e.t;
          changed = true;
        }
      }
    }
  }
  std::vector<bool> out(g.vertex_count());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = arrival[v] != kNever;
  return out;
}

bool connected(const TemporalGraph& g, Semantics sem) {
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    const auto r = reach(g, s, sem);
    if (std::find(r.begin(), r.end(), false) != r.end()) return false;
  }
  return true;
}

std::vector<std::vector<VertexId>> components(std::size_t n,
                                              const std::vector<std::pair<VertexId, VertexId>>& edges) {
  std::vector<std::vector<VertexId>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::vector<VertexId>> out;
  for (VertexId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<VertexId> part, stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      part.push_back(v);
      for (const auto w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(part.begin(), part.end());
    out.push_back(part);
  }
  return out;
}

std::vector<std::vector<VertexId>> snapshot_components(const TemporalGraph& g, Time t) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (const auto& e : g.edges())
    if (e.t == t) edges.emplace_back(e.u, e.v);
  return components(g.vertex_count(), edges);
}

std::vector<Journey> simple_journeys(const TemporalGraph& g, Semantics sem) {
  std::vector<Journey> out;
  std::vector<bool> visited(g.vertex_count(), false);
  Journey current;
  current.semantics = sem;
  std::function<void(VertexId, Time)> dfs = [&](VertexId pos, Time last) {
    out.push_back(current);
    for (const auto& e : g.edges()) {
      if (!e.has_endpoint(pos)) continue;
      if (sem == Semantics::NonStrict ? e.t < last : e.t <= last) continue;
      const auto next = e.other(pos);
      if (visited[next]) continue;
      visited[next] = true;
      current.hops.push_back({pos, next, e.t});
      dfs(next, e.t);
      current.hops.pop_back();
      visited[next] = false;
    }
  };
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    current.source = s;
    visited[s] = true;
    dfs(s, 0);
    visited[s] = false;
  }
  return out;
}

// ---------------------------------------------------------------------------------------

std::vector<PathJourney> canonical_paths(const tca::ExpansionGraph& exp) {
  using Kind = tca::ExpansionNode::Kind;
  const auto& nodes = exp.nodes();
  std::vector<PathJourney> out;
  PathJourney cur;
  std::vector<bool> visited(exp.vertex_count(), false);

  // pos: the journey's current vertex (for gadget nodes, the endpoint it was entered from).
  std::function<void(std::size_t, VertexId)> dfs = [&](std::size_t node, VertexId pos) {
    const auto& x = nodes[node];
    if (x.kind == Kind::Copy && x.time == exp.lifespan() + 1) {
      out.push_back(cur);
      return;
    }
    for (const auto a : exp.out_arcs()[node]) {
      const auto next = exp.arcs()[a].to;
      const auto& y = nodes[next];
      VertexId next_pos = pos;
      bool hop = false;
      if (x.kind == Kind::GateOut) {
        const auto& e = exp.edges()[x.edge];
        // Leaving a gadget must cross its edge: to the far endpoint, or through a gray arc
        // into an edge at the far endpoint.
        const VertexId far = e.other(pos);
        if (y.kind == Kind::Copy && y.vertex != far) continue;
        if (y.kind == Kind::GateIn && !exp.edges()[y.edge].has_endpoint(far)) continue;
        next_pos = far;
        hop = true;
        if (visited[far]) continue;
        visited[far] = true;
        cur.journey.hops.push_back({pos, far, e.t});
      }
      cur.path.push_back(next);
      dfs(next, next_pos);
      cur.path.pop_back();
      if (hop) {
        cur.journey.hops.pop_back();
        visited[next_pos] = false;
      }
    }
  };
  for (VertexId s = 0; s < exp.vertex_count(); ++s) {
    cur.path = {exp.copy_node(s, 1)};
    cur.journey = Journey{s, {}, exp.semantics()};
    visited[s] = true;
    dfs(cur.path.front(), s);
    visited[s] = false;
  }
  return out;
}

std::vector<std::vector<bool>> expansion_reach(const tca::ExpansionGraph& exp) {
  const std::size_t n = exp.vertex_count();
  std::vector<std::vector<bool>> out(n, std::vector<bool>(n, false));
  for (VertexId s = 0; s < n; ++s) {
    std::vector<bool> seen(exp.nodes().size(), false);
    std::vector<std::size_t> stack{exp.copy_node(s, 1)};
    seen[stack.front()] = true;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (const auto a : exp.out_arcs()[x]) {
        const auto y = exp.arcs()[a].to;
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    for (VertexId w = 0; w < n; ++w) out[s][w] = seen[exp.copy_node(w, exp.lifespan() + 1)];
  }
  return out;
}

std::optional<std::int64_t> shortest_path(const tca::ExpansionGraph& exp, std::size_t from, std::size_t to) {
  constexpr auto kInf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> dist(exp.nodes().size(), kInf);
  using Item = std::pair<std::int64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[from] = 0;
  queue.emplace(0, from);
  while (!queue.empty()) {
    const auto [d, x] = queue.top();
    queue.pop();
    if (d != dist[x]) continue;
    for (const auto a : exp.out_arcs()[x]) {
      const auto& arc = exp.arcs()[a];
      if (d + arc.weight < dist[arc.to]) {
        dist[arc.to] = d + arc.weight;
        queue.emplace(dist[arc.to], arc.to);
      }
    }
  }
  return dist[to] == kInf ? std::nullopt : std::optional(dist[to]);
}

// ---------------------------------------------------------------------------------------

bool satisfies(const tca::AugmentationProblem& p, const std::vector<TemporalEdge>& f) {
  std::vector<TemporalEdge> all(p.base.edges().begin(), p.base.edges().end());
  all.insert(all.end(), f.begin(), f.end());
  Time T = p.base.lifespan();
  for (const auto& e : f) T = std::max(T, e.t);
  const TemporalGraph g(p.base.vertex_count(), all, T);
  if (std::holds_alternative<tca::AllPairs>(p.requirement)) return connected(g, p.semantics);
  if (const auto* s = std::get_if<tca::SingleSource>(&p.requirement)) {
    const auto r = reach(g, s->source, p.semantics);
    return std::find(r.begin(), r.end(), false) == r.end();
  }
  const auto& d = std::get<tca::PairDemands>(p.requirement);
  std::size_t ok = 0;
  for (const auto& [u, v] : d.pairs) ok += reach(g, u, p.semantics)[v] ? 1 : 0;
  return ok >= d.demand;
}

std::size_t cost(const tca::AugmentationProblem& p, const std::vector<TemporalEdge>& f) {
  if (p.cost_model == tca::CostModel::PerTemporalEdge) return f.size();
  std::set<std::pair<VertexId, VertexId>> pairs;
  for (const auto& e : f) pairs.emplace(std::min(e.u, e.v), std::max(e.u, e.v));
  return pairs.size();
}

namespace {

/// Calls f on every k-subset of 0..n-1 (as sorted index lists) until f returns true.
bool any_combination(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return false;
  while (true) {
    if (f(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<std::size_t> min_cost(const tca::AugmentationProblem& p, std::size_t cap) {
  // Items: single candidates, or endpoint-pair groups under the edge-by-edge model.
  std::vector<std::vector<TemporalEdge>> items;
  if (p.cost_model == tca::CostModel::PerTemporalEdge) {
    for (const auto& e : p.candidates) items.push_back({e});
  } else {
    std::map<std::pair<VertexId, VertexId>, std::vector<TemporalEdge>> groups;
    for (const auto& e : p.candidates) groups[{std::min(e.u, e.v), std::max(e.u, e.v)}].push_back(e);
    for (auto& [key, edges] : groups) items.push_back(edges);
  }
  for (std::size_t k = 0; k <= std::min(cap, items.size()); ++k) {
    const bool found = any_combination(items.size(), k, [&](const std::vector<std::size_t>& idx) {
      std::vector<TemporalEdge> f;
      for (const auto i : idx) f.insert(f.end(), items[i].begin(), items[i].end());
      return satisfies(p, f);
    });
    if (found) return k;
  }
  return std::nullopt;
}

std::size_t min_spanner(const TemporalGraph& g, Semantics sem) {
  const auto& edges = g.edges();
  for (std::size_t k = 0; k <= edges.size(); ++k) {
    const bool found = any_combination(edges.size(), k, [&](const std::vector<std::size_t>& idx) {
      std::vector<TemporalEdge> sub;
      for (const auto i : idx) sub.push_back(edges[i]);
      return connected(TemporalGraph(g.vertex_count(), sub, g.lifespan()), sem);
    });
    if (found) return k;
  }
  return edges.size();
}

// ---------------------------------------------------------------------------------------

std::optional<std::size_t> octo_bfs(const BinaryMatrix& b, std::size_t max_states) {
  using State = std::vector<std::vector<bool>>;  // rows of entries
  auto ones = [](const State& s) {
    for (const auto& row : s)
      for (const bool x : row)
        if (!x) return false;
    return !s.empty();
  };
  State start(b.rows(), std::vector<bool>(b.cols()));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) start[i][j] = b.at(i, j);
  if (ones(start)) return 0;

  std::set<State> seen{start};
  std::deque<std::pair<State, std::size_t>> queue{{start, 0}};
  while (!queue.empty()) {
    auto [s, d] = queue.front();
    queue.pop_front();
    const std::size_t rows = s.size();
    const std::size_t cols = rows ? s[0].size() : 0;
    std::vector<State> next;
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = i + 1; j < rows; ++j) {
        State t = s;
        for (std::size_t c = 0; c < cols; ++c) t[i][c] = s[i][c] || s[j][c];
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(j));
        next.push_back(std::move(t));
      }
    }
    for (std::size_t i = 0; i < cols; ++i) {
      for (std::size_t j = i + 1; j < cols; ++j) {
        State t = s;
        for (auto& row : t) {
          row[i] = row[i] || row[j];
          row.erase(row.begin() + static_cast<std::ptrdiff_t>(j));
        }
        next.push_back(std::move(t));
      }
    }
    for (auto& t : next) {
      if (ones(t)) return d + 1;
      if (seen.insert(t).second) {
        if (seen.size() > max_states) return std::nullopt;
        queue.emplace_back(std::move(t), d + 1);
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------------------

std::size_t min_dominating_set(const tca::StaticGraphInstance& g) {
  std::vector<std::uint32_t> closed(g.n);
  for (std::size_t v = 0; v < g.n; ++v) closed[v] = 1u << v;
  for (const auto& [u, v] : g.edges) {
    closed[u] |= 1u << v;
    closed[v] |= 1u << u;
  }
  const std::uint32_t full = (1u << g.n) - 1;
  std::size_t best = g.n;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    std::uint32_t covered = 0;
    for (std::size_t v = 0; v < g.n; ++v)
      if (mask >> v & 1u) covered |= closed[v];
    if (covered == full) best = std::min<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
  }
  return best;
}

std::size_t min_hitting_set(const tca::SetSystemInstance& s) {
  std::size_t best = s.universe;
  for (std::uint32_t mask = 0; mask < (1u << s.universe); ++mask) {
    const bool hits = std::all_of(s.sets.begin(), s.sets.end(), [&](const std::vector<std::size_t>& set) {
      return std::any_of(set.begin(), set.end(), [&](std::size_t e) { return (mask >> e & 1u) != 0; });
    });
    if (hits) best = std::min<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
  }
  return best;
}

std::size_t max_disjoint_covers(const tca::SetSystemInstance& s) {
  const std::size_t m = s.sets.size();
  const std::uint32_t full = (1u << s.universe) - 1;
  std::vector<std::uint32_t> bits(m, 0);
  for (std::size_t j = 0; j < m; ++j)
    for (const auto e : s.sets[j]) bits[j] |= 1u << e;
  for (std::size_t k = m; k >= 1; --k) {
    // Every assignment of sets to k labels.
    std::vector<std::size_t> label(m, 0);
    while (true) {
      std::vector<std::uint32_t> unions(k, 0);
      for (std::size_t j = 0; j < m; ++j) unions[label[j]] |= bits[j];
      if (std::all_of(unions.begin(), unions.end(), [&](std::uint32_t u) { return u == full; })) return k;
      std::size_t pos = 0;
      while (pos < m && ++label[pos] == k) label[pos++] = 0;
      if (pos == m) break;
    }
  }
  return 0;
}

bool satisfiable(const tca::CnfInstance& f) {
  for (std::uint32_t mask = 0; mask < (1u << f.variables); ++mask) {
    const bool all = std::all_of(f.clauses.begin(), f.clauses.end(), [&](const std::array<int, 3>& c) {
      return std::any_of(c.begin(), c.end(), [&](int lit) {
        const bool value = (mask >> (std::abs(lit) - 1) & 1u) != 0;
        return lit > 0 ? value : !value;
      });
    });
    if (all) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------------------

std::vector<TemporalEdge> all_slots(std::size_t n, Time T) {
  std::vector<TemporalEdge> out;
  for (Time t = 1; t <= T; ++t)
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v) out.push_back(TemporalEdge::make(u, v, t));
  return out;
}

void for_each_graph(std::size_t n, Time T, const std::function<void(const TemporalGraph&)>& f) {
  const auto slots = all_slots(n, T);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<TemporalEdge> edges;
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (mask >> k & 1u) edges.push_back(slots[k]);
    f(TemporalGraph(n, std::move(edges), T));
  }
}

TemporalGraph random_graph(std::mt19937_64& rng, std::size_t n, Time T, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<TemporalEdge> edges;
  for (const auto& e : all_slots(n, T))
    if (coin(rng)) edges.push_back(e);
  return TemporalGraph(n, std::move(edges), T);
}

}  // namespace oracle
