#include "tca/temporal_graph.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_set>

#include "tca/error.hpp"
#include "tca/union_find.hpp"

namespace tca {

const char* to_string(Semantics s) noexcept {
  return s == Semantics::Strict ? "strict" : "nonstrict";
}

TemporalEdge TemporalEdge::make(VertexId a, VertexId b, Time t) {
  if (a == b) throw ContractError("temporal edge is a self-loop on vertex " + std::to_string(a));
  if (t == 0) throw ContractError("temporal edge times start at 1");
  return TemporalEdge{t, std::min(a, b), std::max(a, b)};
}

std::string to_string(const TemporalEdge& e) {
  return "({" + std::to_string(e.u) + "," + std::to_string(e.v) + "}," + std::to_string(e.t) + ")";
}

TemporalGraph::TemporalGraph(std::size_t n, std::vector<TemporalEdge> edges,
                             std::optional<Time> lifespan_override)
    : n_(n), edges_(std::move(edges)) {
  Time max_time = 0;
  for (auto& e : edges_) {
    if (e.u >= n_ || e.v >= n_) {
      throw RangeError("edge " + to_string(e) + " has an endpoint outside 0.." +
                       std::to_string(n_ == 0 ? 0 : n_ - 1));
    }
    e = TemporalEdge::make(e.u, e.v, e.t);
    max_time = std::max(max_time, e.t);
  }
  std::sort(edges_.begin(), edges_.end());
  const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw InvalidCandidateError("duplicate temporal edge " + to_string(*dup));
  }
  lifespan_ = max_time;
  if (lifespan_override) {
    if (*lifespan_override < max_time) {
      throw ContractError("lifespan override " + std::to_string(*lifespan_override) +
                          " is below the largest edge time " + std::to_string(max_time));
    }
    lifespan_ = *lifespan_override;
  }
}

std::span<const TemporalEdge> TemporalGraph::edges_at(Time t) const {
  const auto lo = std::lower_bound(edges_.begin(), edges_.end(), TemporalEdge{t, 0, 0});
  const auto hi = std::lower_bound(lo, edges_.end(), TemporalEdge{t + 1, 0, 0});
  return {lo, hi};
}

bool TemporalGraph::contains(const TemporalEdge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

bool TemporalGraph::is_simple() const {
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const auto& e : edges_) {
    if (!seen.emplace(e.u, e.v).second) return false;
  }
  return true;
}

std::vector<Time> TemporalGraph::active_times() const {
  std::vector<Time> times;
  for (const auto& e : edges_) {
    if (times.empty() || times.back() != e.t) times.push_back(e.t);
  }
  return times;
}

TemporalGraph TemporalGraph::with_names(std::vector<std::string> names) const {
  if (names.size() != n_) {
    throw ContractError("name table has " + std::to_string(names.size()) + " entries for " +
                        std::to_string(n_) + " vertices");
  }
  std::unordered_set<std::string> unique(names.begin(), names.end());
  if (unique.size() != names.size()) throw ContractError("vertex names must be unique");
  TemporalGraph copy = *this;
  copy.names_ = std::move(names);
  return copy;
}

std::optional<VertexId> TemporalGraph::find_name(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<VertexId>(it - names_.begin());
}

std::string TemporalGraph::label(VertexId v) const {
  return names_.empty() ? std::to_string(v) : names_.at(v);
}

namespace {

void require_time(const TemporalGraph& g, Time t) {
  if (t < 1 || t > g.lifespan()) {
    throw RangeError("time step " + std::to_string(t) + " outside 1.." +
                     std::to_string(g.lifespan()));
  }
}

void require_vertex(const TemporalGraph& g, VertexId v) {
  if (v >= g.vertex_count()) {
    throw RangeError("vertex " + std::to_string(v) + " outside a graph with " +
                     std::to_string(g.vertex_count()) + " vertices");
  }
}

SnapshotComponents components_of(std::size_t n, std::span<const TemporalEdge> edges, Time t) {
  UnionFind uf(n);
  for (const auto& e : edges) uf.unite(e.u, e.v);
  SnapshotComponents out;
  out.time = t;
  out.block_of.assign(n, 0);
  std::vector<std::size_t> block_of_root(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = uf.find(v);
    if (block_of_root[r] == std::numeric_limits<std::size_t>::max()) {
      block_of_root[r] = out.parts.size();
      out.parts.emplace_back();
    }
    out.block_of[v] = block_of_root[r];
    out.parts[block_of_root[r]].push_back(static_cast<VertexId>(v));
  }
  return out;
}

}  // namespace

StaticGraph snapshot(const TemporalGraph& g, Time t) {
  require_time(g, t);
  StaticGraph s;
  s.n = g.vertex_count();
  for (const auto& e : g.edges_at(t)) s.edges.emplace_back(e.u, e.v);
  return s;
}

SnapshotComponents snapshot_components(const TemporalGraph& g, Time t) {
  require_time(g, t);
  return components_of(g.vertex_count(), g.edges_at(t), t);
}

std::vector<VertexId> reachable_set(const TemporalGraph& g, VertexId source, Semantics semantics) {
  require_vertex(g, source);
  const std::size_t n = g.vertex_count();
  std::vector<char> reached(n, 0);
  reached[source] = 1;

  for (const Time t : g.active_times()) {
    const auto edges = g.edges_at(t);
    if (semantics == Semantics::NonStrict) {
      // Everything in a snapshot component touching the reached set joins it.
      UnionFind uf(n);
      for (const auto& e : edges) uf.unite(e.u, e.v);
      std::vector<char> root_hit(n, 0);
      for (std::size_t v = 0; v < n; ++v) {
        if (reached[v]) root_hit[uf.find(v)] = 1;
      }
      for (const auto& e : edges) {
        if (root_hit[uf.find(e.u)]) reached[e.u] = reached[e.v] = 1;
      }
    } else {
      // One hop per time step, starting from what was reached strictly earlier.
      std::vector<VertexId> fresh;
      for (const auto& e : edges) {
        if (reached[e.u] && !reached[e.v]) fresh.push_back(e.v);
        if (reached[e.v] && !reached[e.u]) fresh.push_back(e.u);
      }
      for (const VertexId v : fresh) reached[v] = 1;
    }
  }

  std::vector<VertexId> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (reached[v]) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

bool is_temporally_connected(const TemporalGraph& g, Semantics semantics) {
  const std::size_t n = g.vertex_count();
  for (VertexId u = 0; u < n; ++u) {
    if (reachable_set(g, u, semantics).size() != n) return false;
  }
  return true;
}

bool check_property_p(const TemporalGraph& g) {
  const Time T = g.lifespan();
  if (T < 1) throw ContractError("property P needs a lifespan of at least 1");
  const std::size_t n = g.vertex_count();
  if (n == 0) return true;

  std::vector<SnapshotComponents> layers;
  layers.reserve(T);
  for (Time t = 1; t <= T; ++t) layers.push_back(components_of(n, g.edges_at(t), t));

  // arcs[t][c] = components of layer t+1 intersecting component c of layer t
  std::vector<std::vector<std::vector<std::size_t>>> arcs(T);
  for (Time t = 0; t + 1 < T; ++t) {
    arcs[t].resize(layers[t].parts.size());
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t v = 0; v < n; ++v) {
      const auto a = layers[t].block_of[v];
      const auto b = layers[t + 1].block_of[v];
      if (seen.emplace(a, b).second) arcs[t][a].push_back(b);
    }
  }

  const std::size_t last_count = layers.back().parts.size();
  for (std::size_t start = 0; start < layers.front().parts.size(); ++start) {
    std::vector<char> frontier(layers.front().parts.size(), 0);
    frontier[start] = 1;
    for (Time t = 0; t + 1 < T; ++t) {
      std::vector<char> next(layers[t + 1].parts.size(), 0);
      for (std::size_t c = 0; c < frontier.size(); ++c) {
        if (!frontier[c]) continue;
        for (const auto d : arcs[t][c]) next[d] = 1;
      }
      frontier = std::move(next);
    }
    if (static_cast<std::size_t>(std::count(frontier.begin(), frontier.end(), 1)) != last_count) {
      return false;
    }
  }
  return true;
}

TemporalGraph augment(const TemporalGraph& g, std::span<const TemporalEdge> f) {
  std::vector<TemporalEdge> edges(g.edges().begin(), g.edges().end());
  for (const auto& e : f) {
    if (g.contains(e)) {
      throw InvalidCandidateError("candidate " + to_string(e) + " is already in the graph");
    }
    edges.push_back(e);
  }
  Time lifespan = g.lifespan();
  for (const auto& e : f) lifespan = std::max(lifespan, e.t);
  try {
    TemporalGraph out(g.vertex_count(), std::move(edges), lifespan);
    if (!g.names().empty()) out = out.with_names(g.names());
    return out;
  } catch (const InvalidCandidateError& ex) {
    throw InvalidCandidateError(std::string("augmentation set repeats an edge: ") + ex.what());
  }
}

bool is_valid_journey(const TemporalGraph& g, const Journey& j) {
  if (j.source >= g.vertex_count()) return false;
  VertexId at = j.source;
  for (std::size_t i = 0; i < j.hops.size(); ++i) {
    const Hop& h = j.hops[i];
    if (h.from != at || h.from == h.to || h.to >= g.vertex_count() || h.time == 0) return false;
    if (!g.contains(TemporalEdge::make(h.from, h.to, h.time))) return false;
    if (i > 0) {
      const Time prev = j.hops[i - 1].time;
      if (j.semantics == Semantics::Strict ? h.time <= prev : h.time < prev) return false;
    }
    at = h.to;
  }
  return true;
}

std::optional<Journey> find_journey(const TemporalGraph& g, VertexId u, VertexId v,
                                    Semantics semantics) {
  require_vertex(g, u);
  require_vertex(g, v);
  const std::size_t n = g.vertex_count();
  constexpr Time kUnreached = std::numeric_limits<Time>::max();
  std::vector<Time> arrival(n, kUnreached);
  std::vector<Hop> parent(n);
  arrival[u] = 0;

  for (const Time t : g.active_times()) {
    if (arrival[v] != kUnreached) break;
    const auto edges = g.edges_at(t);
    if (semantics == Semantics::Strict) {
      std::vector<std::pair<VertexId, Hop>> fresh;
      for (const auto& e : edges) {
        if (arrival[e.u] < t && arrival[e.v] == kUnreached) fresh.push_back({e.v, {e.u, e.v, t}});
        if (arrival[e.v] < t && arrival[e.u] == kUnreached) fresh.push_back({e.u, {e.v, e.u, t}});
      }
      for (const auto& [w, hop] : fresh) {
        if (arrival[w] == kUnreached) {
          arrival[w] = t;
          parent[w] = hop;
        }
      }
    } else {
      std::vector<std::vector<VertexId>> adj(n);
      for (const auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
      }
      std::vector<VertexId> queue;
      for (std::size_t w = 0; w < n; ++w) {
        if (arrival[w] != kUnreached && !adj[w].empty()) queue.push_back(static_cast<VertexId>(w));
      }
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId a = queue[head];
        for (const VertexId b : adj[a]) {
          if (arrival[b] != kUnreached) continue;
          arrival[b] = t;
          parent[b] = Hop{a, b, t};
          queue.push_back(b);
        }
      }
    }
  }
  if (arrival[v] == kUnreached) return std::nullopt;

  Journey j{u, {}, semantics};
  for (VertexId at = v; at != u; at = parent[at].from) j.hops.push_back(parent[at]);
  std::reverse(j.hops.begin(), j.hops.end());
  return j;
}

}  // namespace tca
