#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tca {

using VertexId = std::uint32_t;
using Time = std::uint32_t;

enum class Semantics { NonStrict, Strict };

const char* to_string(Semantics s) noexcept;

/// An undirected edge present at one time step. Endpoints are stored with u < v,
/// and the member order gives the canonical ordering (time, min endpoint, max endpoint).
struct TemporalEdge {
  Time t = 1;
  VertexId u = 0;
  VertexId v = 1;

  /// Normalizes endpoint order; throws ContractError on a self-loop or t == 0.
  static TemporalEdge make(VertexId a, VertexId b, Time t);

  bool has_endpoint(VertexId x) const noexcept { return u == x || v == x; }
  VertexId other(VertexId x) const noexcept { return x == u ? v : u; }

  friend auto operator<=>(const TemporalEdge&, const TemporalEdge&) = default;
};

std::string to_string(const TemporalEdge& e);

/// Static undirected graph, as produced by taking one snapshot.
struct StaticGraph {
  std::size_t n = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;  // u < v, sorted
};

/// A vertex set plus a set of temporal edges. Immutable once built.
class TemporalGraph {
 public:
  TemporalGraph() = default;

  /// Edges may arrive in any order; duplicates and out-of-range endpoints are rejected.
  /// The lifespan is the largest edge time unless `lifespan_override` is larger.
  TemporalGraph(std::size_t n, std::vector<TemporalEdge> edges,
                std::optional<Time> lifespan_override = std::nullopt);

  std::size_t vertex_count() const noexcept { return n_; }
  Time lifespan() const noexcept { return lifespan_; }
  std::span<const TemporalEdge> edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Edges with time t, in canonical order (empty span for t outside 1..lifespan).
  std::span<const TemporalEdge> edges_at(Time t) const;

  bool contains(const TemporalEdge& e) const;

  /// True iff every endpoint pair carries exactly one time label.
  bool is_simple() const;

  /// Distinct time steps carrying at least one edge, ascending.
  std::vector<Time> active_times() const;

  /// Attaches unique external names to the vertices (size must equal n).
  TemporalGraph with_names(std::vector<std::string> names) const;
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<VertexId> find_name(const std::string& name) const;
  std::string label(VertexId v) const;

  friend bool operator==(const TemporalGraph& a, const TemporalGraph& b) {
    return a.n_ == b.n_ && a.lifespan_ == b.lifespan_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  Time lifespan_ = 0;
  std::vector<TemporalEdge> edges_;
  std::vector<std::string> names_;
};

struct SnapshotComponents {
  Time time = 0;
  /// Blocks sorted by smallest member; members ascending. Isolated vertices are singletons.
  std::vector<std::vector<VertexId>> parts;
  /// block_of[v] = index into parts.
  std::vector<std::size_t> block_of;
};

/// One step of a journey.
struct Hop {
  VertexId from = 0;
  VertexId to = 0;
  Time time = 1;

  friend bool operator==(const Hop&, const Hop&) = default;
};

struct Journey {
  VertexId source = 0;
  std::vector<Hop> hops;
  Semantics semantics = Semantics::NonStrict;

  VertexId target() const noexcept { return hops.empty() ? source : hops.back().to; }

  friend bool operator==(const Journey&, const Journey&) = default;
};

StaticGraph snapshot(const TemporalGraph& g, Time t);

SnapshotComponents snapshot_components(const TemporalGraph& g, Time t);

/// Vertices reachable from `source` (itself included), ascending.
std::vector<VertexId> reachable_set(const TemporalGraph& g, VertexId source, Semantics semantics);

bool is_temporally_connected(const TemporalGraph& g, Semantics semantics);

/// Layered component-graph test: every time-1 component reaches every time-T component
/// through a chain of pairwise intersecting per-step components.
bool check_property_p(const TemporalGraph& g);

/// G with the edges of f added. Throws InvalidCandidateError if an edge of f is already in g
/// or is repeated in f.
TemporalGraph augment(const TemporalGraph& g, std::span<const TemporalEdge> f);

/// Chained hops over edges of g whose times respect the journey's semantics.
bool is_valid_journey(const TemporalGraph& g, const Journey& j);

/// A witness journey from u to v (earliest-arrival parent chain), or nullopt.
std::optional<Journey> find_journey(const TemporalGraph& g, VertexId u, VertexId v,
                                    Semantics semantics);

}  // namespace tca
