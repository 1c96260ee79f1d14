#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tca/augmentation.hpp"
#include "tca/temporal_graph.hpp"

namespace tca {

/// Node of the layered expansion: a vertex copy v^t (t in 1..T+1), or the entry/exit
/// gate of one temporal edge.
struct ExpansionNode {
  enum class Kind { Copy, GateIn, GateOut };
  Kind kind = Kind::Copy;
  VertexId vertex = 0;  // Copy only
  Time time = 1;
  std::size_t edge = 0;  // Gate only: index into ExpansionGraph::edges

  friend bool operator==(const ExpansionNode&, const ExpansionNode&) = default;
};

struct ExpansionArc {
  enum class Kind { Wait, Enter, Gate, Exit, Gray };
  std::size_t from = 0;
  std::size_t to = 0;
  std::int64_t weight = 0;
  Kind kind = Kind::Wait;
};

/// Directed weighted static graph encoding journeys as paths. Node layout: copies first
/// (v * (T + 1) + t - 1), then GateIn/GateOut pairs per temporal edge in canonical order.
class ExpansionGraph {
 public:
  std::size_t vertex_count() const noexcept { return n_; }
  Time lifespan() const noexcept { return lifespan_; }
  Semantics semantics() const noexcept { return semantics_; }

  const std::vector<ExpansionNode>& nodes() const noexcept { return nodes_; }
  const std::vector<ExpansionArc>& arcs() const noexcept { return arcs_; }
  const std::vector<TemporalEdge>& edges() const noexcept { return edges_; }
  /// Arc indices leaving each node.
  const std::vector<std::vector<std::size_t>>& out_arcs() const noexcept { return out_; }

  std::size_t copy_node(VertexId v, Time t) const;
  std::size_t gate_in(std::size_t edge) const { return n_ * (lifespan_ + 1) + 2 * edge; }
  std::size_t gate_out(std::size_t edge) const { return gate_in(edge) + 1; }
  /// Index of the GateIn -> GateOut arc of an edge.
  std::size_t gate_arc(std::size_t edge) const { return gate_arc_.at(edge); }
  std::optional<std::size_t> find_arc(std::size_t from, std::size_t to) const;
  std::optional<std::size_t> edge_index(const TemporalEdge& e) const;

  /// `v@t`, `u-v@t.in`, `u-v@t.out`
  std::string label(std::size_t node) const;
  std::size_t gray_arc_count() const;

 private:
  friend struct ExpansionBuilder;

  std::size_t n_ = 0;
  Time lifespan_ = 0;
  Semantics semantics_ = Semantics::NonStrict;
  std::vector<TemporalEdge> edges_;
  std::vector<ExpansionNode> nodes_;
  std::vector<ExpansionArc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::size_t> gate_arc_;
};

/// Weighted temporal graph with pair demands. `weights` is parallel to graph.edges().
/// `demand` pairs must be connected within total weight `budget` (cost bound).
struct TGSteinerInstance {
  TemporalGraph graph;
  std::vector<std::int64_t> weights;
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::size_t demand = 0;
  std::optional<std::int64_t> budget;
};

struct Expansion {
  ExpansionGraph graph;
  /// (Copy(u, 1), Copy(v, T + 1)) per demanded pair.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

Expansion build_expansion(const TGSteinerInstance& inst, Semantics semantics);

/// Expansion of an unweighted graph (all weights 0) with no pairs.
ExpansionGraph build_expansion(const TemporalGraph& g, Semantics semantics);

struct ConnectionResult {
  std::optional<std::int64_t> weight;      // nullopt: demand unreachable (or over budget)
  bool budget_exceeded = false;
  std::vector<std::size_t> selected_gates;  // edge indices whose positive gate arc is used
};

/// Minimum total weight of positive gate arcs that, together with every zero-weight arc,
/// connects at least `demand` of the mapped pairs. Enumerates gate subsets by increasing
/// total weight; a gate that no demanded source can reach or no sink is reachable from is
/// left out of the enumeration.
ConnectionResult min_weight_connection(const ExpansionGraph& exp,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                       std::size_t demand,
                                       std::optional<std::int64_t> budget = std::nullopt);

/// TPCA through the expansion: base edges weigh 0, candidates 1. Requires a PairDemands
/// requirement and the per-temporal-edge cost model.
SolveResult solve_tpca_via_expansion(const AugmentationProblem& p);

/// Node sequence of a path in the expansion.
using ExpansionPath = std::vector<std::size_t>;

bool is_valid_path(const ExpansionGraph& exp, const ExpansionPath& path);

/// Maps a journey of the expanded graph to the path Copy(source, 1) -> ... -> Copy(target, T+1).
/// Consecutive same-time hops route through gray arcs (non-strict). An immediate reversal over
/// the same temporal edge stays inside that edge's gadget.
ExpansionPath journey_to_path(const ExpansionGraph& exp, const Journey& j);

/// Inverse of journey_to_path: any path from a time-1 copy to a copy at T+1 yields a journey
/// between the same vertices. Gadget passes that end where they started add no hop.
Journey path_to_journey(const ExpansionGraph& exp, const ExpansionPath& path);

}  // namespace tca
