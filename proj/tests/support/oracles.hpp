#pragma once

// Brute-force reference implementations. None of these call the library's algorithms;
// they only use its data types.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "tca/augmentation.hpp"
#include "tca/expansion.hpp"
#include "tca/octo.hpp"
#include "tca/reductions.hpp"
#include "tca/temporal_graph.hpp"

namespace oracle {

using tca::BinaryMatrix;
using tca::Journey;
using tca::Semantics;
using tca::TemporalEdge;
using tca::TemporalGraph;
using tca::Time;
using tca::VertexId;

// ---------------------------------------------------------------------------------------
// Reachability

/// Earliest-arrival fixpoint: relax every edge until nothing changes.
std::vector<bool> reach(const TemporalGraph& g, VertexId source, Semantics sem);
bool connected(const TemporalGraph& g, Semantics sem);

/// Components of the static graph (n, edges) by repeated DFS, each sorted, ordered by
/// smallest member.
std::vector<std::vector<VertexId>> components(std::size_t n,
                                              const std::vector<std::pair<VertexId, VertexId>>& edges);
std::vector<std::vector<VertexId>> snapshot_components(const TemporalGraph& g, Time t);

/// Every journey whose vertices are pairwise distinct, from every source (the empty journey
/// at each vertex included).
std::vector<Journey> simple_journeys(const TemporalGraph& g, Semantics sem);

// ---------------------------------------------------------------------------------------
// Expansion

struct PathJourney {
  tca::ExpansionPath path;
  Journey journey;
};

/// Depth-first walk over the expansion's arcs from every time-1 copy, keeping only paths in
/// which every gadget pass crosses its edge and no vertex is visited twice. Each result
/// pairs the path with the journey read off along the way.
std::vector<PathJourney> canonical_paths(const tca::ExpansionGraph& exp);

/// reach[s][w]: Copy(w, T+1) is reachable from Copy(s, 1) along any arcs.
std::vector<std::vector<bool>> expansion_reach(const tca::ExpansionGraph& exp);

/// Dijkstra over the expansion's arcs; nullopt when `to` is unreachable.
std::optional<std::int64_t> shortest_path(const tca::ExpansionGraph& exp, std::size_t from, std::size_t to);

// ---------------------------------------------------------------------------------------
// Augmentation

bool satisfies(const tca::AugmentationProblem& p, const std::vector<TemporalEdge>& f);
std::size_t cost(const tca::AugmentationProblem& p, const std::vector<TemporalEdge>& f);

/// Minimum cost by enumerating selections of increasing cost (ignores p.budget). Stops after
/// `cap`; nullopt when nothing of cost <= cap works.
std::optional<std::size_t> min_cost(const tca::AugmentationProblem& p,
                                    std::size_t cap = static_cast<std::size_t>(-1));

/// Smallest subset of g's edges keeping g temporally connected.
std::size_t min_spanner(const TemporalGraph& g, Semantics sem);

// ---------------------------------------------------------------------------------------
// OCTO

/// Breadth-first search over all reachable matrices; nullopt when none is one-filled.
std::optional<std::size_t> octo_bfs(const BinaryMatrix& b, std::size_t max_states = 2'000'000);

// ---------------------------------------------------------------------------------------
// Source problems

std::size_t min_dominating_set(const tca::StaticGraphInstance& g);
/// Minimum hitting set size (every set is assumed nonempty).
std::size_t min_hitting_set(const tca::SetSystemInstance& s);
/// Largest k such that the sets split into k parts that each cover the universe (0 if none).
std::size_t max_disjoint_covers(const tca::SetSystemInstance& s);
bool satisfiable(const tca::CnfInstance& f);

// ---------------------------------------------------------------------------------------
// Instance generation

/// Calls f for every graph on n vertices whose edges are a subset of all (pair, time)
/// slots with times 1..T. The lifespan is fixed at T.
void for_each_graph(std::size_t n, Time T, const std::function<void(const TemporalGraph&)>& f);

/// Each (pair, time) slot present with probability p.
TemporalGraph random_graph(std::mt19937_64& rng, std::size_t n, Time T, double p);

/// All (pair, time) slots over n vertices and times 1..T, canonical order.
std::vector<TemporalEdge> all_slots(std::size_t n, Time T);

}  // namespace oracle
