#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "tca/temporal_graph.hpp"

namespace tca {

/// Every vertex must reach every other vertex.
struct AllPairs {
  friend bool operator==(const AllPairs&, const AllPairs&) = default;
};

/// The designated vertex must reach every vertex.
struct SingleSource {
  VertexId source = 0;
  friend bool operator==(const SingleSource&, const SingleSource&) = default;
};

/// At least `demand` of the listed ordered pairs (u, v) must have u -> v.
/// Repeated pairs are one demand listed twice and are satisfied together.
struct PairDemands {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::size_t demand = 0;
  friend bool operator==(const PairDemands&, const PairDemands&) = default;
};

using Requirement = std::variant<AllPairs, SingleSource, PairDemands>;

/// Demand defaults to all pairs.
PairDemands make_pair_demands(std::vector<std::pair<VertexId, VertexId>> pairs,
                              std::optional<std::size_t> demand = std::nullopt);

enum class CostModel {
  PerTemporalEdge,  // each added temporal edge costs 1
  EdgeByEdge,       // all candidate copies of one endpoint pair cost 1 together
};

const char* to_string(CostModel m) noexcept;

struct AugmentationProblem {
  TemporalGraph base;
  std::vector<TemporalEdge> candidates;  // canonical order, disjoint from base
  Requirement requirement = AllPairs{};
  Semantics semantics = Semantics::NonStrict;
  CostModel cost_model = CostModel::PerTemporalEdge;
  std::optional<std::size_t> budget;
};

/// Sorts the candidates and checks every AugmentationProblem invariant.
/// Throws InvalidCandidateError / RangeError / ContractError.
AugmentationProblem make_problem(TemporalGraph base, std::vector<TemporalEdge> candidates,
                                 Requirement requirement,
                                 Semantics semantics = Semantics::NonStrict,
                                 CostModel cost_model = CostModel::PerTemporalEdge,
                                 std::optional<std::size_t> budget = std::nullopt);

struct Solution {
  std::vector<TemporalEdge> selected;  // canonical order
  std::size_t cost = 0;
  std::vector<Journey> certificate;    // one journey per demanded (u, v), u != v
};

enum class SolveStatus {
  Optimal,         // minimum-cost solution found (within budget if one was given)
  Infeasible,      // even the full candidate set fails the requirement
  BudgetExceeded,  // feasible, but every solution costs more than the budget
};

const char* to_string(SolveStatus s) noexcept;

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Solution> solution;
};

struct ExactOptions {
  unsigned threads = 1;
  /// Skip candidates that close a cycle in their snapshot (non-strict only).
  bool prune_redundant = true;
};

/// Cost of f under the problem's cost model.
std::size_t selection_cost(const AugmentationProblem& p, std::span<const TemporalEdge> f);

/// True iff base + f meets the requirement. Throws InvalidCandidateError if f is not a
/// subset of the candidates.
bool verify_solution(const AugmentationProblem& p, std::span<const TemporalEdge> f);

/// Witness journeys in base + f for every demanded ordered pair (throws if one is missing).
std::vector<Journey> certify(const AugmentationProblem& p, std::span<const TemporalEdge> f);

/// Every temporal edge over V x [1..T] not already in g.
std::vector<TemporalEdge> unrestricted_candidates(const TemporalGraph& g);

/// Minimum-cost connecting set by subset search over increasing cost. Among minimum
/// solutions, returns the first in lexicographic order of candidate (or group) indices.
/// Requires at most 64 vertices.
SolveResult solve_exact(const AugmentationProblem& p, const ExactOptions& options = {});

/// (1+1)-TCA: star construction at time 2 over a lifespan-1 graph.
/// Returns exactly n - (smallest time-1 component size) edges at time 2.
std::vector<TemporalEdge> solve_one_plus_one(const TemporalGraph& g);

/// The (1+1)-TCA instance of g: lifespan raised to 2, all time-2 pairs as candidates,
/// requirement All, non-strict.
AugmentationProblem one_plus_one_problem(const TemporalGraph& g);

/// Necessary condition for non-strict connectivity at lifespan 2:
/// k1 <= min |C2_j| and k2 <= min |C1_i|.
bool component_count_bound_check(const TemporalGraph& g);

/// TCA instance whose minimum equals the minimum temporal spanner size of g:
/// empty base on V(g) with g's lifespan, all of g's edges as candidates, budget k.
AugmentationProblem spanner_via_tca(const TemporalGraph& g, std::size_t k,
                                    Semantics semantics = Semantics::NonStrict);

}  // namespace tca
