#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tca/augmentation.hpp"
#include "tca/octo.hpp"

namespace tca {

// ---------------------------------------------------------------------------------------
// Source problems

struct StaticGraphInstance {
  std::size_t n = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::size_t budget = 0;
};

/// Universe 0..universe-1 and a collection of subsets. Used for Hitting Set and for
/// Disjoint Set Covers (budget = number of covers wanted).
struct SetSystemInstance {
  std::size_t universe = 0;
  std::vector<std::vector<std::size_t>> sets;
  std::size_t budget = 0;
};

/// 3-CNF over variables 1..variables; literals are DIMACS-style signed integers.
struct CnfInstance {
  std::size_t variables = 0;
  std::vector<std::array<int, 3>> clauses;
};

/// Throws ContractError unless the instance is a simple graph with in-range endpoints.
void validate(const StaticGraphInstance& g);
/// Throws ContractError unless every clause has 3 in-range literals and no x, -x pair.
void validate(const CnfInstance& f);

bool is_dominating_set(const StaticGraphInstance& g, const std::vector<VertexId>& set);
bool is_hitting_set(const SetSystemInstance& s, const std::vector<std::size_t>& elements);
/// `parts` must partition the set indices; each part must cover the universe.
bool is_disjoint_cover_partition(const SetSystemInstance& s,
                                 const std::vector<std::vector<std::size_t>>& parts);
/// assignment[i] is the value of variable i + 1.
bool satisfies(const CnfInstance& f, const std::vector<bool>& assignment);

enum class CandidateMode {
  Unrestricted,  // every absent temporal edge within the lifespan
  Simple,        // only the edges the hardness proof needs (keeps the augmented graph simple)
};

// ---------------------------------------------------------------------------------------
// Dominating Set -> Strict 2-TCA

struct DominatingSetReduction {
  AugmentationProblem problem;  // strict, All, budget K
  VertexId x = 0;               // = n
  VertexId y = 0;               // = n + 1
};

DominatingSetReduction reduce_dominating_set(const StaticGraphInstance& ds, CandidateMode mode);
/// ({x, u}, 1) for every u of the dominating set.
std::vector<TemporalEdge> map_witness_forward(const DominatingSetReduction& r,
                                              const std::vector<VertexId>& dominating_set);
/// Vertices joined to x at time 1, plus every vertex they leave undominated.
/// Throws ContractError if `edges` is not a connecting set or the result exceeds |edges|.
std::vector<VertexId> map_witness_backward(const DominatingSetReduction& r,
                                           const std::vector<TemporalEdge>& edges);

// ---------------------------------------------------------------------------------------
// Hitting Set -> non-strict 2-TSA

struct HittingSetReduction {
  AugmentationProblem problem;  // non-strict, Source(x), budget K
  VertexId x = 0;
  /// membership[j][k] = vertex e_iS_j for the k-th element of set j (sets sorted ascending).
  std::vector<std::vector<VertexId>> membership;
  std::vector<VertexId> set_vertex;  // S_j
  SetSystemInstance source;          // normalized copy
};

HittingSetReduction reduce_hitting_set(const SetSystemInstance& hs, CandidateMode mode);
/// ({x, e_iS_j}, 1) with S_j the smallest-index set containing e_i.
std::vector<TemporalEdge> map_witness_forward(const HittingSetReduction& r,
                                              const std::vector<std::size_t>& hitting_set);
std::vector<std::size_t> map_witness_backward(const HittingSetReduction& r,
                                              const std::vector<TemporalEdge>& edges);

// ---------------------------------------------------------------------------------------
// Disjoint Set Covers -> OCTO

struct DscReduction {
  BinaryMatrix matrix;  // n(m+1) x m
  std::optional<std::size_t> budget;  // m - K; nullopt when K > m (no sequence can succeed)
  SetSystemInstance source;
};

DscReduction reduce_dsc(const SetSystemInstance& dsc);
/// Merges the columns of each part into its first column.
std::vector<OrCombination> map_witness_forward(const DscReduction& r,
                                               const std::vector<std::vector<std::size_t>>& parts);
/// Column groups of the merge sequence; groups that do not cover are folded into a covering
/// one. Throws ContractError if the sequence does not produce a one-filled matrix.
std::vector<std::vector<std::size_t>> map_witness_backward(const DscReduction& r,
                                                           const std::vector<OrCombination>& seq);

// ---------------------------------------------------------------------------------------
// 3-SAT -> non-strict edge-by-edge TPCA with two pairs

struct SatReduction {
  AugmentationProblem problem;  // non-strict, 2 pairs, EdgeByEdge, budget = literal occurrences
  CnfInstance source;
  VertexId variable_start = 0;  // x_1^S
  VertexId variable_end = 0;    // x_n^E
  VertexId clause_start = 0;    // C_1^S
  VertexId clause_end = 0;      // C_m^E
  /// Per literal occurrence (clause j, slot k): the optional link of the true branch and of
  /// the false branch of its variable, as (buffer, value) vertex pairs.
  std::vector<std::array<std::pair<VertexId, VertexId>, 2>> links;  // index 3 * j + k
  std::size_t optional_links = 0;  // candidate groups, = 2 * 3m
};

SatReduction reduce_3sat(const CnfInstance& cnf);
/// Both time copies of every link on the branch matching each variable's value.
std::vector<TemporalEdge> map_witness_forward(const SatReduction& r, const std::vector<bool>& assignment);
/// Variable i is true iff its true-branch links are bought.
std::vector<bool> map_witness_backward(const SatReduction& r, const std::vector<TemporalEdge>& edges);

}  // namespace tca
