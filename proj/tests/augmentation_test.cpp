#include <random>

#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "tca/augmentation.hpp"
#include "tca/error.hpp"
#include "tca/reductions.hpp"

namespace {

using namespace tca;

TemporalEdge E(VertexId u, VertexId v, Time t) { return TemporalEdge::make(u, v, t); }

std::size_t min_component(const TemporalGraph& g) {
  std::size_t best = g.vertex_count();
  for (const auto& part : oracle::snapshot_components(g, 1)) best = std::min(best, part.size());
  return best;
}

/// Random problem with up to `max_candidates` candidates drawn from the free slots.
AugmentationProblem random_problem(std::mt19937_64& rng, std::size_t max_candidates) {
  const std::size_t n = 2 + rng() % 4;
  const Time T = 1 + static_cast<Time>(rng() % 3);
  const auto base = oracle::random_graph(rng, n, T, 0.2);
  auto free = unrestricted_candidates(base);
  std::shuffle(free.begin(), free.end(), rng);
  free.resize(std::min(free.size(), static_cast<std::size_t>(rng() % (max_candidates + 1))));

  Requirement req = AllPairs{};
  switch (rng() % 3) {
    case 0: break;
    case 1: req = SingleSource{static_cast<VertexId>(rng() % n)}; break;
    default: {
      std::vector<std::pair<VertexId, VertexId>> pairs;
      const std::size_t p = 1 + rng() % 3;
      for (std::size_t k = 0; k < p; ++k) {
        pairs.emplace_back(static_cast<VertexId>(rng() % n), static_cast<VertexId>(rng() % n));
      }
      req = make_pair_demands(pairs, 1 + rng() % p);
    }
  }
  const auto sem = rng() % 2 ? Semantics::Strict : Semantics::NonStrict;
  const auto model = rng() % 2 ? CostModel::EdgeByEdge : CostModel::PerTemporalEdge;
  return make_problem(base, free, req, sem, model);
}

TEST(Problem, Validation) {
  const TemporalGraph g(3, {E(0, 1, 1)});
  EXPECT_THROW(make_problem(g, {E(0, 1, 1)}, AllPairs{}), InvalidCandidateError);
  EXPECT_THROW(make_problem(g, {E(0, 2, 1), E(2, 0, 1)}, AllPairs{}), InvalidCandidateError);
  EXPECT_THROW(make_problem(g, {E(0, 3, 1)}, AllPairs{}), RangeError);
  EXPECT_THROW(make_problem(g, {}, SingleSource{3}), RangeError);
  EXPECT_THROW(make_problem(g, {}, make_pair_demands({})), ContractError);
  EXPECT_THROW(make_problem(g, {}, make_pair_demands({{0, 1}}, 2)), ContractError);

  const auto p = make_problem(g, {E(1, 2, 2), E(0, 2, 1)}, make_pair_demands({{0, 2}, {0, 2}}));
  EXPECT_EQ(p.candidates.front(), E(0, 2, 1));
  EXPECT_EQ(std::get<PairDemands>(p.requirement).demand, 2u);
}

TEST(UnrestrictedCandidates, Examples) {
  EXPECT_EQ(unrestricted_candidates(TemporalGraph(2, {}, 1)), (std::vector<TemporalEdge>{E(0, 1, 1)}));
  EXPECT_EQ(unrestricted_candidates(TemporalGraph(2, {E(0, 1, 1)}, 2)),
            (std::vector<TemporalEdge>{E(0, 1, 2)}));
}

TEST(UnrestrictedCandidates, CountIdentity) {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 1 + rng() % 6;
    const Time T = 1 + static_cast<Time>(rng() % 4);
    const auto g = oracle::random_graph(rng, n, T, 0.4);
    const auto c = unrestricted_candidates(g);
    EXPECT_EQ(c.size(), T * n * (n - 1) / 2 - g.edge_count());
    for (const auto& e : c) EXPECT_FALSE(g.contains(e));
  }
}

TEST(Verify, Examples) {
  const TemporalGraph path(3, {E(0, 1, 1), E(1, 2, 1)});
  const auto connected = make_problem(path, {E(0, 2, 1)}, AllPairs{});
  EXPECT_TRUE(verify_solution(connected, {}));

  const auto two = make_problem(TemporalGraph(2, {}, 1), {E(0, 1, 1)}, AllPairs{});
  EXPECT_FALSE(verify_solution(two, {}));
  const std::vector<TemporalEdge> f{E(0, 1, 1)};
  EXPECT_TRUE(verify_solution(two, f));
  const std::vector<TemporalEdge> outside{E(0, 1, 2)};
  EXPECT_THROW(verify_solution(two, outside), InvalidCandidateError);
}

TEST(Verify, DominatingSetWitness) {
  const StaticGraphInstance k3{3, {{0, 1}, {1, 2}, {0, 2}}, 1};
  const auto r = reduce_dominating_set(k3, CandidateMode::Unrestricted);
  const auto f = map_witness_forward(r, {0});
  EXPECT_TRUE(verify_solution(r.problem, f));
  EXPECT_TRUE(oracle::satisfies(r.problem, f));
}

TEST(Cost, Models) {
  const auto p = make_problem(TemporalGraph(3, {}, 2), {E(0, 1, 1), E(0, 1, 2), E(1, 2, 1)}, AllPairs{},
                              Semantics::NonStrict, CostModel::EdgeByEdge);
  const std::vector<TemporalEdge> f{E(0, 1, 1), E(0, 1, 2), E(1, 2, 1)};
  EXPECT_EQ(selection_cost(p, f), 2u);
  auto q = p;
  q.cost_model = CostModel::PerTemporalEdge;
  EXPECT_EQ(selection_cost(q, f), 3u);
}

TEST(SolveExact, ConnectedBaseCostsNothing) {
  const auto p = make_problem(TemporalGraph(2, {E(0, 1, 1)}), {E(0, 1, 2)}, AllPairs{});
  const auto r = solve_exact(p);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.solution->cost, 0u);
  EXPECT_TRUE(r.solution->selected.empty());
}

TEST(SolveExact, DominatingSetOnTriangle) {
  const StaticGraphInstance k3{3, {{0, 1}, {1, 2}, {0, 2}}, 1};
  const auto r = solve_exact(reduce_dominating_set(k3, CandidateMode::Unrestricted).problem);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.solution->cost, 1u);
}

TEST(SolveExact, InfeasibleAndBudget) {
  const TemporalGraph g(3, {}, 1);
  const auto none = make_problem(g, {E(0, 1, 1)}, AllPairs{});
  EXPECT_EQ(solve_exact(none).status, SolveStatus::Infeasible);

  auto tight = make_problem(g, unrestricted_candidates(g), AllPairs{});
  tight.budget = 1;
  EXPECT_EQ(solve_exact(tight).status, SolveStatus::BudgetExceeded);
  tight.budget = 2;
  const auto r = solve_exact(tight);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.solution->cost, 2u);
  // Lexicographically first pair of candidate indices that works.
  EXPECT_EQ(r.solution->selected, (std::vector<TemporalEdge>{E(0, 1, 1), E(0, 2, 1)}));
}

TEST(SolveExact, EdgeByEdgeBuysWholeGroup) {
  // 0 -> 2 needs {0,1} at time 1 and {1,2} at time 2; 2 -> 0 needs {1,2} before {0,1}.
  const TemporalGraph g(3, {}, 2);
  const auto p = make_problem(g, {E(0, 1, 1), E(0, 1, 2), E(1, 2, 1), E(1, 2, 2)}, AllPairs{},
                              Semantics::Strict, CostModel::EdgeByEdge);
  const auto r = solve_exact(p);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.solution->cost, 2u);
  EXPECT_EQ(r.solution->selected.size(), 4u);
}

TEST(SolveExact, CertificateJourneysAreValid) {
  const TemporalGraph g(4, {E(0, 1, 1), E(2, 3, 1)}, 2);
  const auto p = make_problem(g, unrestricted_candidates(g), AllPairs{}, Semantics::NonStrict);
  const auto r = solve_exact(p);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  const auto augmented = augment(g, r.solution->selected);
  EXPECT_EQ(r.solution->certificate.size(), 12u);
  for (const auto& j : r.solution->certificate) EXPECT_TRUE(is_valid_journey(augmented, j));
}

TEST(SolveExact, RejectsLargeGraphs) {
  const auto p = make_problem(TemporalGraph(65, {}, 1), {}, SingleSource{0});
  EXPECT_THROW(solve_exact(p), ContractError);
}

TEST(SolveExact, MatchesBruteForce) {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 400; ++iter) {
    const auto p = random_problem(rng, 9);
    const auto expected = oracle::min_cost(p);
    const auto r = solve_exact(p);
    if (!expected) {
      EXPECT_EQ(r.status, SolveStatus::Infeasible);
      continue;
    }
    ASSERT_EQ(r.status, SolveStatus::Optimal) << "iteration " << iter;
    EXPECT_EQ(r.solution->cost, *expected) << "iteration " << iter;
    EXPECT_EQ(oracle::cost(p, r.solution->selected), *expected);
    EXPECT_TRUE(oracle::satisfies(p, r.solution->selected));

    ExactOptions unpruned;
    unpruned.prune_redundant = false;
    EXPECT_EQ(solve_exact(p, unpruned).solution->cost, *expected);
  }
}

TEST(SolveExact, DeterministicAcrossThreadCounts) {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 60; ++iter) {
    const auto p = random_problem(rng, 12);
    const auto one = solve_exact(p);
    ExactOptions many;
    many.threads = 4;
    const auto four = solve_exact(p, many);
    ASSERT_EQ(one.status, four.status);
    if (one.solution) {
      EXPECT_EQ(one.solution->selected, four.solution->selected);
    }
  }
}

TEST(OnePlusOne, StarConstruction) {
  // a=0, b=1 | c=2, d=3, e=4
  const TemporalGraph g(5, {E(0, 1, 1), E(2, 3, 1), E(3, 4, 1)});
  const auto f = solve_one_plus_one(g);
  EXPECT_EQ(f, (std::vector<TemporalEdge>{E(0, 2, 2), E(0, 4, 2), E(1, 3, 2)}));
  EXPECT_EQ(f.size(), 5u - 2u);
  EXPECT_TRUE(oracle::connected(augment(g, f), Semantics::NonStrict));
}

TEST(OnePlusOne, ConnectedSnapshotNeedsNothing) {
  EXPECT_TRUE(solve_one_plus_one(TemporalGraph(3, {E(0, 1, 1), E(1, 2, 1)})).empty());
  EXPECT_THROW(solve_one_plus_one(TemporalGraph(3, {E(0, 1, 2)})), ContractError);
}

TEST(OnePlusOne, MatchesExactMinimum) {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t n = 1 + rng() % 5;
    const auto g = oracle::random_graph(rng, n, 1, 0.3);
    const auto f = solve_one_plus_one(g);
    EXPECT_EQ(f.size(), n - min_component(g));
    const auto p = one_plus_one_problem(g);
    EXPECT_TRUE(oracle::satisfies(p, f));
    EXPECT_EQ(oracle::min_cost(p), f.size());
    EXPECT_TRUE(component_count_bound_check(augment(p.base, f)));
  }
}

TEST(ComponentBound, Examples) {
  // Three time-1 components; {0,1} is a time-2 component of size 2.
  const TemporalGraph g(4, {E(2, 3, 1), E(0, 1, 2), E(2, 3, 2)});
  EXPECT_FALSE(component_count_bound_check(g));
  EXPECT_THROW(component_count_bound_check(TemporalGraph(2, {E(0, 1, 1)})), ContractError);
}

TEST(ComponentBound, HoldsOnConnectedGraphs) {
  for (std::size_t n = 1; n <= 4; ++n) {
    oracle::for_each_graph(n, 2, [&](const TemporalGraph& g) {
      if (oracle::connected(g, Semantics::NonStrict)) {
        ASSERT_TRUE(component_count_bound_check(g));
      }
    });
  }
}

TEST(Spanner, Examples) {
  const TemporalGraph single(2, {E(0, 1, 1)});
  EXPECT_EQ(solve_exact(spanner_via_tca(single, 1)).solution->cost, 1u);

  // u=0, v=1, w=2: {u,v}@1, {v,w}@2, {v,w}@3, {u,v}@4. Keeping {v,w}@2 serves both
  // directions, so three edges suffice.
  const TemporalGraph path(3, {E(0, 1, 1), E(1, 2, 2), E(1, 2, 3), E(0, 1, 4)});
  for (const auto sem : {Semantics::NonStrict, Semantics::Strict}) {
    const auto expected = oracle::min_spanner(path, sem);
    EXPECT_EQ(expected, 3u);
    EXPECT_EQ(solve_exact(spanner_via_tca(path, 4, sem)).solution->cost, expected);
  }
  EXPECT_THROW(spanner_via_tca(TemporalGraph(3, {E(0, 1, 1)}), 1), ContractError);
}

}  // namespace
