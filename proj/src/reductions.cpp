#include "tca/reductions.hpp"

#include <algorithm>
#include <set>

#include "tca/error.hpp"
#include "tca/union_find.hpp"

namespace tca {

void validate(const StaticGraphInstance& g) {
  std::set<std::pair<VertexId, VertexId>> seen;
  for (auto [u, v] : g.edges) {
    if (u >= g.n || v >= g.n) throw ContractError("edge endpoint outside the graph");
    if (u == v) throw ContractError("static graph has a self-loop");
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
      throw ContractError("static graph has a repeated edge");
    }
  }
}

void validate(const CnfInstance& f) {
  for (const auto& clause : f.clauses) {
    for (const int lit : clause) {
      if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > f.variables) {
        throw ContractError("literal " + std::to_string(lit) + " outside 1.." +
                            std::to_string(f.variables));
      }
      for (const int other : clause) {
        if (other == -lit) throw ContractError("clause holds a variable and its negation");
      }
    }
  }
}

bool is_dominating_set(const StaticGraphInstance& g, const std::vector<VertexId>& set) {
  std::vector<char> dominated(g.n, 0);
  for (const auto u : set) {
    if (u >= g.n) return false;
    dominated[u] = 1;
  }
  for (const auto& [u, v] : g.edges) {
    if (std::find(set.begin(), set.end(), u) != set.end()) dominated[v] = 1;
    if (std::find(set.begin(), set.end(), v) != set.end()) dominated[u] = 1;
  }
  return std::all_of(dominated.begin(), dominated.end(), [](char c) { return c != 0; });
}

bool is_hitting_set(const SetSystemInstance& s, const std::vector<std::size_t>& elements) {
  return std::all_of(s.sets.begin(), s.sets.end(), [&](const std::vector<std::size_t>& set) {
    return std::any_of(set.begin(), set.end(), [&](std::size_t e) {
      return std::find(elements.begin(), elements.end(), e) != elements.end();
    });
  });
}

bool is_disjoint_cover_partition(const SetSystemInstance& s,
                                 const std::vector<std::vector<std::size_t>>& parts) {
  std::vector<int> used(s.sets.size(), 0);
  for (const auto& part : parts) {
    if (part.empty()) return false;
    std::vector<char> covered(s.universe, 0);
    for (const auto j : part) {
      if (j >= s.sets.size()) return false;
      ++used[j];
      for (const auto e : s.sets[j])
        if (e < s.universe) covered[e] = 1;
    }
    if (!std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; })) return false;
  }
  return std::all_of(used.begin(), used.end(), [](int c) { return c == 1; });
}

bool satisfies(const CnfInstance& f, const std::vector<bool>& assignment) {
  if (assignment.size() != f.variables) return false;
  return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const std::array<int, 3>& c) {
    return std::any_of(c.begin(), c.end(), [&](int lit) {
      const bool value = assignment[static_cast<std::size_t>(std::abs(lit)) - 1];
      return lit > 0 ? value : !value;
    });
  });
}

// ---------------------------------------------------------------------------------------
// Dominating Set

DominatingSetReduction reduce_dominating_set(const StaticGraphInstance& ds, CandidateMode mode) {
  validate(ds);
  const auto n = static_cast<VertexId>(ds.n);
  const VertexId x = n;
  const VertexId y = n + 1;
  std::set<std::pair<VertexId, VertexId>> in_e;
  for (const auto& [u, v] : ds.edges) in_e.emplace(std::min(u, v), std::max(u, v));

  std::vector<TemporalEdge> edges{TemporalEdge::make(x, y, 2)};
  // V ∪ {y} is a clique: pairs of E at time 2, every other pair at time 1.
  for (VertexId u = 0; u <= n + 1; ++u) {
    if (u == x) continue;
    for (VertexId v = u + 1; v <= n + 1; ++v) {
      if (v == x) continue;
      edges.push_back(TemporalEdge::make(u, v, in_e.count({u, v}) ? 2 : 1));
    }
  }
  TemporalGraph base(ds.n + 2, std::move(edges), 2);

  std::vector<TemporalEdge> candidates;
  if (mode == CandidateMode::Unrestricted) {
    candidates = unrestricted_candidates(base);
  } else {
    for (VertexId v = 0; v < n; ++v) candidates.push_back(TemporalEdge::make(x, v, 1));
  }
  return {make_problem(std::move(base), std::move(candidates), AllPairs{}, Semantics::Strict,
                       CostModel::PerTemporalEdge, ds.budget),
          x, y};
}

std::vector<TemporalEdge> map_witness_forward(const DominatingSetReduction& r,
                                              const std::vector<VertexId>& dominating_set) {
  std::vector<TemporalEdge> out;
  for (const auto u : dominating_set) {
    if (u >= r.x) throw ContractError("dominating set vertex outside the source graph");
    out.push_back(TemporalEdge::make(r.x, u, 1));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<VertexId> map_witness_backward(const DominatingSetReduction& r,
                                           const std::vector<TemporalEdge>& edges) {
  if (!verify_solution(r.problem, edges)) throw ContractError("edges do not connect the graph");
  const VertexId n = r.x;
  std::set<VertexId> chosen;
  for (const auto& e : edges) {
    if (e.t == 1 && e.has_endpoint(r.x) && e.other(r.x) < n) chosen.insert(e.other(r.x));
  }
  // Time-2 edges of the base between V-vertices are exactly the source edges.
  std::vector<char> dominated(n, 0);
  for (const auto u : chosen) dominated[u] = 1;
  for (const auto& e : r.problem.base.edges_at(2)) {
    if (e.u >= n || e.v >= n) continue;
    if (chosen.count(e.u)) dominated[e.v] = 1;
    if (chosen.count(e.v)) dominated[e.u] = 1;
  }
  std::vector<VertexId> out(chosen.begin(), chosen.end());
  for (VertexId v = 0; v < n; ++v)
    if (!dominated[v]) out.push_back(v);
  std::sort(out.begin(), out.end());
  if (out.size() > edges.size()) {
    throw ContractError("recovered dominating set is larger than the connecting set");
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// Hitting Set

HittingSetReduction reduce_hitting_set(const SetSystemInstance& hs, CandidateMode mode) {
  HittingSetReduction r;
  r.source = hs;
  for (auto& set : r.source.sets) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (set.empty()) throw ContractError("hitting set instance has an empty subset");
    if (set.back() >= hs.universe) throw ContractError("subset element outside the universe");
  }
  const auto& sets = r.source.sets;
  VertexId next = 0;
  r.x = next++;
  r.membership.resize(sets.size());
  std::vector<std::vector<VertexId>> by_element(hs.universe);
  for (std::size_t j = 0; j < sets.size(); ++j) {
    for (const auto e : sets[j]) {
      r.membership[j].push_back(next);
      by_element[e].push_back(next);
      ++next;
    }
  }
  for (std::size_t j = 0; j < sets.size(); ++j) r.set_vertex.push_back(next++);

  std::vector<TemporalEdge> edges;
  for (const auto& group : by_element)
    for (std::size_t a = 0; a < group.size(); ++a)
      for (std::size_t b = a + 1; b < group.size(); ++b)
        edges.push_back(TemporalEdge::make(group[a], group[b], 1));
  for (std::size_t j = 0; j < sets.size(); ++j)
    for (const auto v : r.membership[j]) edges.push_back(TemporalEdge::make(v, r.set_vertex[j], 2));
  TemporalGraph base(next, std::move(edges), 2);

  std::vector<TemporalEdge> candidates;
  if (mode == CandidateMode::Unrestricted) {
    candidates = unrestricted_candidates(base);
  } else {
    for (const auto& members : r.membership)
      for (const auto v : members) candidates.push_back(TemporalEdge::make(r.x, v, 1));
  }
  r.problem = make_problem(std::move(base), std::move(candidates), SingleSource{r.x},
                           Semantics::NonStrict, CostModel::PerTemporalEdge, hs.budget);
  return r;
}

std::vector<TemporalEdge> map_witness_forward(const HittingSetReduction& r,
                                              const std::vector<std::size_t>& hitting_set) {
  std::vector<TemporalEdge> out;
  for (const auto e : hitting_set) {
    for (std::size_t j = 0; j < r.source.sets.size(); ++j) {
      const auto& set = r.source.sets[j];
      const auto it = std::find(set.begin(), set.end(), e);
      if (it == set.end()) continue;
      out.push_back(TemporalEdge::make(r.x, r.membership[j][it - set.begin()], 1));
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> map_witness_backward(const HittingSetReduction& r,
                                              const std::vector<TemporalEdge>& edges) {
  if (!verify_solution(r.problem, edges)) throw ContractError("x is not a source after augmentation");
  const TemporalGraph g = augment(r.problem.base, edges);
  const auto c1 = snapshot_components(g, 1);
  const auto& home = c1.parts[c1.block_of[r.x]];

  std::set<std::size_t> elements;
  for (std::size_t j = 0; j < r.source.sets.size(); ++j) {
    for (std::size_t k = 0; k < r.membership[j].size(); ++k) {
      if (std::binary_search(home.begin(), home.end(), r.membership[j][k])) {
        elements.insert(r.source.sets[j][k]);
      }
    }
  }
  for (const auto& set : r.source.sets) {
    const bool hit = std::any_of(set.begin(), set.end(), [&](std::size_t e) { return elements.count(e) > 0; });
    if (!hit) elements.insert(set.front());
  }
  if (elements.size() > edges.size()) {
    throw ContractError("recovered hitting set is larger than the augmentation");
  }
  return {elements.begin(), elements.end()};
}

// ---------------------------------------------------------------------------------------
// Disjoint Set Covers

DscReduction reduce_dsc(const SetSystemInstance& dsc) {
  if (dsc.budget < 1) throw ContractError("DSC asks for at least one cover");
  if (dsc.universe == 0 || dsc.sets.empty()) throw ContractError("DSC needs elements and sets");
  const std::size_t n = dsc.universe;
  const std::size_t m = dsc.sets.size();
  DscReduction r;
  r.source = dsc;
  r.matrix = BinaryMatrix(n * (m + 1), m);
  for (std::size_t j = 0; j < m; ++j) {
    for (const auto e : dsc.sets[j]) {
      if (e >= n) throw ContractError("subset element outside the universe");
      for (std::size_t copy = 0; copy <= m; ++copy) r.matrix.set(copy * n + e, j, true);
    }
  }
  r.budget = dsc.budget <= m ? std::optional<std::size_t>(m - dsc.budget) : std::nullopt;
  return r;
}

std::vector<OrCombination> map_witness_forward(const DscReduction& r,
                                               const std::vector<std::vector<std::size_t>>& parts) {
  if (!is_disjoint_cover_partition(r.source, parts)) {
    throw ContractError("parts are not a partition into covers");
  }
  auto sorted = parts;
  for (auto& p : sorted) std::sort(p.begin(), p.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> current(r.matrix.cols());  // first original column of each line
  for (std::size_t c = 0; c < current.size(); ++c) current[c] = c;
  std::vector<OrCombination> seq;
  for (const auto& part : sorted) {
    for (std::size_t k = 1; k < part.size(); ++k) {
      const auto pos = [&](std::size_t c) {
        return static_cast<std::size_t>(std::find(current.begin(), current.end(), c) - current.begin());
      };
      const std::size_t i = pos(part.front());
      const std::size_t j = pos(part[k]);
      seq.push_back({Axis::Cols, i, j});
      current.erase(current.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
    }
  }
  return seq;
}

std::vector<std::vector<std::size_t>> map_witness_backward(const DscReduction& r,
                                                           const std::vector<OrCombination>& seq) {
  if (!replay(r.matrix, seq).is_all_ones()) {
    throw ContractError("sequence does not reach a one-filled matrix");
  }
  std::vector<std::vector<std::size_t>> cols(r.matrix.cols());
  for (std::size_t c = 0; c < cols.size(); ++c) cols[c] = {c};
  for (const auto& op : seq) {
    if (op.axis != Axis::Cols) continue;
    const std::size_t keep = std::min(op.i, op.j);
    const std::size_t drop = std::max(op.i, op.j);
    cols[keep].insert(cols[keep].end(), cols[drop].begin(), cols[drop].end());
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(drop));
  }
  std::vector<std::vector<std::size_t>> covers, rest;
  for (auto& g : cols) {
    std::sort(g.begin(), g.end());
    std::vector<char> covered(r.source.universe, 0);
    for (const auto j : g)
      for (const auto e : r.source.sets[j]) covered[e] = 1;
    const bool cover = std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
    (cover ? covers : rest).push_back(g);
  }
  if (covers.empty()) throw ContractError("no column group covers the universe");
  for (const auto& g : rest) covers.front().insert(covers.front().end(), g.begin(), g.end());
  for (auto& g : covers) std::sort(g.begin(), g.end());
  std::sort(covers.begin(), covers.end());
  return covers;
}

// ---------------------------------------------------------------------------------------
// 3-SAT

SatReduction reduce_3sat(const CnfInstance& cnf) {
  validate(cnf);
  if (cnf.variables == 0 || cnf.clauses.empty()) {
    throw ContractError("3-SAT reduction needs at least one variable and one clause");
  }
  SatReduction r;
  r.source = cnf;
  const std::size_t m = cnf.clauses.size();

  // Occurrences (clause, slot) of each variable, in clause order.
  std::vector<std::vector<std::size_t>> occurrences(cnf.variables);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < 3; ++k)
      occurrences[static_cast<std::size_t>(std::abs(cnf.clauses[j][k])) - 1].push_back(3 * j + k);

  VertexId next = 0;
  std::vector<TemporalEdge> edges;
  std::vector<TemporalEdge> candidates;
  r.links.resize(3 * m);
  std::vector<VertexId> starts, ends;
  for (std::size_t i = 0; i < cnf.variables; ++i) {
    const VertexId start = next++;
    starts.push_back(start);
    std::array<VertexId, 2> tail{start, start};  // last vertex of each branch so far
    for (const std::size_t occ : occurrences[i]) {
      for (std::size_t branch = 0; branch < 2; ++branch) {
        const VertexId buffer = next++;
        const VertexId value = next++;
        edges.push_back(TemporalEdge::make(tail[branch], buffer, 1));
        candidates.push_back(TemporalEdge::make(buffer, value, 1));
        candidates.push_back(TemporalEdge::make(buffer, value, 2));
        r.links[occ][branch] = {buffer, value};
        tail[branch] = value;
      }
    }
    const VertexId end = next++;
    ends.push_back(end);
    if (occurrences[i].empty()) {
      edges.push_back(TemporalEdge::make(start, end, 1));
    } else {
      edges.push_back(TemporalEdge::make(tail[0], end, 1));
      edges.push_back(TemporalEdge::make(tail[1], end, 1));
    }
    if (i > 0) edges.push_back(TemporalEdge::make(ends[i - 1], start, 1));
  }

  std::vector<VertexId> clause_start, clause_end;
  for (std::size_t j = 0; j < m; ++j) {
    clause_start.push_back(next++);
    clause_end.push_back(next++);
    if (j > 0) edges.push_back(TemporalEdge::make(clause_end[j - 1], clause_start[j], 2));
    for (std::size_t k = 0; k < 3; ++k) {
      const int lit = cnf.clauses[j][k];
      const auto& [buffer, value] = r.links[3 * j + k][lit > 0 ? 0 : 1];
      edges.push_back(TemporalEdge::make(clause_start[j], buffer, 2));
      edges.push_back(TemporalEdge::make(value, clause_end[j], 2));
    }
  }

  r.variable_start = starts.front();
  r.variable_end = ends.back();
  r.clause_start = clause_start.front();
  r.clause_end = clause_end.back();
  r.optional_links = candidates.size() / 2;
  TemporalGraph base(next, std::move(edges), 2);
  r.problem = make_problem(std::move(base), std::move(candidates),
                           make_pair_demands({{r.variable_start, r.variable_end},
                                              {r.clause_start, r.clause_end}}),
                           Semantics::NonStrict, CostModel::EdgeByEdge, 3 * m);
  return r;
}

std::vector<TemporalEdge> map_witness_forward(const SatReduction& r, const std::vector<bool>& assignment) {
  if (assignment.size() != r.source.variables) throw ContractError("assignment has the wrong size");
  std::vector<TemporalEdge> out;
  for (std::size_t occ = 0; occ < r.links.size(); ++occ) {
    const int lit = r.source.clauses[occ / 3][occ % 3];
    const bool value = assignment[static_cast<std::size_t>(std::abs(lit)) - 1];
    const auto& [buffer, val] = r.links[occ][value ? 0 : 1];
    out.push_back(TemporalEdge::make(buffer, val, 1));
    out.push_back(TemporalEdge::make(buffer, val, 2));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<bool> map_witness_backward(const SatReduction& r, const std::vector<TemporalEdge>& edges) {
  std::set<std::pair<VertexId, VertexId>> bought;
  for (const auto& e : edges) bought.emplace(e.u, e.v);
  std::vector<bool> assignment(r.source.variables, true);
  for (std::size_t occ = 0; occ < r.links.size(); ++occ) {
    const auto var = static_cast<std::size_t>(std::abs(r.source.clauses[occ / 3][occ % 3])) - 1;
    const auto [a, b] = r.links[occ][0];
    if (!bought.count({std::min(a, b), std::max(a, b)})) assignment[var] = false;
  }
  return assignment;
}

}  // namespace tca
