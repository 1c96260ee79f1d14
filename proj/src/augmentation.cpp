#include "tca/augmentation.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "mask_evaluator.hpp"
#include "tca/error.hpp"
#include "tca/union_find.hpp"

namespace tca {

PairDemands make_pair_demands(std::vector<std::pair<VertexId, VertexId>> pairs,
                              std::optional<std::size_t> demand) {
  PairDemands d;
  d.demand = demand.value_or(pairs.size());
  d.pairs = std::move(pairs);
  return d;
}

const char* to_string(CostModel m) noexcept {
  return m == CostModel::EdgeByEdge ? "group" : "edge";
}

const char* to_string(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "unknown";
}

namespace {

void check_vertex(const TemporalGraph& g, VertexId v, const char* what) {
  if (v >= g.vertex_count()) {
    throw RangeError(std::string(what) + " vertex " + std::to_string(v) + " outside the graph");
  }
}

void validate_requirement(const TemporalGraph& g, const Requirement& r) {
  if (const auto* s = std::get_if<SingleSource>(&r)) check_vertex(g, s->source, "source");
  if (const auto* d = std::get_if<PairDemands>(&r)) {
    if (d->pairs.empty()) throw ContractError("pair requirement needs at least one pair");
    if (d->demand > d->pairs.size()) {
      throw ContractError("demand " + std::to_string(d->demand) + " exceeds the " +
                          std::to_string(d->pairs.size()) + " listed pairs");
    }
    for (const auto& [u, v] : d->pairs) {
      check_vertex(g, u, "pair");
      check_vertex(g, v, "pair");
    }
  }
}

// Ordered pairs (u, v), u != v, that the requirement asks for.
std::vector<std::pair<VertexId, VertexId>> demanded_pairs(const AugmentationProblem& p) {
  std::vector<std::pair<VertexId, VertexId>> out;
  const auto n = static_cast<VertexId>(p.base.vertex_count());
  if (std::holds_alternative<AllPairs>(p.requirement)) {
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = 0; v < n; ++v)
        if (u != v) out.emplace_back(u, v);
  } else if (const auto* s = std::get_if<SingleSource>(&p.requirement)) {
    for (VertexId v = 0; v < n; ++v)
      if (v != s->source) out.emplace_back(s->source, v);
  } else {
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& pr : std::get<PairDemands>(p.requirement).pairs)
      if (pr.first != pr.second && seen.insert(pr).second) out.push_back(pr);
  }
  return out;
}

void check_subset(const AugmentationProblem& p, std::span<const TemporalEdge> f) {
  for (const auto& e : f) {
    if (!std::binary_search(p.candidates.begin(), p.candidates.end(), e)) {
      throw InvalidCandidateError("edge " + to_string(e) + " is not a candidate");
    }
  }
}

}  // namespace

AugmentationProblem make_problem(TemporalGraph base, std::vector<TemporalEdge> candidates,
                                 Requirement requirement, Semantics semantics,
                                 CostModel cost_model, std::optional<std::size_t> budget) {
  for (auto& e : candidates) {
    check_vertex(base, e.u, "candidate");
    check_vertex(base, e.v, "candidate");
    e = TemporalEdge::make(e.u, e.v, e.t);
  }
  std::sort(candidates.begin(), candidates.end());
  if (const auto dup = std::adjacent_find(candidates.begin(), candidates.end());
      dup != candidates.end()) {
    throw InvalidCandidateError("candidate " + to_string(*dup) + " is listed twice");
  }
  for (const auto& e : candidates) {
    if (base.contains(e)) {
      throw InvalidCandidateError("candidate " + to_string(e) + " is already in the graph");
    }
  }
  validate_requirement(base, requirement);
  return AugmentationProblem{std::move(base), std::move(candidates), std::move(requirement),
                             semantics, cost_model, budget};
}

std::size_t selection_cost(const AugmentationProblem& p, std::span<const TemporalEdge> f) {
  if (p.cost_model == CostModel::PerTemporalEdge) return f.size();
  std::set<std::pair<VertexId, VertexId>> pairs;
  for (const auto& e : f) pairs.emplace(e.u, e.v);
  return pairs.size();
}

bool verify_solution(const AugmentationProblem& p, std::span<const TemporalEdge> f) {
  check_subset(p, f);
  const TemporalGraph g = augment(p.base, f);
  if (std::holds_alternative<AllPairs>(p.requirement)) {
    return is_temporally_connected(g, p.semantics);
  }
  if (const auto* s = std::get_if<SingleSource>(&p.requirement)) {
    return reachable_set(g, s->source, p.semantics).size() == g.vertex_count();
  }
  const auto& d = std::get<PairDemands>(p.requirement);
  std::map<VertexId, std::vector<VertexId>> reach;
  std::size_t satisfied = 0;
  for (const auto& [u, v] : d.pairs) {
    auto it = reach.find(u);
    if (it == reach.end()) it = reach.emplace(u, reachable_set(g, u, p.semantics)).first;
    if (std::binary_search(it->second.begin(), it->second.end(), v)) ++satisfied;
  }
  return satisfied >= d.demand;
}

std::vector<Journey> certify(const AugmentationProblem& p, std::span<const TemporalEdge> f) {
  check_subset(p, f);
  const TemporalGraph g = augment(p.base, f);
  std::vector<Journey> out;
  const auto* demands = std::get_if<PairDemands>(&p.requirement);
  std::size_t satisfied = 0;
  if (demands) {
    for (const auto& [u, v] : demands->pairs) {
      if (u == v || find_journey(g, u, v, p.semantics)) ++satisfied;
    }
    if (satisfied < demands->demand) throw ContractError("selection does not meet the demand");
  }
  for (const auto& [u, v] : demanded_pairs(p)) {
    auto j = find_journey(g, u, v, p.semantics);
    if (j) {
      out.push_back(std::move(*j));
    } else if (!demands) {
      throw ContractError("no journey from " + std::to_string(u) + " to " + std::to_string(v));
    }
  }
  return out;
}

std::vector<TemporalEdge> unrestricted_candidates(const TemporalGraph& g) {
  if (g.lifespan() < 1) throw ContractError("unrestricted candidates need a lifespan of at least 1");
  std::vector<TemporalEdge> out;
  const auto n = static_cast<VertexId>(g.vertex_count());
  for (Time t = 1; t <= g.lifespan(); ++t)
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v)
        if (TemporalEdge e{t, u, v}; !g.contains(e)) out.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------------------
// MaskEvaluator

namespace detail {

MaskEvaluator::MaskEvaluator(const AugmentationProblem& p)
    : n_(p.base.vertex_count()), semantics_(p.semantics) {
  if (n_ > kMaxVertices) {
    throw ContractError("exact search supports at most 64 vertices, got " + std::to_string(n_));
  }
  std::vector<Time> times = p.base.active_times();
  for (const auto& e : p.candidates) times.push_back(e.t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::size_t ci = 0;
  for (const Time t : times) {
    Layer layer;
    layer.time = t;
    for (const auto& e : p.base.edges_at(t)) layer.base.emplace_back(e.u, e.v);
    layer.cand_begin = ci;
    while (ci < p.candidates.size() && p.candidates[ci].t == t) ++ci;
    layer.cand_end = ci;
    layers_.push_back(std::move(layer));
  }
  for (const auto& e : p.candidates) cand_.emplace_back(e.u, e.v);

  if (std::holds_alternative<AllPairs>(p.requirement)) {
    kind_ = Kind::All;
    initial_sources_ = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
  } else if (const auto* s = std::get_if<SingleSource>(&p.requirement)) {
    kind_ = Kind::Source;
    source_ = s->source;
    initial_sources_ = std::uint64_t{1} << s->source;
  } else {
    kind_ = Kind::Pairs;
    const auto& d = std::get<PairDemands>(p.requirement);
    pairs_ = d.pairs;
    demand_ = d.demand;
    for (const auto& pr : pairs_) initial_sources_ |= std::uint64_t{1} << pr.first;
  }
}

bool MaskEvaluator::satisfied(const std::vector<char>& on) const {
  std::uint64_t reach[kMaxVertices];
  for (std::size_t v = 0; v < n_; ++v) reach[v] = initial_sources_ & (std::uint64_t{1} << v);

  std::uint8_t parent[kMaxVertices];
  std::uint64_t acc[kMaxVertices];
  std::uint8_t touched[2 * kMaxVertices];
  auto find = [&](std::uint8_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  for (const auto& layer : layers_) {
    if (semantics_ == Semantics::NonStrict) {
      std::size_t nt = 0;
      auto join = [&](std::uint8_t a, std::uint8_t b) {
        for (const std::uint8_t x : {a, b}) {
          if (parent[x] == 0xFF) {
            parent[x] = x;
            touched[nt++] = x;
          }
        }
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
      };
      for (std::size_t v = 0; v < n_; ++v) parent[v] = 0xFF;
      for (const auto& [a, b] : layer.base) join(a, b);
      for (std::size_t i = layer.cand_begin; i < layer.cand_end; ++i)
        if (on[i]) join(cand_[i].first, cand_[i].second);
      for (std::size_t k = 0; k < nt; ++k) acc[touched[k]] = 0;
      for (std::size_t k = 0; k < nt; ++k) acc[find(touched[k])] |= reach[touched[k]];
      for (std::size_t k = 0; k < nt; ++k) reach[touched[k]] = acc[find(touched[k])];
    } else {
      std::uint64_t next[kMaxVertices];
      std::copy(reach, reach + n_, next);
      for (const auto& [a, b] : layer.base) {
        next[a] |= reach[b];
        next[b] |= reach[a];
      }
      for (std::size_t i = layer.cand_begin; i < layer.cand_end; ++i) {
        if (!on[i]) continue;
        const auto [a, b] = cand_[i];
        next[a] |= reach[b];
        next[b] |= reach[a];
      }
      std::copy(next, next + n_, reach);
    }
  }

  switch (kind_) {
    case Kind::All:
      for (std::size_t v = 0; v < n_; ++v)
        if (reach[v] != initial_sources_) return false;
      return true;
    case Kind::Source:
      for (std::size_t v = 0; v < n_; ++v)
        if (!(reach[v] >> source_ & 1)) return false;
      return true;
    case Kind::Pairs: {
      std::size_t count = 0;
      for (const auto& [u, v] : pairs_)
        if (reach[v] >> u & 1) ++count;
      return count >= demand_;
    }
  }
  return false;
}

}  // namespace detail

// ---------------------------------------------------------------------------------------
// Exact subset search

namespace {

struct SearchItems {
  // Each item is the set of candidate indices bought together at unit cost.
  std::vector<std::vector<std::size_t>> items;
};

SearchItems make_items(const AugmentationProblem& p) {
  SearchItems s;
  if (p.cost_model == CostModel::PerTemporalEdge) {
    for (std::size_t i = 0; i < p.candidates.size(); ++i) s.items.push_back({i});
    return s;
  }
  // Groups by endpoint pair, ordered by their earliest candidate.
  std::map<std::pair<VertexId, VertexId>, std::size_t> group_of;
  for (std::size_t i = 0; i < p.candidates.size(); ++i) {
    const auto key = std::make_pair(p.candidates[i].u, p.candidates[i].v);
    auto [it, fresh] = group_of.emplace(key, s.items.size());
    if (fresh) s.items.emplace_back();
    s.items[it->second].push_back(i);
  }
  return s;
}

class SubsetSearcher {
 public:
  SubsetSearcher(const AugmentationProblem& p, const SearchItems& items,
                 const detail::MaskEvaluator& eval, bool prune)
      : p_(p), items_(items.items), eval_(eval), on_(p.candidates.size(), 0),
        prune_(prune && p.semantics == Semantics::NonStrict) {
    if (prune_) {
      Time max_t = p.base.lifespan();
      for (const auto& e : p.candidates) max_t = std::max(max_t, e.t);
      layers_.assign(max_t + 1, RollbackUnionFind(p.base.vertex_count()));
      for (const auto& e : p.base.edges()) layers_[e.t].unite(e.u, e.v);
    }
  }

  /// Searches size-`size` item sets whose smallest item is `first`. On success, `chosen`
  /// holds the lexicographically first one.
  bool search_branch(std::size_t first, std::size_t size, std::vector<std::size_t>& chosen) {
    chosen.clear();
    if (size == 0) return eval_.satisfied(on_);
    return extend(first, first + 1, size - 1, chosen);
  }

 private:
  struct Undo {
    std::vector<std::pair<Time, std::size_t>> marks;
  };

  bool add(std::size_t item, Undo& undo) {
    bool useful = !prune_;
    for (const std::size_t ci : items_[item]) {
      on_[ci] = 1;
      if (prune_) {
        const auto& e = p_.candidates[ci];
        undo.marks.emplace_back(e.t, layers_[e.t].checkpoint());
        if (layers_[e.t].unite(e.u, e.v)) useful = true;
      }
    }
    return useful;
  }

  void remove(std::size_t item, const Undo& undo) {
    for (const std::size_t ci : items_[item]) on_[ci] = 0;
    for (auto it = undo.marks.rbegin(); it != undo.marks.rend(); ++it) {
      layers_[it->first].rollback(it->second);
    }
  }

  bool extend(std::size_t item, std::size_t next, std::size_t remaining,
              std::vector<std::size_t>& chosen) {
    Undo undo;
    const bool useful = add(item, undo);
    bool found = false;
    if (useful) {
      chosen.push_back(item);
      if (remaining == 0) {
        found = eval_.satisfied(on_);
      } else {
        for (std::size_t j = next; j + remaining <= items_.size() && !found; ++j) {
          found = extend(j, j + 1, remaining - 1, chosen);
        }
      }
      if (!found) chosen.pop_back();
    }
    remove(item, undo);
    return found;
  }

  const AugmentationProblem& p_;
  const std::vector<std::vector<std::size_t>>& items_;
  const detail::MaskEvaluator& eval_;
  std::vector<char> on_;
  bool prune_;
  std::vector<RollbackUnionFind> layers_;  // indexed by time
};

// Lexicographically first satisfying item set of the given size, or nullopt.
std::optional<std::vector<std::size_t>> search_level(const AugmentationProblem& p,
                                                     const SearchItems& items,
                                                     const detail::MaskEvaluator& eval,
                                                     std::size_t size,
                                                     const ExactOptions& options) {
  if (size == 0) {
    SubsetSearcher s(p, items, eval, options.prune_redundant);
    std::vector<std::size_t> chosen;
    if (s.search_branch(0, 0, chosen)) return chosen;
    return std::nullopt;
  }
  const std::size_t branches = items.items.size() + 1 - size;
  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(branches)));

  std::atomic<std::size_t> next_branch{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::mutex mu;
  std::map<std::size_t, std::vector<std::size_t>> found;

  auto work = [&] {
    SubsetSearcher s(p, items, eval, options.prune_redundant);
    std::vector<std::size_t> chosen;
    for (;;) {
      const std::size_t b = next_branch.fetch_add(1);
      if (b >= branches || b > best.load()) return;
      if (s.search_branch(b, size, chosen)) {
        std::lock_guard lock(mu);
        found.emplace(b, chosen);
        std::size_t cur = best.load();
        while (b < cur && !best.compare_exchange_weak(cur, b)) {
        }
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (found.empty()) return std::nullopt;
  return found.begin()->second;
}

Solution make_solution(const AugmentationProblem& p, std::vector<TemporalEdge> selected) {
  std::sort(selected.begin(), selected.end());
  Solution s;
  s.cost = selection_cost(p, selected);
  s.certificate = certify(p, selected);
  s.selected = std::move(selected);
  return s;
}

}  // namespace

SolveResult solve_exact(const AugmentationProblem& p, const ExactOptions& options) {
  const detail::MaskEvaluator eval(p);
  const SearchItems items = make_items(p);

  if (!eval.satisfied(std::vector<char>(p.candidates.size(), 1))) {
    return {SolveStatus::Infeasible, std::nullopt};
  }
  const std::size_t max_size = std::min(items.items.size(), p.budget.value_or(items.items.size()));
  for (std::size_t size = 0; size <= max_size; ++size) {
    auto chosen = search_level(p, items, eval, size, options);
    if (!chosen) continue;
    std::vector<TemporalEdge> selected;
    for (const std::size_t item : *chosen)
      for (const std::size_t ci : items.items[item]) selected.push_back(p.candidates[ci]);
    return {SolveStatus::Optimal, make_solution(p, std::move(selected))};
  }
  return {SolveStatus::BudgetExceeded, std::nullopt};
}

// ---------------------------------------------------------------------------------------
// (1+1)-TCA

std::vector<TemporalEdge> solve_one_plus_one(const TemporalGraph& g) {
  if (g.lifespan() != 1) {
    throw ContractError("(1+1)-TCA needs a lifespan-1 graph, got lifespan " +
                        std::to_string(g.lifespan()));
  }
  if (g.vertex_count() == 0) throw ContractError("(1+1)-TCA needs at least one vertex");
  const auto comps = snapshot_components(g, 1);
  std::size_t smallest = 0;
  for (std::size_t i = 1; i < comps.parts.size(); ++i) {
    if (comps.parts[i].size() < comps.parts[smallest].size()) smallest = i;
  }
  const auto& centers = comps.parts[smallest];

  // Round-robin restarts in every component, so each star gets a vertex from each of them.
  std::vector<TemporalEdge> out;
  for (std::size_t i = 0; i < comps.parts.size(); ++i) {
    if (i == smallest) continue;
    const auto& part = comps.parts[i];
    for (std::size_t j = 0; j < part.size(); ++j) {
      out.push_back(TemporalEdge::make(part[j], centers[j % centers.size()], 2));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

AugmentationProblem one_plus_one_problem(const TemporalGraph& g) {
  if (g.lifespan() > 1) throw ContractError("(1+1)-TCA needs a lifespan-1 graph");
  std::vector<TemporalEdge> edges(g.edges().begin(), g.edges().end());
  TemporalGraph base(g.vertex_count(), std::move(edges), 2);
  std::vector<TemporalEdge> candidates;
  const auto n = static_cast<VertexId>(g.vertex_count());
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) candidates.push_back({2, u, v});
  return make_problem(std::move(base), std::move(candidates), AllPairs{});
}

bool component_count_bound_check(const TemporalGraph& g) {
  if (g.lifespan() != 2) {
    throw ContractError("component count bound is stated for lifespan 2, got " +
                        std::to_string(g.lifespan()));
  }
  const auto c1 = snapshot_components(g, 1);
  const auto c2 = snapshot_components(g, 2);
  auto min_size = [](const SnapshotComponents& c) {
    std::size_t m = std::numeric_limits<std::size_t>::max();
    for (const auto& part : c.parts) m = std::min(m, part.size());
    return m;
  };
  if (g.vertex_count() == 0) return true;
  return c1.parts.size() <= min_size(c2) && c2.parts.size() <= min_size(c1);
}

AugmentationProblem spanner_via_tca(const TemporalGraph& g, std::size_t k, Semantics semantics) {
  if (!is_temporally_connected(g, semantics)) {
    throw ContractError("spanner reduction needs a temporally connected graph");
  }
  TemporalGraph empty(g.vertex_count(), {}, g.lifespan());
  std::vector<TemporalEdge> candidates(g.edges().begin(), g.edges().end());
  return make_problem(std::move(empty), std::move(candidates), AllPairs{}, semantics,
                      CostModel::PerTemporalEdge, k);
}

}  // namespace tca
