#include "tca/expansion.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "tca/error.hpp"

namespace tca {

std::size_t ExpansionGraph::copy_node(VertexId v, Time t) const {
  if (v >= n_ || t < 1 || t > lifespan_ + 1) throw RangeError("no such vertex copy");
  return static_cast<std::size_t>(v) * (lifespan_ + 1) + (t - 1);
}

std::optional<std::size_t> ExpansionGraph::find_arc(std::size_t from, std::size_t to) const {
  if (from >= out_.size()) return std::nullopt;
  for (const std::size_t a : out_[from])
    if (arcs_[a].to == to) return a;
  return std::nullopt;
}

std::optional<std::size_t> ExpansionGraph::edge_index(const TemporalEdge& e) const {
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::string ExpansionGraph::label(std::size_t node) const {
  const auto& x = nodes_.at(node);
  if (x.kind == ExpansionNode::Kind::Copy) {
    return std::to_string(x.vertex) + "@" + std::to_string(x.time);
  }
  const auto& e = edges_[x.edge];
  return std::to_string(e.u) + "-" + std::to_string(e.v) + "@" + std::to_string(e.t) +
         (x.kind == ExpansionNode::Kind::GateIn ? ".in" : ".out");
}

std::size_t ExpansionGraph::gray_arc_count() const {
  return static_cast<std::size_t>(std::count_if(arcs_.begin(), arcs_.end(), [](const ExpansionArc& a) {
    return a.kind == ExpansionArc::Kind::Gray;
  }));
}

struct ExpansionBuilder {
  static ExpansionGraph build(const TemporalGraph& g, const std::vector<std::int64_t>& weights,
                              Semantics semantics) {
    ExpansionGraph x;
    x.n_ = g.vertex_count();
    x.lifespan_ = g.lifespan();
    x.semantics_ = semantics;
    x.edges_.assign(g.edges().begin(), g.edges().end());
    const Time T = x.lifespan_;

    for (VertexId v = 0; v < x.n_; ++v)
      for (Time t = 1; t <= T + 1; ++t) x.nodes_.push_back({ExpansionNode::Kind::Copy, v, t, 0});
    for (std::size_t m = 0; m < x.edges_.size(); ++m) {
      x.nodes_.push_back({ExpansionNode::Kind::GateIn, 0, x.edges_[m].t, m});
      x.nodes_.push_back({ExpansionNode::Kind::GateOut, 0, x.edges_[m].t, m});
    }
    x.out_.resize(x.nodes_.size());
    auto add = [&](std::size_t from, std::size_t to, std::int64_t w, ExpansionArc::Kind k) {
      x.out_[from].push_back(x.arcs_.size());
      x.arcs_.push_back({from, to, w, k});
      return x.arcs_.size() - 1;
    };

    for (VertexId v = 0; v < x.n_; ++v)
      for (Time t = 1; t <= T; ++t) add(x.copy_node(v, t), x.copy_node(v, t + 1), 0, ExpansionArc::Kind::Wait);

    x.gate_arc_.resize(x.edges_.size());
    for (std::size_t m = 0; m < x.edges_.size(); ++m) {
      const auto& e = x.edges_[m];
      add(x.copy_node(e.u, e.t), x.gate_in(m), 0, ExpansionArc::Kind::Enter);
      add(x.copy_node(e.v, e.t), x.gate_in(m), 0, ExpansionArc::Kind::Enter);
      x.gate_arc_[m] = add(x.gate_in(m), x.gate_out(m), weights[m], ExpansionArc::Kind::Gate);
      add(x.gate_out(m), x.copy_node(e.u, e.t + 1), 0, ExpansionArc::Kind::Exit);
      add(x.gate_out(m), x.copy_node(e.v, e.t + 1), 0, ExpansionArc::Kind::Exit);
    }

    if (semantics == Semantics::NonStrict) {
      for (std::size_t a = 0; a < x.edges_.size(); ++a) {
        for (std::size_t b = a + 1; b < x.edges_.size() && x.edges_[b].t == x.edges_[a].t; ++b) {
          const auto& ea = x.edges_[a];
          const auto& eb = x.edges_[b];
          if (ea.has_endpoint(eb.u) || ea.has_endpoint(eb.v)) {
            add(x.gate_out(a), x.gate_in(b), 0, ExpansionArc::Kind::Gray);
            add(x.gate_out(b), x.gate_in(a), 0, ExpansionArc::Kind::Gray);
          }
        }
      }
    }
    return x;
  }
};

Expansion build_expansion(const TGSteinerInstance& inst, Semantics semantics) {
  if (inst.weights.size() != inst.graph.edge_count()) {
    throw ContractError("every temporal edge needs a weight");
  }
  for (const auto w : inst.weights)
    if (w < 0) throw ContractError("edge weights must be non-negative");
  Expansion out{ExpansionBuilder::build(inst.graph, inst.weights, semantics), {}};
  const Time last = inst.graph.lifespan() + 1;
  for (const auto& [u, v] : inst.pairs) {
    out.pairs.emplace_back(out.graph.copy_node(u, 1), out.graph.copy_node(v, last));
  }
  return out;
}

ExpansionGraph build_expansion(const TemporalGraph& g, Semantics semantics) {
  return ExpansionBuilder::build(g, std::vector<std::int64_t>(g.edge_count(), 0), semantics);
}

// ---------------------------------------------------------------------------------------

namespace {

// Reachability with every zero-weight arc free and positive gates enabled per `on`.
class GateReach {
 public:
  explicit GateReach(const ExpansionGraph& exp) : exp_(exp) {}

  std::vector<char> forward(const std::vector<std::size_t>& sources, const std::vector<char>& on) const {
    std::vector<char> seen(exp_.nodes().size(), 0);
    std::vector<std::size_t> stack;
    for (const auto s : sources) {
      if (!seen[s]) {
        seen[s] = 1;
        stack.push_back(s);
      }
    }
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (const std::size_t ai : exp_.out_arcs()[a]) {
        const auto& arc = exp_.arcs()[ai];
        if (!usable(arc, on) || seen[arc.to]) continue;
        seen[arc.to] = 1;
        stack.push_back(arc.to);
      }
    }
    return seen;
  }

  std::vector<char> backward(const std::vector<std::size_t>& sinks) const {
    std::vector<std::vector<std::size_t>> in(exp_.nodes().size());
    for (std::size_t ai = 0; ai < exp_.arcs().size(); ++ai) in[exp_.arcs()[ai].to].push_back(ai);
    std::vector<char> seen(exp_.nodes().size(), 0);
    std::vector<std::size_t> stack;
    for (const auto s : sinks) {
      if (!seen[s]) {
        seen[s] = 1;
        stack.push_back(s);
      }
    }
    while (!stack.empty()) {
      const std::size_t b = stack.back();
      stack.pop_back();
      for (const std::size_t ai : in[b]) {
        const auto from = exp_.arcs()[ai].from;
        if (!seen[from]) {
          seen[from] = 1;
          stack.push_back(from);
        }
      }
    }
    return seen;
  }

  std::size_t satisfied(const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                        const std::vector<char>& on) const {
    std::map<std::size_t, std::vector<char>> cache;
    std::size_t count = 0;
    for (const auto& [s, t] : pairs) {
      auto it = cache.find(s);
      if (it == cache.end()) it = cache.emplace(s, forward({s}, on)).first;
      if (it->second[t]) ++count;
    }
    return count;
  }

 private:
  bool usable(const ExpansionArc& arc, const std::vector<char>& on) const {
    if (arc.kind != ExpansionArc::Kind::Gate || arc.weight == 0) return true;
    return on[exp_.nodes()[arc.from].edge] != 0;
  }

  const ExpansionGraph& exp_;
};

}  // namespace

ConnectionResult min_weight_connection(const ExpansionGraph& exp,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                       std::size_t demand, std::optional<std::int64_t> budget) {
  if (demand > pairs.size()) throw ContractError("demand exceeds the number of pairs");
  const GateReach reach(exp);
  const std::size_t m = exp.edges().size();

  std::vector<std::size_t> sources, sinks;
  for (const auto& [s, t] : pairs) {
    sources.push_back(s);
    sinks.push_back(t);
  }
  const std::vector<char> all_on(m, 1);
  const auto fwd = reach.forward(sources, all_on);
  const auto bwd = reach.backward(sinks);

  std::vector<std::size_t> items;  // relevant positive gates, canonical edge order
  std::vector<std::int64_t> weight;
  for (std::size_t e = 0; e < m; ++e) {
    const auto& arc = exp.arcs()[exp.gate_arc(e)];
    if (arc.weight > 0 && fwd[exp.gate_in(e)] && bwd[exp.gate_out(e)]) {
      items.push_back(e);
      weight.push_back(arc.weight);
    }
  }

  ConnectionResult result;
  std::vector<char> on(m, 0);
  for (const auto e : items) on[e] = 1;
  if (reach.satisfied(pairs, on) < demand) return result;
  std::fill(on.begin(), on.end(), 0);

  // Achievable subset sums, smallest first.
  const std::int64_t total = std::accumulate(weight.begin(), weight.end(), std::int64_t{0});
  std::vector<char> achievable(static_cast<std::size_t>(total) + 1, 0);
  achievable[0] = 1;
  for (const auto w : weight)
    for (std::int64_t s = total; s >= w; --s)
      if (achievable[s - w]) achievable[s] = 1;

  std::vector<std::int64_t> suffix(items.size() + 1, 0);
  for (std::size_t i = items.size(); i-- > 0;) suffix[i] = suffix[i + 1] + weight[i];

  std::vector<std::size_t> chosen;
  // Lexicographically first subset of items[from..] with weight exactly `left`.
  auto dfs = [&](auto&& self, std::size_t from, std::int64_t left) -> bool {
    if (left == 0) return reach.satisfied(pairs, on) >= demand;
    if (suffix[from] < left) return false;
    for (std::size_t i = from; i < items.size(); ++i) {
      if (weight[i] > left || suffix[i] < left) continue;
      on[items[i]] = 1;
      chosen.push_back(items[i]);
      if (self(self, i + 1, left - weight[i])) return true;
      chosen.pop_back();
      on[items[i]] = 0;
    }
    return false;
  };

  for (std::int64_t w = 0; w <= total; ++w) {
    if (!achievable[static_cast<std::size_t>(w)]) continue;
    if (budget && w > *budget) {
      result.budget_exceeded = true;
      return result;
    }
    chosen.clear();
    if (dfs(dfs, 0, w)) {
      result.weight = w;
      result.selected_gates = chosen;
      return result;
    }
  }
  return result;
}

SolveResult solve_tpca_via_expansion(const AugmentationProblem& p) {
  const auto* demands = std::get_if<PairDemands>(&p.requirement);
  if (!demands) throw ContractError("the expansion engine needs a pair requirement");
  if (p.cost_model != CostModel::PerTemporalEdge) {
    throw ContractError("the expansion engine supports the per-temporal-edge cost model only");
  }
  TGSteinerInstance inst;
  inst.graph = augment(p.base, p.candidates);
  inst.weights.reserve(inst.graph.edge_count());
  for (const auto& e : inst.graph.edges()) inst.weights.push_back(p.base.contains(e) ? 0 : 1);
  inst.pairs = demands->pairs;
  inst.demand = demands->demand;
  if (p.budget) inst.budget = static_cast<std::int64_t>(*p.budget);

  const Expansion exp = build_expansion(inst, p.semantics);
  const ConnectionResult r = min_weight_connection(exp.graph, exp.pairs, inst.demand, inst.budget);
  if (!r.weight) {
    return {r.budget_exceeded ? SolveStatus::BudgetExceeded : SolveStatus::Infeasible, std::nullopt};
  }
  Solution s;
  for (const auto e : r.selected_gates) s.selected.push_back(exp.graph.edges()[e]);
  std::sort(s.selected.begin(), s.selected.end());
  s.cost = selection_cost(p, s.selected);
  s.certificate = certify(p, s.selected);
  return {SolveStatus::Optimal, std::move(s)};
}

// ---------------------------------------------------------------------------------------
// Journey <-> path

bool is_valid_path(const ExpansionGraph& exp, const ExpansionPath& path) {
  if (path.empty()) return false;
  for (const auto node : path)
    if (node >= exp.nodes().size()) return false;
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    if (!exp.find_arc(path[k], path[k + 1])) return false;
  return true;
}

ExpansionPath journey_to_path(const ExpansionGraph& exp, const Journey& j) {
  if (j.semantics != exp.semantics()) {
    throw ContractError("journey semantics differs from the expansion's");
  }
  ExpansionPath path;
  VertexId pos = j.source;
  Time layer = 1;
  path.push_back(exp.copy_node(pos, 1));
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t gadget = kNone;  // edge whose GateOut the path sits on

  for (std::size_t k = 0; k < j.hops.size(); ++k) {
    const Hop& h = j.hops[k];
    if (h.from != pos) throw ContractError("journey hops do not chain");
    const auto e = exp.edge_index(TemporalEdge::make(h.from, h.to, h.time));
    if (!e) throw ContractError("journey uses an edge missing from the expansion");
    if (gadget != kNone) {
      if (gadget != *e) {
        if (!exp.find_arc(exp.gate_out(gadget), exp.gate_in(*e))) {
          throw ContractError("same-time hops need a gray arc");
        }
        path.push_back(exp.gate_in(*e));
        path.push_back(exp.gate_out(*e));
        gadget = *e;
      }
    } else {
      if (h.time < layer) throw ContractError("journey goes back in time");
      for (Time t = layer + 1; t <= h.time; ++t) path.push_back(exp.copy_node(pos, t));
      path.push_back(exp.gate_in(*e));
      path.push_back(exp.gate_out(*e));
      gadget = *e;
    }
    pos = h.to;
    const bool continues = k + 1 < j.hops.size() && j.hops[k + 1].time == h.time;
    if (continues && exp.semantics() == Semantics::Strict) {
      throw ContractError("strict journey repeats a time step");
    }
    if (!continues) {
      layer = h.time + 1;
      path.push_back(exp.copy_node(pos, layer));
      gadget = kNone;
    }
  }
  for (Time t = layer + 1; t <= exp.lifespan() + 1; ++t) path.push_back(exp.copy_node(pos, t));
  return path;
}

Journey path_to_journey(const ExpansionGraph& exp, const ExpansionPath& path) {
  if (!is_valid_path(exp, path)) throw ContractError("not a path of the expansion");
  const auto& first = exp.nodes()[path.front()];
  const auto& last = exp.nodes()[path.back()];
  if (first.kind != ExpansionNode::Kind::Copy || first.time != 1 ||
      last.kind != ExpansionNode::Kind::Copy || last.time != exp.lifespan() + 1) {
    throw ContractError("path must run from a time-1 copy to a copy at T+1");
  }
  Journey j{first.vertex, {}, exp.semantics()};
  VertexId pos = first.vertex;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const auto& a = exp.nodes()[path[k]];
    const auto& b = exp.nodes()[path[k + 1]];
    using K = ExpansionNode::Kind;
    if (a.kind == K::GateOut && b.kind == K::Copy) {
      if (b.vertex != pos) {
        j.hops.push_back({pos, b.vertex, a.time});
        pos = b.vertex;
      }
    } else if (a.kind == K::GateOut && b.kind == K::GateIn) {
      const auto& e1 = exp.edges()[a.edge];
      const auto& e2 = exp.edges()[b.edge];
      const VertexId shared = e2.has_endpoint(e1.u) ? e1.u : e1.v;
      if (shared != pos) {
        j.hops.push_back({pos, shared, a.time});
        pos = shared;
      }
    }
  }
  return j;
}

}  // namespace tca
