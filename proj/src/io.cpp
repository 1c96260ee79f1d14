#include "tca/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace tca::io {
namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

/// Non-empty lines with comments stripped, split on whitespace.
std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> out;
  std::string text;
  for (std::size_t number = 1; std::getline(in, text); ++number) {
    if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream ss(text);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

template <class Int>
Int parse_int(const std::string& tok, std::size_t line, const char* what) {
  Int value{};
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
  }
  return value;
}

std::size_t parse_count(const std::string& tok, std::size_t line, const char* what) {
  return parse_int<std::size_t>(tok, line, what);
}

void expect_arity(const Line& l, std::size_t min, std::size_t max, const char* record) {
  if (l.tokens.size() < min || l.tokens.size() > max) {
    throw ParseError(l.number, std::string("malformed '") + record + "' record");
  }
}

VertexId parse_vertex(const std::string& tok, std::size_t n, std::size_t line) {
  const auto v = parse_int<VertexId>(tok, line, "vertex");
  if (v >= n) {
    throw ParseError(line, "vertex " + tok + " outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
  }
  return v;
}

/// Library errors found while assembling parsed records become parse errors on `line`.
template <class F>
auto at_line(std::size_t line, F f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(line, e.what());
  }
}

std::string axis_name(Axis a) { return to_string(a); }

}  // namespace

// ---------------------------------------------------------------------------------------
// Text formats

TemporalGraph parse_tg(std::istream& in) {
  std::optional<Time> lifespan;
  std::optional<std::size_t> n;
  std::vector<TemporalEdge> edges;
  std::size_t last_line = 0;
  for (const auto& l : read_lines(in)) {
    last_line = l.number;
    const auto& kind = l.tokens[0];
    if (kind == "T") {
      expect_arity(l, 2, 2, "T");
      if (n || lifespan) throw ParseError(l.number, "'T' must come first");
      lifespan = parse_int<Time>(l.tokens[1], l.number, "lifespan");
    } else if (kind == "V") {
      expect_arity(l, 2, 2, "V");
      if (n) throw ParseError(l.number, "repeated 'V' record");
      n = parse_count(l.tokens[1], l.number, "vertex count");
    } else if (kind == "E") {
      expect_arity(l, 4, std::numeric_limits<std::size_t>::max(), "E");
      if (!n) throw ParseError(l.number, "'E' before 'V'");
      const auto u = parse_vertex(l.tokens[1], *n, l.number);
      const auto v = parse_vertex(l.tokens[2], *n, l.number);
      for (std::size_t k = 3; k < l.tokens.size(); ++k) {
        const auto t = parse_int<Time>(l.tokens[k], l.number, "time");
        const auto e = at_line(l.number, [&] { return TemporalEdge::make(u, v, t); });
        if (std::find(edges.begin(), edges.end(), e) != edges.end()) {
          throw ParseError(l.number, "duplicate temporal edge " + to_string(e));
        }
        edges.push_back(e);
      }
    } else {
      throw ParseError(l.number, "unknown record '" + kind + "'");
    }
  }
  if (!n) throw ParseError(last_line, "missing 'V' record");
  return at_line(last_line, [&] { return TemporalGraph(*n, std::move(edges), lifespan); });
}

void write_tg(std::ostream& out, const TemporalGraph& g) {
  Time max_t = 0;
  for (const auto& e : g.edges()) max_t = std::max(max_t, e.t);
  if (g.lifespan() != max_t) out << "T " << g.lifespan() << '\n';
  out << "V " << g.vertex_count() << '\n';
  // One line per endpoint pair, times ascending.
  std::map<std::pair<VertexId, VertexId>, std::vector<Time>> labels;
  for (const auto& e : g.edges()) labels[{e.u, e.v}].push_back(e.t);
  for (auto& [pair, times] : labels) {
    std::sort(times.begin(), times.end());
    out << "E " << pair.first << ' ' << pair.second;
    for (const auto t : times) out << ' ' << t;
    out << '\n';
  }
}

std::vector<TemporalEdge> parse_candidates(std::istream& in) {
  std::vector<TemporalEdge> out;
  for (const auto& l : read_lines(in)) {
    if (l.tokens[0] != "E") throw ParseError(l.number, "unknown record '" + l.tokens[0] + "'");
    expect_arity(l, 4, 4, "E");
    const auto u = parse_int<VertexId>(l.tokens[1], l.number, "vertex");
    const auto v = parse_int<VertexId>(l.tokens[2], l.number, "vertex");
    const auto t = parse_int<Time>(l.tokens[3], l.number, "time");
    out.push_back(at_line(l.number, [&] { return TemporalEdge::make(u, v, t); }));
  }
  return out;
}

void write_candidates(std::ostream& out, const std::vector<TemporalEdge>& edges) {
  for (const auto& e : edges) out << "E " << e.u << ' ' << e.v << ' ' << e.t << '\n';
}

BinaryMatrix parse_matrix(std::istream& in) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw ParseError(0, "empty matrix file");
  const auto& head = lines.front();
  expect_arity(head, 2, 2, "<rows> <cols>");
  const auto rows = parse_count(head.tokens[0], head.number, "row count");
  const auto cols = parse_count(head.tokens[1], head.number, "column count");
  if (lines.size() - 1 != rows) {
    throw ParseError(lines.back().number, "expected " + std::to_string(rows) + " rows, found " +
                                              std::to_string(lines.size() - 1));
  }
  BinaryMatrix b(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& l = lines[i + 1];
    if (l.tokens.size() != cols) {
      throw ParseError(l.number, "expected " + std::to_string(cols) + " entries");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const auto& tok = l.tokens[j];
      if (tok != "0" && tok != "1") throw ParseError(l.number, "entry '" + tok + "' is not 0/1");
      b.set(i, j, tok == "1");
    }
  }
  return b;
}

void write_matrix(std::ostream& out, const BinaryMatrix& b) {
  out << b.rows() << ' ' << b.cols() << '\n';
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) out << (j ? " " : "") << (b.at(i, j) ? 1 : 0);
    out << '\n';
  }
}

StaticGraphInstance parse_static_graph(std::istream& in) {
  StaticGraphInstance g;
  bool has_v = false;
  std::size_t last_line = 0;
  for (const auto& l : read_lines(in)) {
    last_line = l.number;
    if (l.tokens[0] == "V") {
      expect_arity(l, 2, 2, "V");
      if (has_v) throw ParseError(l.number, "repeated 'V' record");
      g.n = parse_count(l.tokens[1], l.number, "vertex count");
      has_v = true;
    } else if (l.tokens[0] == "E") {
      expect_arity(l, 3, 3, "E");
      if (!has_v) throw ParseError(l.number, "'E' before 'V'");
      g.edges.emplace_back(parse_vertex(l.tokens[1], g.n, l.number),
                           parse_vertex(l.tokens[2], g.n, l.number));
      at_line(l.number, [&] { validate(g); return 0; });
    } else {
      throw ParseError(l.number, "unknown record '" + l.tokens[0] + "'");
    }
  }
  if (!has_v) throw ParseError(last_line, "missing 'V' record");
  return g;
}

SetSystemInstance parse_set_system(std::istream& in) {
  SetSystemInstance s;
  std::optional<std::size_t> universe;
  std::size_t largest = 0;
  bool any_element = false;
  for (const auto& l : read_lines(in)) {
    if (l.tokens[0] == "U") {
      expect_arity(l, 2, 2, "U");
      if (universe || !s.sets.empty()) throw ParseError(l.number, "'U' must come first");
      universe = parse_count(l.tokens[1], l.number, "universe size");
    } else if (l.tokens[0] == "S") {
      if (l.tokens.size() < 2 || l.tokens[1].back() != ':') {
        throw ParseError(l.number, "expected 'S <i>: <elements>'");
      }
      const auto index = parse_count(l.tokens[1].substr(0, l.tokens[1].size() - 1), l.number, "set index");
      if (index != s.sets.size()) {
        throw ParseError(l.number, "sets must be numbered 0, 1, ... in order");
      }
      std::vector<std::size_t> set;
      for (std::size_t k = 2; k < l.tokens.size(); ++k) {
        const auto e = parse_count(l.tokens[k], l.number, "element");
        if (universe && e >= *universe) throw ParseError(l.number, "element outside the universe");
        largest = std::max(largest, e);
        any_element = true;
        set.push_back(e);
      }
      s.sets.push_back(std::move(set));
    } else {
      throw ParseError(l.number, "unknown record '" + l.tokens[0] + "'");
    }
  }
  s.universe = universe ? *universe : (any_element ? largest + 1 : 0);
  return s;
}

CnfInstance parse_dimacs(std::istream& in) {
  CnfInstance f;
  std::optional<std::size_t> declared_clauses;
  std::vector<int> pending;
  std::size_t pending_line = 0;
  std::string text;
  for (std::size_t number = 1; std::getline(in, text); ++number) {
    std::istringstream ss(text);
    std::string tok;
    if (!(ss >> tok) || tok == "c" || tok[0] == '#' || tok == "%") continue;
    if (tok == "p") {
      std::string fmt, vars, clauses;
      if (!(ss >> fmt >> vars >> clauses) || fmt != "cnf") {
        throw ParseError(number, "expected 'p cnf <vars> <clauses>'");
      }
      if (declared_clauses) throw ParseError(number, "repeated problem line");
      f.variables = parse_count(vars, number, "variable count");
      declared_clauses = parse_count(clauses, number, "clause count");
      continue;
    }
    if (!declared_clauses) throw ParseError(number, "clause before the problem line");
    do {
      const int lit = parse_int<int>(tok, number, "literal");
      if (lit == 0) {
        if (pending.size() != 3) {
          throw ParseError(number, "clause has " + std::to_string(pending.size()) +
                                       " literals, expected 3");
        }
        f.clauses.push_back({pending[0], pending[1], pending[2]});
        at_line(number, [&] { validate(f); return 0; });
        pending.clear();
      } else {
        if (pending.empty()) pending_line = number;
        pending.push_back(lit);
      }
    } while (ss >> tok);
  }
  if (!pending.empty()) throw ParseError(pending_line, "clause not terminated by 0");
  if (!declared_clauses) throw ParseError(0, "missing problem line");
  if (f.clauses.size() != *declared_clauses) {
    throw ParseError(0, "problem line declares " + std::to_string(*declared_clauses) +
                            " clauses, found " + std::to_string(f.clauses.size()));
  }
  return f;
}

// ---------------------------------------------------------------------------------------
// JSON

json to_json(const TemporalEdge& e) { return {{"u", e.u}, {"v", e.v}, {"t", e.t}}; }

json to_json(const TemporalGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back(to_json(e));
  return {{"n", g.vertex_count()}, {"lifespan", g.lifespan()}, {"edges", edges}};
}

TemporalGraph graph_from_json(const json& j) {
  std::vector<TemporalEdge> edges;
  for (const auto& e : j.at("edges")) {
    edges.push_back(TemporalEdge::make(e.at("u").get<VertexId>(), e.at("v").get<VertexId>(),
                                       e.at("t").get<Time>()));
  }
  return TemporalGraph(j.at("n").get<std::size_t>(), std::move(edges), j.at("lifespan").get<Time>());
}

json to_json(const Journey& j) {
  json hops = json::array();
  for (const auto& h : j.hops) hops.push_back({{"from", h.from}, {"to", h.to}, {"t", h.time}});
  return {{"source", j.source}, {"target", j.target()}, {"hops", hops}};
}

json solution_json(const AugmentationProblem& p, const SolveResult& r) {
  json out = {{"schema", 1},
              {"feasible", r.status == SolveStatus::Optimal},
              {"status", to_string(r.status)},
              {"model", to_string(p.cost_model)},
              {"semantics", to_string(p.semantics)}};
  if (r.solution) {
    json selected = json::array();
    for (const auto& e : r.solution->selected) selected.push_back(to_json(e));
    out["cost"] = r.solution->cost;
    out["selected"] = selected;
  } else {
    out["cost"] = nullptr;
    out["selected"] = json::array();
  }
  if (p.budget) out["budget"] = *p.budget;
  return out;
}

json octo_json(const OctoResult& r) {
  json seq = json::array();
  for (const auto& op : r.sequence) seq.push_back({{"axis", axis_name(op.axis)}, {"i", op.i}, {"j", op.j}});
  json out = {{"schema", 1},
              {"feasible", r.status == OctoStatus::Solved},
              {"status", to_string(r.status)},
              {"sequence", seq},
              {"row_groups", r.row_groups},
              {"col_groups", r.col_groups}};
  if (r.status == OctoStatus::Solved || r.status == OctoStatus::BudgetExceeded) {
    out["min_combinations"] = r.min_combinations;
  } else {
    out["min_combinations"] = nullptr;
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// Expansion export

namespace {

const char* arc_kind_name(ExpansionArc::Kind k) {
  switch (k) {
    case ExpansionArc::Kind::Wait: return "wait";
    case ExpansionArc::Kind::Enter: return "enter";
    case ExpansionArc::Kind::Gate: return "gate";
    case ExpansionArc::Kind::Exit: return "exit";
    case ExpansionArc::Kind::Gray: return "gray";
  }
  return "?";
}

/// Double-quoted DOT identifier starting at s[pos]; advances pos past the closing quote.
std::string read_quoted(const std::string& s, std::size_t& pos, std::size_t line) {
  if (pos >= s.size() || s[pos] != '"') throw ParseError(line, "expected a quoted identifier");
  std::string out;
  for (++pos; pos < s.size() && s[pos] != '"'; ++pos) {
    if (s[pos] == '\\' && pos + 1 < s.size()) ++pos;
    out += s[pos];
  }
  if (pos >= s.size()) throw ParseError(line, "unterminated string");
  ++pos;
  return out;
}

void skip_space(const std::string& s, std::size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

/// Parses `[key=value, key="value"]` into a map.
std::map<std::string, std::string> read_attributes(const std::string& s, std::size_t& pos,
                                                   std::size_t line) {
  std::map<std::string, std::string> attrs;
  skip_space(s, pos);
  if (pos >= s.size() || s[pos] != '[') return attrs;
  ++pos;
  while (true) {
    skip_space(s, pos);
    if (pos < s.size() && s[pos] == ']') {
      ++pos;
      return attrs;
    }
    std::string key;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) key += s[pos++];
    skip_space(s, pos);
    if (key.empty() || pos >= s.size() || s[pos] != '=') throw ParseError(line, "malformed attribute list");
    ++pos;
    skip_space(s, pos);
    std::string value;
    if (pos < s.size() && s[pos] == '"') {
      value = read_quoted(s, pos, line);
    } else {
      while (pos < s.size() && s[pos] != ',' && s[pos] != ']' &&
             !std::isspace(static_cast<unsigned char>(s[pos]))) {
        value += s[pos++];
      }
    }
    attrs[key] = value;
    skip_space(s, pos);
    if (pos < s.size() && s[pos] == ',') ++pos;
  }
}

}  // namespace

ExpansionDump dump_expansion(const ExpansionGraph& exp, const std::vector<std::int64_t>& weights) {
  if (!weights.empty() && weights.size() != exp.edges().size()) {
    throw ContractError("one weight per temporal edge expected");
  }
  ExpansionDump d;
  for (std::size_t i = 0; i < exp.nodes().size(); ++i) d.nodes.push_back(exp.label(i));
  for (const auto& a : exp.arcs()) {
    std::int64_t w = a.weight;
    if (!weights.empty() && a.kind == ExpansionArc::Kind::Gate) w = weights[exp.nodes()[a.from].edge];
    d.arcs.push_back({a.from, a.to, w, arc_kind_name(a.kind)});
  }
  return d;
}

std::string to_dot(const ExpansionDump& d) {
  const auto gray = static_cast<std::size_t>(
      std::count_if(d.arcs.begin(), d.arcs.end(), [](const auto& a) { return a.kind == "gray"; }));
  std::ostringstream out;
  out << "// nodes " << d.nodes.size() << ", arcs " << d.arcs.size() << " (gray " << gray << ")\n";
  out << "digraph expansion {\n";
  for (std::size_t i = 0; i < d.nodes.size(); ++i) out << "  \"" << d.nodes[i] << "\";\n";
  for (const auto& a : d.arcs) {
    out << "  \"" << d.nodes[a.from] << "\" -> \"" << d.nodes[a.to] << "\" [weight=" << a.weight
        << ", kind=" << a.kind << "];\n";
  }
  out << "}\n";
  return out.str();
}

ExpansionDump parse_dot(std::istream& in) {
  ExpansionDump d;
  std::map<std::string, std::size_t> index;
  auto node = [&](const std::string& label) {
    const auto [it, fresh] = index.emplace(label, d.nodes.size());
    if (fresh) d.nodes.push_back(label);
    return it->second;
  };
  std::string text;
  bool opened = false;
  bool closed = false;
  for (std::size_t number = 1; std::getline(in, text); ++number) {
    std::size_t pos = 0;
    skip_space(text, pos);
    if (pos == text.size() || text.compare(pos, 2, "//") == 0) continue;
    if (!opened) {
      if (text.compare(pos, 7, "digraph") != 0 || text.find('{') == std::string::npos) {
        throw ParseError(number, "expected 'digraph <name> {'");
      }
      opened = true;
      continue;
    }
    if (text[pos] == '}') {
      closed = true;
      continue;
    }
    if (closed) throw ParseError(number, "content after the closing brace");
    const auto from = read_quoted(text, pos, number);
    skip_space(text, pos);
    if (text.compare(pos, 2, "->") != 0) {
      node(from);
      continue;
    }
    pos += 2;
    skip_space(text, pos);
    const auto to = read_quoted(text, pos, number);
    const auto attrs = read_attributes(text, pos, number);
    ExpansionDump::Arc arc;
    arc.from = node(from);
    arc.to = node(to);
    if (const auto w = attrs.find("weight"); w != attrs.end()) {
      arc.weight = parse_int<std::int64_t>(w->second, number, "weight");
    }
    if (const auto k = attrs.find("kind"); k != attrs.end()) arc.kind = k->second;
    d.arcs.push_back(arc);
  }
  if (!opened || !closed) throw ParseError(0, "incomplete digraph");
  return d;
}

json to_json(const ExpansionDump& d) {
  json arcs = json::array();
  for (const auto& a : d.arcs) {
    arcs.push_back({{"from", a.from}, {"to", a.to}, {"weight", a.weight}, {"kind", a.kind}});
  }
  return {{"schema", 1}, {"nodes", d.nodes}, {"arcs", arcs}};
}

ExpansionDump dump_from_json(const json& j) {
  ExpansionDump d;
  d.nodes = j.at("nodes").get<std::vector<std::string>>();
  for (const auto& a : j.at("arcs")) {
    d.arcs.push_back({a.at("from").get<std::size_t>(), a.at("to").get<std::size_t>(),
                      a.at("weight").get<std::int64_t>(), a.at("kind").get<std::string>()});
    if (d.arcs.back().from >= d.nodes.size() || d.arcs.back().to >= d.nodes.size()) {
      throw ParseError(0, "arc endpoint outside the node list");
    }
  }
  return d;
}

// ---------------------------------------------------------------------------------------
// Manifest

Semantics parse_semantics(const std::string& s) {
  if (s == "strict") return Semantics::Strict;
  if (s == "nonstrict" || s == "non-strict") return Semantics::NonStrict;
  throw ParseError(0, "unknown semantics '" + s + "'");
}

CostModel parse_cost_model(const std::string& s) {
  if (s == "edge") return CostModel::PerTemporalEdge;
  if (s == "group") return CostModel::EdgeByEdge;
  throw ParseError(0, "unknown cost model '" + s + "'");
}

Manifest manifest_from_json(const json& j) {
  try {
    Manifest m;
    if (j.contains("schema") && j.at("schema").get<int>() != 1) {
      throw ParseError(0, "unsupported manifest schema");
    }
    m.graph = j.value("graph", "");
    m.candidates = j.value("candidates", "");
    m.matrix = j.value("matrix", "");
    if (m.graph.empty() && m.matrix.empty()) throw ParseError(0, "manifest names no graph or matrix");
    if (j.contains("semantics")) m.semantics = parse_semantics(j.at("semantics").get<std::string>());
    if (j.contains("cost_model")) m.cost_model = parse_cost_model(j.at("cost_model").get<std::string>());
    if (j.contains("budget") && !j.at("budget").is_null()) m.budget = j.at("budget").get<std::size_t>();
    if (j.contains("requirement")) {
      const auto& r = j.at("requirement");
      const auto kind = r.at("kind").get<std::string>();
      if (kind == "all") {
        m.requirement = AllPairs{};
      } else if (kind == "source") {
        m.requirement = SingleSource{r.at("source").get<VertexId>()};
      } else if (kind == "pairs") {
        std::vector<std::pair<VertexId, VertexId>> pairs;
        for (const auto& p : r.at("pairs")) pairs.emplace_back(p.at(0).get<VertexId>(), p.at(1).get<VertexId>());
        std::optional<std::size_t> demand;
        if (r.contains("demand")) demand = r.at("demand").get<std::size_t>();
        m.requirement = make_pair_demands(std::move(pairs), demand);
      } else {
        throw ParseError(0, "unknown requirement kind '" + kind + "'");
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("malformed manifest: ") + e.what());
  }
}

json to_json(const Manifest& m) {
  json out = {{"schema", 1}};
  if (!m.matrix.empty()) {
    out["matrix"] = m.matrix;
  } else {
    out["graph"] = m.graph;
    if (!m.candidates.empty()) out["candidates"] = m.candidates;
    json r;
    if (std::holds_alternative<AllPairs>(m.requirement)) {
      r = {{"kind", "all"}};
    } else if (const auto* s = std::get_if<SingleSource>(&m.requirement)) {
      r = {{"kind", "source"}, {"source", s->source}};
    } else {
      const auto& d = std::get<PairDemands>(m.requirement);
      json pairs = json::array();
      for (const auto& [u, v] : d.pairs) pairs.push_back({u, v});
      r = {{"kind", "pairs"}, {"pairs", pairs}, {"demand", d.demand}};
    }
    out["requirement"] = r;
    out["semantics"] = to_string(m.semantics);
    out["cost_model"] = to_string(m.cost_model);
  }
  out["budget"] = m.budget ? json(*m.budget) : json(nullptr);
  return out;
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(0, path.string() + ": " + e.what());
  }
  return manifest_from_json(j);
}

AugmentationProblem load_problem(const Manifest& m, const std::filesystem::path& base_dir) {
  if (m.graph.empty()) throw ContractError("manifest has no graph");
  auto g = read_file(base_dir / m.graph, parse_tg);
  std::vector<TemporalEdge> candidates;
  if (!m.candidates.empty()) candidates = read_file(base_dir / m.candidates, parse_candidates);
  return make_problem(std::move(g), std::move(candidates), m.requirement, m.semantics,
                      m.cost_model, m.budget);
}

}  // namespace tca::io
