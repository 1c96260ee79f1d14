#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tca/io.hpp"

namespace tca::cli {
namespace {

namespace fs = std::filesystem;
using io::json;

/// Candidate-count limit up to which `solve --engine auto` re-solves with a second engine.
constexpr std::size_t kCrossCheckLimit = 16;

struct Options {
  std::string input;
  std::string semantics;
  std::string cost;
  std::optional<std::size_t> budget;
  std::string engine = "auto";
  unsigned threads = 1;
  std::string format;
  bool cross_check = true;
  // reduce
  std::string kind;
  std::string out_dir;
  std::string mode = "simple";
};

std::string set_text(const std::vector<VertexId>& part) {
  std::string s = "{";
  for (std::size_t k = 0; k < part.size(); ++k) s += (k ? "," : "") + std::to_string(part[k]);
  return s + "}";
}

void apply_overrides(io::Manifest& m, const Options& o) {
  if (!o.semantics.empty()) m.semantics = io::parse_semantics(o.semantics);
  if (!o.cost.empty()) m.cost_model = io::parse_cost_model(o.cost);
  if (o.budget) m.budget = o.budget;
}

// ---------------------------------------------------------------------------------------

int cmd_check(const Options& o, std::ostream& out) {
  const auto g = io::read_file(o.input, io::parse_tg);
  const auto sem = o.semantics.empty() ? Semantics::NonStrict : io::parse_semantics(o.semantics);
  const bool connected = is_temporally_connected(g, sem);
  std::vector<SnapshotComponents> comps;
  for (Time t = 1; t <= g.lifespan(); ++t) comps.push_back(snapshot_components(g, t));

  if (o.format == "text") {
    out << "connected: " << (connected ? "true" : "false") << '\n'
        << "semantics: " << to_string(sem) << '\n'
        << "lifespan: " << g.lifespan() << '\n';
    for (const auto& c : comps) {
      out << "t=" << c.time << ':';
      for (const auto& part : c.parts) out << ' ' << set_text(part);
      out << '\n';
    }
  } else {
    json components = json::array();
    for (const auto& c : comps) components.push_back(c.parts);
    out << json{{"schema", 1},
                {"connected", connected},
                {"semantics", to_string(sem)},
                {"lifespan", g.lifespan()},
                {"vertices", g.vertex_count()},
                {"components", components}}
               .dump(2)
        << '\n';
  }
  return connected ? kSuccess : kNegative;
}

// ---------------------------------------------------------------------------------------

int solve_matrix(const io::Manifest& m, const fs::path& dir, const Options& o, std::ostream& out) {
  const auto b = io::read_file(dir / m.matrix, io::parse_matrix);
  const auto r = solve_octo(b, m.budget);
  if (r.status == OctoStatus::Solved && !replay(b, r.sequence).is_all_ones()) {
    throw std::logic_error("OCTO sequence does not produce a one-filled matrix");
  }
  if (o.format == "text") {
    out << "status " << to_string(r.status) << '\n';
    if (r.status == OctoStatus::Solved) out << "min_combinations " << r.min_combinations << '\n';
    for (const auto& op : r.sequence) out << to_string(op.axis) << ' ' << op.i << ' ' << op.j << '\n';
  } else {
    out << io::octo_json(r).dump(2) << '\n';
  }
  return r.status == OctoStatus::Solved ? kSuccess : kNegative;
}

/// The non-strict (1+1)-TCA shape: lifespan-1 base, All, every time-2 pair a candidate.
bool is_one_plus_one(const AugmentationProblem& p) {
  if (p.semantics != Semantics::NonStrict || p.base.lifespan() != 1 ||
      !std::holds_alternative<AllPairs>(p.requirement) || p.base.vertex_count() == 0) {
    return false;
  }
  return p.candidates == one_plus_one_problem(p.base).candidates;
}

SolveResult solve_one_plus_one_result(const AugmentationProblem& p) {
  Solution s;
  s.selected = solve_one_plus_one(p.base);
  s.cost = selection_cost(p, s.selected);
  if (p.budget && s.cost > *p.budget) return {SolveStatus::BudgetExceeded, std::nullopt};
  s.certificate = certify(p, s.selected);
  return {SolveStatus::Optimal, std::move(s)};
}

bool expansion_applies(const AugmentationProblem& p) {
  return std::holds_alternative<PairDemands>(p.requirement) &&
         p.cost_model == CostModel::PerTemporalEdge;
}

std::optional<std::size_t> cost_of(const SolveResult& r) {
  return r.solution ? std::optional(r.solution->cost) : std::nullopt;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const fs::path manifest_path(o.input);
  auto m = io::read_manifest(manifest_path);
  apply_overrides(m, o);
  const auto dir = manifest_path.parent_path();
  if (!m.matrix.empty()) return solve_matrix(m, dir, o, out);

  const auto p = io::load_problem(m, dir);
  ExactOptions exact;
  exact.threads = std::max(1u, o.threads);

  SolveResult r;
  std::string engine = o.engine;
  std::optional<bool> agreement;
  if (o.engine == "expansion") {
    if (!expansion_applies(p)) {
      err << "error: the expansion engine needs a pair requirement and --cost edge\n";
      return kInputError;
    }
    r = solve_tpca_via_expansion(p);
  } else if (o.engine == "subset") {
    r = solve_exact(p, exact);
  } else if (is_one_plus_one(p)) {
    engine = "one-plus-one";
    r = solve_one_plus_one_result(p);
    if (o.cross_check && p.candidates.size() <= kCrossCheckLimit) {
      agreement = cost_of(solve_exact(p, exact)) == cost_of(r);
    }
  } else {
    engine = "subset";
    r = solve_exact(p, exact);
    if (o.cross_check && expansion_applies(p) && p.candidates.size() <= kCrossCheckLimit) {
      const auto other = solve_tpca_via_expansion(p);
      agreement = other.status == r.status && cost_of(other) == cost_of(r);
    }
  }
  if (agreement == false) {
    err << "error: engines disagree on this instance\n";
    return kInputError;
  }
  if (r.solution && !verify_solution(p, r.solution->selected)) {
    throw std::logic_error("solver returned a set that does not satisfy the requirement");
  }

  if (o.format == "text") {
    out << "status " << to_string(r.status) << '\n';
    if (r.solution) {
      out << "cost " << r.solution->cost << '\n';
      for (const auto& e : r.solution->selected) out << "E " << e.u << ' ' << e.v << ' ' << e.t << '\n';
    }
  } else {
    auto j = io::solution_json(p, r);
    j["engine"] = engine;
    if (agreement) j["cross_checked"] = true;
    out << j.dump(2) << '\n';
  }
  return r.status == SolveStatus::Optimal ? kSuccess : kNegative;
}

// ---------------------------------------------------------------------------------------

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

template <class Writer, class Value>
std::string render(Writer w, const Value& v) {
  std::ostringstream ss;
  w(ss, v);
  return ss.str();
}

/// Writes instance.tg, instance.cand and manifest.json; returns the summary.
json write_bundle(const fs::path& dir, const AugmentationProblem& p, const std::string& kind) {
  fs::create_directories(dir);
  write_text(dir / "instance.tg", render(io::write_tg, p.base));
  write_text(dir / "instance.cand", render(io::write_candidates, p.candidates));
  io::Manifest m;
  m.graph = "instance.tg";
  m.candidates = "instance.cand";
  m.requirement = p.requirement;
  m.semantics = p.semantics;
  m.cost_model = p.cost_model;
  m.budget = p.budget;
  write_text(dir / "manifest.json", io::to_json(m).dump(2) + "\n");
  json summary = {{"schema", 1},
                  {"kind", kind},
                  {"vertices", p.base.vertex_count()},
                  {"edges", p.base.edge_count()},
                  {"candidates", p.candidates.size()},
                  {"budget", p.budget ? json(*p.budget) : json(nullptr)},
                  {"manifest", (dir / "manifest.json").string()}};
  if (const auto* d = std::get_if<PairDemands>(&p.requirement)) summary["pairs"] = d->pairs.size();
  return summary;
}

int cmd_reduce(const Options& o, std::ostream& out, std::ostream& err) {
  const CandidateMode mode = o.mode == "unrestricted" ? CandidateMode::Unrestricted : CandidateMode::Simple;
  const bool needs_budget = o.kind != "3sat";
  if (needs_budget && !o.budget) {
    err << "error: --budget is required for " << o.kind << '\n';
    return kInputError;
  }
  const fs::path dir(o.out_dir);
  json summary;
  if (o.kind == "ds") {
    auto g = io::read_file(o.input, io::parse_static_graph);
    g.budget = *o.budget;
    summary = write_bundle(dir, reduce_dominating_set(g, mode).problem, o.kind);
  } else if (o.kind == "hs") {
    auto s = io::read_file(o.input, io::parse_set_system);
    s.budget = *o.budget;
    summary = write_bundle(dir, reduce_hitting_set(s, mode).problem, o.kind);
  } else if (o.kind == "3sat") {
    const auto f = io::read_file(o.input, io::parse_dimacs);
    summary = write_bundle(dir, reduce_3sat(f).problem, o.kind);
  } else {
    auto s = io::read_file(o.input, io::parse_set_system);
    s.budget = *o.budget;
    const auto r = reduce_dsc(s);
    if (!r.budget) {
      err << "K = " << s.budget << " exceeds the " << s.sets.size()
          << " sets: no partition into K covers exists\n";
      return kNegative;
    }
    fs::create_directories(dir);
    write_text(dir / "instance.matrix", render(io::write_matrix, r.matrix));
    io::Manifest m;
    m.matrix = "instance.matrix";
    m.budget = r.budget;
    write_text(dir / "manifest.json", io::to_json(m).dump(2) + "\n");
    summary = {{"schema", 1},
               {"kind", o.kind},
               {"rows", r.matrix.rows()},
               {"cols", r.matrix.cols()},
               {"budget", *r.budget},
               {"manifest", (dir / "manifest.json").string()}};
  }
  if (o.format == "text") {
    for (const auto& [key, value] : summary.items()) {
      if (key != "schema") out << key << ' ' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
  } else {
    out << summary.dump(2) << '\n';
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------------------

int cmd_expand(const Options& o, std::ostream& out) {
  const fs::path manifest_path(o.input);
  auto m = io::read_manifest(manifest_path);
  apply_overrides(m, o);
  if (!m.matrix.empty()) throw ParseError(0, "expand needs a graph manifest, not a matrix");
  const auto p = io::load_problem(m, manifest_path.parent_path());

  TGSteinerInstance inst;
  inst.graph = augment(p.base, p.candidates);
  for (const auto& e : inst.graph.edges()) inst.weights.push_back(p.base.contains(e) ? 0 : 1);
  if (const auto* d = std::get_if<PairDemands>(&p.requirement)) {
    inst.pairs = d->pairs;
    inst.demand = d->demand;
  }
  const auto exp = build_expansion(inst, p.semantics);
  const auto dump = io::dump_expansion(exp.graph);

  if (o.format == "json") {
    auto j = io::to_json(dump);
    json pairs = json::array();
    for (const auto& [s, t] : exp.pairs) pairs.push_back({exp.graph.label(s), exp.graph.label(t)});
    j["pairs"] = pairs;
    j["semantics"] = to_string(p.semantics);
    out << j.dump(2) << '\n';
  } else {
    out << io::to_dot(dump);
  }
  return kSuccess;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal connectivity augmentation"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> semantics{"strict", "nonstrict"};
  auto add_semantics = [&](CLI::App* sub) {
    sub->add_option("--semantics", o.semantics, "Journey semantics (default nonstrict)")
        ->check(CLI::IsMember(semantics));
  };

  auto* check = app.add_subcommand("check", "Report temporal connectivity of a .tg graph");
  check->add_option("graph", o.input, "Temporal graph file")->required();
  add_semantics(check);
  check->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  auto* solve = app.add_subcommand("solve", "Solve the augmentation (or OCTO) problem of a manifest");
  solve->add_option("manifest", o.input, "Problem manifest (JSON)")->required();
  add_semantics(solve);
  solve->add_option("--cost", o.cost, "Cost model")->check(CLI::IsMember({"edge", "group"}));
  solve->add_option("--budget", o.budget, "Budget K");
  solve->add_option("--engine", o.engine, "Solver engine")
      ->check(CLI::IsMember({"subset", "expansion", "auto"}));
  solve->add_option("--threads", o.threads, "Worker threads for subset search")->check(CLI::PositiveNumber);
  solve->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  solve->add_flag("--cross-check,!--no-cross-check", o.cross_check,
                  "In auto mode, re-solve small instances with a second engine");

  auto* reduce = app.add_subcommand("reduce", "Generate an instance from a hard source problem");
  reduce->add_option("kind", o.kind, "Source problem")->required()->check(CLI::IsMember({"ds", "hs", "dsc", "3sat"}));
  reduce->add_option("source", o.input, "Source instance file")->required();
  reduce->add_option("--budget", o.budget, "Source budget K");
  reduce->add_option("--out", o.out_dir, "Output directory")->required();
  reduce->add_option("--mode", o.mode, "Candidate set")->check(CLI::IsMember({"simple", "unrestricted"}));
  reduce->add_option("--format", o.format, "Summary format")->check(CLI::IsMember({"json", "text"}));

  auto* expand = app.add_subcommand("expand", "Export the temporal expansion of a manifest");
  expand->add_option("manifest", o.input, "Problem manifest (JSON)")->required();
  add_semantics(expand);
  expand->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"dot", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (solve->parsed()) return cmd_solve(o, out, err);
    if (reduce->parsed()) return cmd_reduce(o, out, err);
    return cmd_expand(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const InvalidCandidateError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

}  // namespace tca::cli
