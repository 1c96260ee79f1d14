#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tca/augmentation.hpp"
#include "tca/error.hpp"
#include "tca/expansion.hpp"
#include "tca/octo.hpp"
#include "tca/reductions.hpp"
#include "tca/temporal_graph.hpp"

// Text formats. Every parser skips blank lines and '#' comments and throws ParseError
// carrying the 1-based line number.
//
//   .tg      T <lifespan> (optional) | V <n> | E <u> <v> <t1> [<t2> ...]
//   .cand    E <u> <v> <t>
//   matrix   <rows> <cols>, then one line of 0/1 per row
//   graph    V <n> | E <u> <v>              (static source graph for Dominating Set)
//   sets     U <n> (optional) | S <i>: <e> <e> ...
//   cnf      DIMACS: p cnf <vars> <clauses>, clauses terminated by 0
namespace tca::io {

using nlohmann::json;

TemporalGraph parse_tg(std::istream& in);
void write_tg(std::ostream& out, const TemporalGraph& g);

std::vector<TemporalEdge> parse_candidates(std::istream& in);
void write_candidates(std::ostream& out, const std::vector<TemporalEdge>& edges);

BinaryMatrix parse_matrix(std::istream& in);
void write_matrix(std::ostream& out, const BinaryMatrix& b);

/// Budget is left at 0; callers set it.
StaticGraphInstance parse_static_graph(std::istream& in);
/// Without a `U` line the universe is 0..(largest element).
SetSystemInstance parse_set_system(std::istream& in);
CnfInstance parse_dimacs(std::istream& in);

/// Reads a whole file through one of the parsers above; ParseError messages gain the path.
template <class F>
auto read_file(const std::filesystem::path& path, F parser) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  try {
    return parser(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.message(), path.string());
  }
}

// ---------------------------------------------------------------------------------------
// JSON

json to_json(const TemporalEdge& e);
json to_json(const TemporalGraph& g);
TemporalGraph graph_from_json(const json& j);
json to_json(const Journey& j);

/// {schema, feasible, status, cost, selected, model, semantics}
json solution_json(const AugmentationProblem& p, const SolveResult& r);
/// {schema, feasible, status, min_combinations, sequence, row_groups, col_groups}
json octo_json(const OctoResult& r);

// ---------------------------------------------------------------------------------------
// Expansion export

/// Labelled, format-neutral form of an expansion graph.
struct ExpansionDump {
  struct Arc {
    std::size_t from = 0;
    std::size_t to = 0;
    std::int64_t weight = 0;
    std::string kind;
    friend bool operator==(const Arc&, const Arc&) = default;
  };
  std::vector<std::string> nodes;
  std::vector<Arc> arcs;
  friend bool operator==(const ExpansionDump&, const ExpansionDump&) = default;
};

/// Arc weights are taken from `weights` (per temporal edge, on gate arcs) when given.
ExpansionDump dump_expansion(const ExpansionGraph& exp,
                             const std::vector<std::int64_t>& weights = {});
std::string to_dot(const ExpansionDump& d);
ExpansionDump parse_dot(std::istream& in);
json to_json(const ExpansionDump& d);
ExpansionDump dump_from_json(const json& j);

// ---------------------------------------------------------------------------------------
// Manifest

/// Problem description consumed by `tca solve` and `tca expand`. Paths are stored as written
/// and resolved against the manifest's directory.
struct Manifest {
  std::string graph;       // .tg
  std::string candidates;  // .cand; empty means no candidates
  std::string matrix;      // OCTO instance; replaces graph and candidates when set
  Requirement requirement = AllPairs{};
  Semantics semantics = Semantics::NonStrict;
  CostModel cost_model = CostModel::PerTemporalEdge;
  std::optional<std::size_t> budget;
};

Manifest manifest_from_json(const json& j);
json to_json(const Manifest& m);
Manifest read_manifest(const std::filesystem::path& path);

Semantics parse_semantics(const std::string& s);
CostModel parse_cost_model(const std::string& s);

/// Loads the graph and candidate files of a manifest into a checked problem.
AugmentationProblem load_problem(const Manifest& m, const std::filesystem::path& base_dir);

}  // namespace tca::io
