#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tca/temporal_graph.hpp"

namespace tca {

/// Dense 0/1 matrix. Rows index time-1 components and columns time-2 components when the
/// matrix comes from a graph.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols);
  /// Throws ContractError on ragged input or entries other than 0/1.
  static BinaryMatrix from_rows(const std::vector<std::vector<int>>& rows);
  static BinaryMatrix identity(std::size_t k);
  static BinaryMatrix ones(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, bool value);

  bool is_all_ones() const noexcept;
  bool has_zero_line() const noexcept;
  std::size_t count_ones() const noexcept;
  BinaryMatrix transposed() const;

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

enum class Axis { Rows, Cols };

const char* to_string(Axis a) noexcept;

/// One OR-combination in current (not original) indices: lines i and j are replaced by
/// their entrywise OR at position min(i, j); the other line is removed.
struct OrCombination {
  Axis axis = Axis::Rows;
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const OrCombination&, const OrCombination&) = default;
};

BinaryMatrix or_combine(const BinaryMatrix& b, Axis axis, std::size_t i, std::size_t j);
BinaryMatrix replay(const BinaryMatrix& b, const std::vector<OrCombination>& sequence);

enum class OctoStatus {
  Solved,          // minimum found (and within budget when one was given)
  Infeasible,      // no sequence reaches a one-filled matrix (all-zero input)
  BudgetExceeded,  // minimum is larger than the budget
  LimitExceeded,   // search aborted at the state limit
};

const char* to_string(OctoStatus s) noexcept;

struct OctoResult {
  OctoStatus status = OctoStatus::Infeasible;
  std::size_t min_combinations = 0;
  std::vector<OrCombination> sequence;  // replayable with or_combine, rows first
  /// Final grouping of the original lines (each group ascending, groups by first member).
  std::vector<std::vector<std::size_t>> row_groups;
  std::vector<std::vector<std::size_t>> col_groups;
};

struct OctoOptions {
  std::size_t max_states = 5'000'000;
};

/// Minimum number of OR-combinations turning b into a one-filled matrix.
///
/// Merges commute, so any sequence is described by a row partition and a column partition;
/// the result is one-filled iff every (row group, column group) block holds a 1. The solver
/// enumerates partitions of the shorter side and, for each, packs the other side into as many
/// disjoint covering groups as possible.
OctoResult solve_octo(const BinaryMatrix& b, std::optional<std::size_t> budget = std::nullopt,
                      const OctoOptions& options = {});

/// B[i][j] = 1 iff time-1 component i meets time-2 component j (canonical component order).
BinaryMatrix component_intersection_matrix(const TemporalGraph& g);

/// Simple lifespan-2 graph with one vertex per 1-entry: row-mates joined at time 1,
/// column-mates at time 2. Throws ContractError on a zero row or column.
TemporalGraph matrix_to_graph(const BinaryMatrix& b);

/// Temporal edges realizing the merges of a solved OCTO result on g's component matrix:
/// one time-1 edge per row merge and one time-2 edge per column merge, joining the smallest
/// vertices of the merged components.
std::vector<TemporalEdge> combinations_to_edges(const TemporalGraph& g, const OctoResult& r);

}  // namespace tca
