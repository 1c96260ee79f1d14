#include "tca/octo.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "tca/error.hpp"

namespace tca {

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BinaryMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ContractError("matrix rows have different lengths");
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows[i][j] != 0 && rows[i][j] != 1) throw ContractError("matrix entries must be 0 or 1");
      m.set(i, j, rows[i][j] == 1);
    }
  }
  return m;
}

BinaryMatrix BinaryMatrix::identity(std::size_t k) {
  BinaryMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m.set(i, i, true);
  return m;
}

BinaryMatrix BinaryMatrix::ones(std::size_t rows, std::size_t cols) {
  BinaryMatrix m(rows, cols);
  std::fill(m.data_.begin(), m.data_.end(), 1);
  return m;
}

bool BinaryMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw RangeError("matrix index out of range");
  return data_[i * cols_ + j] != 0;
}

void BinaryMatrix::set(std::size_t i, std::size_t j, bool value) {
  if (i >= rows_ || j >= cols_) throw RangeError("matrix index out of range");
  data_[i * cols_ + j] = value ? 1 : 0;
}

bool BinaryMatrix::is_all_ones() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](std::uint8_t x) { return x == 1; });
}

bool BinaryMatrix::has_zero_line() const noexcept {
  for (std::size_t i = 0; i < rows_; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < cols_; ++j) any = any || data_[i * cols_ + j];
    if (!any) return true;
  }
  for (std::size_t j = 0; j < cols_; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < rows_; ++i) any = any || data_[i * cols_ + j];
    if (!any) return true;
  }
  return false;
}

std::size_t BinaryMatrix::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), 1));
}

BinaryMatrix BinaryMatrix::transposed() const {
  BinaryMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

const char* to_string(Axis a) noexcept { return a == Axis::Rows ? "rows" : "cols"; }

const char* to_string(OctoStatus s) noexcept {
  switch (s) {
    case OctoStatus::Solved: return "solved";
    case OctoStatus::Infeasible: return "infeasible";
    case OctoStatus::BudgetExceeded: return "budget-exceeded";
    case OctoStatus::LimitExceeded: return "limit-exceeded";
  }
  return "unknown";
}

BinaryMatrix or_combine(const BinaryMatrix& b, Axis axis, std::size_t i, std::size_t j) {
  const std::size_t extent = axis == Axis::Rows ? b.rows() : b.cols();
  if (i >= extent || j >= extent) throw RangeError("OR-combination index out of range");
  if (i == j) throw ContractError("OR-combination needs two distinct lines");
  const std::size_t keep = std::min(i, j);
  const std::size_t drop = std::max(i, j);
  if (axis == Axis::Cols) return or_combine(b.transposed(), Axis::Rows, i, j).transposed();

  BinaryMatrix out(b.rows() - 1, b.cols());
  for (std::size_t r = 0, o = 0; r < b.rows(); ++r) {
    if (r == drop) continue;
    for (std::size_t c = 0; c < b.cols(); ++c) {
      bool value = b.at(r, c);
      if (r == keep) value = value || b.at(drop, c);
      out.set(o, c, value);
    }
    ++o;
  }
  return out;
}

BinaryMatrix replay(const BinaryMatrix& b, const std::vector<OrCombination>& sequence) {
  BinaryMatrix m = b;
  for (const auto& op : sequence) m = or_combine(m, op.axis, op.i, op.j);
  return m;
}

namespace {

class LimitReached {};

// Packs lines (given as bitmasks over `width` groups) into the largest number of disjoint
// groups whose OR is full. Memoized over the multiset of mask types.
class CoverPacker {
 public:
  CoverPacker(std::vector<std::uint64_t> masks, std::size_t width, std::size_t& budget)
      : masks_(std::move(masks)), budget_(budget) {
    full_ = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    for (const auto m : masks_) {
      if (m != 0 && m != full_ && std::find(types_.begin(), types_.end(), m) == types_.end()) {
        types_.push_back(m);
      }
    }
    std::sort(types_.begin(), types_.end());
  }

  /// Groups of line indices; every group covers, and uncovered leftovers join group 0.
  std::vector<std::vector<std::size_t>> pack() {
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::size_t> leftovers;
    std::map<std::uint64_t, std::vector<std::size_t>> by_type;
    for (std::size_t i = 0; i < masks_.size(); ++i) {
      if (masks_[i] == full_) {
        groups.push_back({i});
      } else if (masks_[i] == 0) {
        leftovers.push_back(i);
      } else {
        by_type[masks_[i]].push_back(i);
      }
    }
    Counts counts(types_.size(), 0);
    for (std::size_t k = 0; k < types_.size(); ++k) {
      counts[k] = static_cast<std::uint16_t>(by_type[types_[k]].size());
    }
    std::map<std::uint64_t, std::size_t> used;
    for (;;) {
      const auto cover = best_cover(counts);
      if (cover.empty()) break;
      std::vector<std::size_t> group;
      for (const std::size_t k : cover) {
        --counts[k];
        group.push_back(by_type[types_[k]][used[types_[k]]++]);
      }
      groups.push_back(std::move(group));
    }
    for (std::size_t k = 0; k < types_.size(); ++k) {
      const auto& lines = by_type[types_[k]];
      for (std::size_t r = used[types_[k]]; r < lines.size(); ++r) leftovers.push_back(lines[r]);
    }
    if (groups.empty()) return {};
    groups.front().insert(groups.front().end(), leftovers.begin(), leftovers.end());
    for (auto& g : groups) std::sort(g.begin(), g.end());
    std::sort(groups.begin(), groups.end());
    return groups;
  }

  std::size_t value() {
    std::size_t full_lines = 0;
    Counts counts(types_.size(), 0);
    for (const auto m : masks_) {
      if (m == full_) {
        ++full_lines;
      } else if (m != 0) {
        ++counts[std::lower_bound(types_.begin(), types_.end(), m) - types_.begin()];
      }
    }
    return full_lines + best(counts);
  }

 private:
  using Counts = std::vector<std::uint16_t>;

  std::size_t best(const Counts& counts) {
    if (auto it = memo_.find(counts); it != memo_.end()) return it->second.first;
    if (budget_ == 0) throw LimitReached{};
    --budget_;
    std::size_t value = 0;
    std::vector<std::size_t> choice;
    Counts work = counts;
    std::vector<std::size_t> cover;
    enumerate(work, 0, cover, [&](const std::vector<std::size_t>& c) {
      const std::size_t v = 1 + best(work);
      if (v > value) {
        value = v;
        choice = c;
      }
    });
    memo_.emplace(counts, std::make_pair(value, std::move(choice)));
    return value;
  }

  std::vector<std::size_t> best_cover(const Counts& counts) {
    best(counts);
    return memo_.at(counts).second;
  }

  // Builds covers by repeatedly branching on the types that hit the rarest uncovered group.
  template <typename F>
  void enumerate(Counts& counts, std::uint64_t covered, std::vector<std::size_t>& cover, F&& on_cover) {
    if (covered == full_) {
      on_cover(cover);
      return;
    }
    int rarest = -1;
    std::size_t rarest_count = SIZE_MAX;
    for (int bit = 0; bit < 64; ++bit) {
      if (!(full_ >> bit & 1) || (covered >> bit & 1)) continue;
      std::size_t c = 0;
      for (std::size_t k = 0; k < types_.size(); ++k)
        if (types_[k] >> bit & 1) c += counts[k];
      if (c < rarest_count) {
        rarest_count = c;
        rarest = bit;
      }
    }
    if (rarest_count == 0) return;
    for (std::size_t k = 0; k < types_.size(); ++k) {
      if (counts[k] == 0 || !(types_[k] >> rarest & 1)) continue;
      --counts[k];
      cover.push_back(k);
      enumerate(counts, covered | types_[k], cover, on_cover);
      cover.pop_back();
      ++counts[k];
    }
  }

  std::vector<std::uint64_t> masks_;
  std::vector<std::uint64_t> types_;
  std::uint64_t full_ = 0;
  std::size_t& budget_;
  std::map<Counts, std::pair<std::size_t, std::vector<std::size_t>>> memo_;
};

// Restricted-growth-string enumeration of set partitions of 0..k-1.
template <typename F>
void for_each_partition(std::size_t k, F&& visit) {
  std::vector<std::size_t> rgs(k, 0);
  std::vector<std::size_t> max_prefix(k, 0);
  for (;;) {
    if (!visit(rgs)) return;
    bool advanced = false;
    for (std::size_t i = k; i-- > 1;) {
      if (rgs[i] <= max_prefix[i - 1]) {
        ++rgs[i];
        max_prefix[i] = std::max(max_prefix[i - 1], rgs[i]);
        for (std::size_t j = i + 1; j < k; ++j) {
          rgs[j] = 0;
          max_prefix[j] = max_prefix[i];
        }
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

std::vector<std::vector<std::size_t>> groups_from_rgs(const std::vector<std::size_t>& rgs) {
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < rgs.size(); ++i) {
    if (rgs[i] >= groups.size()) groups.resize(rgs[i] + 1);
    groups[rgs[i]].push_back(i);
  }
  return groups;
}

std::vector<OrCombination> merges_for(Axis axis, std::size_t extent,
                                      const std::vector<std::vector<std::size_t>>& groups) {
  std::vector<std::size_t> current(extent);  // smallest original member of each current line
  for (std::size_t i = 0; i < extent; ++i) current[i] = i;
  std::vector<OrCombination> out;
  for (const auto& g : groups) {
    for (std::size_t k = 1; k < g.size(); ++k) {
      const auto pos = [&](std::size_t original) {
        return static_cast<std::size_t>(std::find(current.begin(), current.end(), original) -
                                        current.begin());
      };
      const std::size_t i = pos(g.front());
      const std::size_t j = pos(g[k]);
      out.push_back({axis, i, j});
      current.erase(current.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
    }
  }
  return out;
}

}  // namespace

OctoResult solve_octo(const BinaryMatrix& input, std::optional<std::size_t> budget,
                      const OctoOptions& options) {
  if (input.rows() == 0 || input.cols() == 0) throw ContractError("OCTO needs a non-empty matrix");
  OctoResult result;
  if (input.count_ones() == 0) {
    result.status = OctoStatus::Infeasible;
    return result;
  }

  // Enumerate partitions of the shorter side (columns of `m`), pack the rows of `m`.
  const bool flip = input.cols() > input.rows();
  const BinaryMatrix m = flip ? input.transposed() : input;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (cols > 64) {
    result.status = OctoStatus::LimitExceeded;
    return result;
  }

  std::size_t states = options.max_states;
  std::size_t best_cost = SIZE_MAX;
  std::vector<std::vector<std::size_t>> best_rows, best_cols;
  try {
    for_each_partition(cols, [&](const std::vector<std::size_t>& rgs) {
      if (states == 0) throw LimitReached{};
      --states;
      const auto col_groups = groups_from_rgs(rgs);
      const std::size_t b = col_groups.size();
      if (cols - b >= best_cost) return true;
      std::vector<std::uint64_t> masks(rows, 0);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t g = 0; g < b; ++g)
          for (const std::size_t c : col_groups[g])
            if (m.at(r, c)) masks[r] |= std::uint64_t{1} << g;
      CoverPacker packer(masks, b, states);
      const std::size_t a = packer.value();
      if (a == 0) return true;
      const std::size_t cost = (cols - b) + (rows - a);
      if (cost < best_cost) {
        best_cost = cost;
        best_rows = packer.pack();
        best_cols = col_groups;
      }
      return best_cost > 0;
    });
  } catch (const LimitReached&) {
    result.status = OctoStatus::LimitExceeded;
    return result;
  }

  if (flip) std::swap(best_rows, best_cols);
  result.min_combinations = best_cost;
  result.row_groups = best_rows;
  result.col_groups = best_cols;
  result.sequence = merges_for(Axis::Rows, input.rows(), result.row_groups);
  const auto col_ops = merges_for(Axis::Cols, input.cols(), result.col_groups);
  result.sequence.insert(result.sequence.end(), col_ops.begin(), col_ops.end());
  result.status = budget && best_cost > *budget ? OctoStatus::BudgetExceeded : OctoStatus::Solved;
  return result;
}

BinaryMatrix component_intersection_matrix(const TemporalGraph& g) {
  if (g.lifespan() != 2) {
    throw ContractError("component-intersection matrix needs lifespan 2, got " +
                        std::to_string(g.lifespan()));
  }
  const auto c1 = snapshot_components(g, 1);
  const auto c2 = snapshot_components(g, 2);
  BinaryMatrix b(c1.parts.size(), c2.parts.size());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) b.set(c1.block_of[v], c2.block_of[v], true);
  return b;
}

TemporalGraph matrix_to_graph(const BinaryMatrix& b) {
  if (b.rows() == 0 || b.cols() == 0) throw ContractError("matrix must be non-empty");
  if (b.has_zero_line()) throw ContractError("matrix has an all-zero row or column");
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (b.at(i, j)) cells.emplace_back(i, j);

  std::vector<TemporalEdge> edges;
  for (VertexId a = 0; a < cells.size(); ++a) {
    for (VertexId c = a + 1; c < cells.size(); ++c) {
      if (cells[a].first == cells[c].first) edges.push_back({1, a, c});
      if (cells[a].second == cells[c].second) edges.push_back({2, a, c});
    }
  }
  return TemporalGraph(cells.size(), std::move(edges), 2);
}

std::vector<TemporalEdge> combinations_to_edges(const TemporalGraph& g, const OctoResult& r) {
  if (r.status != OctoStatus::Solved && r.status != OctoStatus::BudgetExceeded) {
    throw ContractError("OCTO result carries no merge groups");
  }
  const auto c1 = snapshot_components(g, 1);
  const auto c2 = snapshot_components(g, 2);
  std::vector<TemporalEdge> out;
  auto link = [&](const SnapshotComponents& comps, const std::vector<std::vector<std::size_t>>& groups,
                  Time t) {
    for (const auto& group : groups) {
      for (std::size_t k = 1; k < group.size(); ++k) {
        out.push_back(TemporalEdge::make(comps.parts.at(group.front()).front(),
                                         comps.parts.at(group[k]).front(), t));
      }
    }
  };
  link(c1, r.row_groups, 1);
  link(c2, r.col_groups, 2);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tca
