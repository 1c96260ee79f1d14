#pragma once

// Bit-parallel requirement check used by the subset searches. Vertex sets are 64-bit
// masks, so instances are limited to 64 vertices.

#include <cstdint>
#include <utility>
#include <vector>

#include "tca/augmentation.hpp"

namespace tca::detail {

class MaskEvaluator {
 public:
  static constexpr std::size_t kMaxVertices = 64;

  explicit MaskEvaluator(const AugmentationProblem& p);

  /// `on[i]` selects p.candidates[i].
  bool satisfied(const std::vector<char>& on) const;

 private:
  struct Layer {
    Time time = 0;
    std::vector<std::pair<std::uint8_t, std::uint8_t>> base;
    std::size_t cand_begin = 0;  // candidates are time-sorted, so each layer owns a range
    std::size_t cand_end = 0;
  };

  std::size_t n_ = 0;
  Semantics semantics_ = Semantics::NonStrict;
  std::vector<Layer> layers_;
  std::vector<std::pair<std::uint8_t, std::uint8_t>> cand_;
  std::uint64_t initial_sources_ = 0;  // vertices whose reach is tracked

  enum class Kind { All, Source, Pairs } kind_ = Kind::All;
  VertexId source_ = 0;
  std::vector<std::pair<VertexId, VertexId>> pairs_;
  std::size_t demand_ = 0;
};

}  // namespace tca::detail
