#pragma once

#include <variant>
#include <vector>

#include "lpmult/lp_space.hpp"
#include "lpmult/measure_model.hpp"

namespace lpmult {

using RefinementItem = std::variant<Measure, SimpleFunction>;

struct CommonRefinement {
  SkeletonPtr skeleton;
  std::vector<RefinementItem> items;  // same order as the input
  std::vector<PieceMap> maps;         // item skeleton -> common skeleton
};

/// Re-expresses measures and functions given on different cell partitions of
/// the same base interval on one common refinement. All items must agree on
/// the atom slots, the tail flag and the total base length.
CommonRefinement common_refinement(const std::vector<RefinementItem>& items);

}  // namespace lpmult
