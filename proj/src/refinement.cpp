#include "lpmult/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lpmult/errors.hpp"

namespace lpmult {

namespace {

const SkeletonPtr& skeleton_of(const RefinementItem& item) {
  return std::visit([](const auto& x) -> const SkeletonPtr& { return x.skeleton; }, item);
}

std::vector<double> breakpoints(const SpaceSkeleton& sk) {
  std::vector<double> out{0.0};
  double at = 0.0;
  for (const auto& c : sk.cells) out.push_back(at += c.length);
  return out;
}

}  // namespace

CommonRefinement common_refinement(const std::vector<RefinementItem>& items) {
  if (items.empty()) throw ModelError("common_refinement: nothing to refine");
  const auto& first = *skeleton_of(items.front());
  const double total = first.base_length();
  const double tol = 1e-12 * std::max(1.0, total);

  std::vector<double> cuts;
  for (const auto& item : items) {
    const auto& sk = *skeleton_of(item);
    if (sk.atoms != first.atoms) throw ModelError("common_refinement: items disagree on atom slots");
    if (sk.tail_present != first.tail_present)
      throw ModelError("common_refinement: items disagree on the tail");
    if (std::abs(sk.base_length() - total) > tol)
      throw ModelError("common_refinement: inconsistent base intervals");
    if (sk.cells.empty()) continue;
    auto b = breakpoints(sk);
    cuts.insert(cuts.end(), b.begin() + 1, b.end() - 1);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> merged{0.0};
  for (double c : cuts)
    if (c - merged.back() > tol && total - c > tol) merged.push_back(c);
  if (!first.cells.empty()) merged.push_back(total);

  // Locate each refined cell inside the cells of item 0 for naming.
  const auto base0 = breakpoints(first);
  auto parent_in = [&](const std::vector<double>& b, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    auto it = std::upper_bound(b.begin(), b.end(), mid);
    auto idx = static_cast<std::size_t>(std::distance(b.begin(), it));
    return std::min(idx == 0 ? 0 : idx - 1, b.size() - 2);
  };

  SpaceSkeleton refined{first.atoms, {}, first.tail_present};
  std::vector<std::size_t> child_count(first.cells.size(), 0);
  std::set<std::string> used(first.atoms.begin(), first.atoms.end());
  for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
    const double lo = merged[k], hi = merged[k + 1];
    const auto parent = parent_in(base0, lo, hi);
    const bool same = std::abs(base0[parent] - lo) <= tol && std::abs(base0[parent + 1] - hi) <= tol;
    std::string id = same ? first.cells[parent].id
                          : first.cells[parent].id + "~" + std::to_string(child_count[parent]);
    ++child_count[parent];
    while (used.contains(id) || id == kTailId) id += "'";
    used.insert(id);
    refined.cells.push_back({id, same ? first.cells[parent].length : hi - lo});
  }

  CommonRefinement out;
  out.skeleton = std::make_shared<const SpaceSkeleton>(std::move(refined));
  for (const auto& item : items) {
    const auto& from = skeleton_of(item);
    const auto b = breakpoints(*from);
    PieceMap map;
    map.from = from;
    map.to = out.skeleton;
    for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
      const auto parent = parent_in(b, merged[k], merged[k + 1]);
      map.cell_parent.push_back(parent);
      map.cell_offset.push_back(std::max(0.0, merged[k] - b[parent]));
    }
    out.items.push_back(std::visit([&](const auto& x) -> RefinementItem { return transport(x, map); }, item));
    out.maps.push_back(std::move(map));
  }
  return out;
}

}  // namespace lpmult
