#include "balloons/tree_addressing.hpp"

#include <limits>

#include "balloons/error.hpp"

namespace balloons {

TreeAddressing::TreeAddressing(int degree) : degree_(degree) {
  require(degree >= 3, ErrorCode::invalid_argument, "tree degree must be at least 3");
  const auto branch = static_cast<std::uint64_t>(degree - 1);
  constexpr auto kLimit = std::numeric_limits<std::uint64_t>::max() / 4;

  branch_pow_.push_back(1);
  level_offset_ = {0, 1};
  std::uint32_t depth = 1;
  // level k has d (d-1)^(k-1) vertices; stop once the running dense id could overflow.
  while (true) {
    const std::uint64_t size = static_cast<std::uint64_t>(degree) * branch_pow_.back();
    const std::uint64_t next_offset = level_offset_.back() + size;
    if (branch_pow_.back() > kLimit / branch || next_offset > kLimit) break;
    branch_pow_.push_back(branch_pow_.back() * branch);
    level_offset_.push_back(next_offset);
    ++depth;
  }
  max_depth_ = depth - 1;
}

std::uint64_t TreeAddressing::level_size(std::uint32_t depth) const {
  require(depth <= max_depth_, ErrorCode::size_guard, "tree depth exceeds addressable range");
  return depth == 0 ? 1 : static_cast<std::uint64_t>(degree_) * branch_pow_[depth - 1];
}

std::uint64_t TreeAddressing::ball_size(std::uint32_t depth) const {
  require(depth <= max_depth_, ErrorCode::size_guard, "tree depth exceeds addressable range");
  return level_offset_[depth + 1];
}

std::uint64_t TreeAddressing::dense_id(TreeVertex v) const {
  return level_offset_[v.depth] + v.index;
}

TreeVertex TreeAddressing::from_dense_id(std::uint64_t id) const {
  std::uint32_t depth = 0;
  while (depth + 1 < level_offset_.size() && level_offset_[depth + 1] <= id) ++depth;
  return {depth, id - level_offset_[depth]};
}

TreeVertex TreeAddressing::parent(TreeVertex v) const {
  require(v.depth > 0, ErrorCode::invalid_argument, "root has no parent");
  if (v.depth == 1) return kTreeRoot;
  return {v.depth - 1, v.index / static_cast<std::uint64_t>(degree_ - 1)};
}

TreeVertex TreeAddressing::child(TreeVertex v, int c) const {
  require(c >= 0 && c < child_count(v), ErrorCode::invalid_argument, "child index out of range");
  require(v.depth < max_depth_, ErrorCode::size_guard, "tree depth exceeds addressable range");
  if (v.depth == 0) return {1, static_cast<std::uint64_t>(c)};
  return {v.depth + 1, v.index * static_cast<std::uint64_t>(degree_ - 1) + static_cast<std::uint64_t>(c)};
}

TreeVertex TreeAddressing::ancestor(TreeVertex v, std::uint32_t depth) const {
  if (depth >= v.depth) return v;
  if (depth == 0) return kTreeRoot;
  return {depth, v.index / branch_pow_[v.depth - depth]};
}

bool TreeAddressing::is_ancestor_or_self(TreeVertex a, TreeVertex v) const {
  return a.depth <= v.depth && ancestor(v, a.depth) == a;
}

std::uint32_t TreeAddressing::lca_depth(TreeVertex a, TreeVertex b) const {
  std::uint32_t lo = 0;
  std::uint32_t hi = std::min(a.depth, b.depth);
  // ancestors agree on a prefix of depths; binary search its end
  while (lo < hi) {
    const std::uint32_t mid = (lo + hi + 1) / 2;
    if (ancestor(a, mid) == ancestor(b, mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::uint32_t TreeAddressing::distance(TreeVertex a, TreeVertex b) const {
  return a.depth + b.depth - 2 * lca_depth(a, b);
}

std::vector<int> TreeAddressing::path(TreeVertex v) const {
  std::vector<int> out(v.depth);
  const auto branch = static_cast<std::uint64_t>(degree_ - 1);
  std::uint64_t index = v.index;
  for (std::uint32_t k = v.depth; k >= 2; --k) {
    out[k - 1] = static_cast<int>(index % branch);
    index /= branch;
  }
  if (v.depth >= 1) out[0] = static_cast<int>(index);
  return out;
}

TreeVertex TreeAddressing::from_path(const std::vector<int>& path) const {
  TreeVertex v = kTreeRoot;
  for (int c : path) v = child(v, c);
  return v;
}

bool TreeAddressing::valid(TreeVertex v) const noexcept {
  if (v.depth > max_depth_) return false;
  if (v.depth == 0) return v.index == 0;
  return v.index < static_cast<std::uint64_t>(degree_) * branch_pow_[v.depth - 1];
}

}  // namespace balloons
