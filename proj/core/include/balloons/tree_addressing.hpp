#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace balloons {

/// A vertex of the rooted d-regular tree, addressed by (depth, index within
/// its level). Level k >= 1 holds d(d-1)^(k-1) vertices; child c of (k, i)
/// is (k+1, i(d-1) + c), so the index is the mixed-radix reading of the path
/// of child indices from the root.
struct TreeVertex {
  std::uint32_t depth = 0;
  std::uint64_t index = 0;

  friend constexpr auto operator<=>(const TreeVertex&, const TreeVertex&) = default;
};

inline constexpr TreeVertex kTreeRoot{0, 0};

class TreeAddressing {
 public:
  explicit TreeAddressing(int degree);

  int degree() const noexcept { return degree_; }
  /// Deepest level whose indices fit in 64 bits.
  std::uint32_t max_depth() const noexcept { return max_depth_; }

  std::uint64_t level_size(std::uint32_t depth) const;
  /// Number of vertices at depth <= `depth`.
  std::uint64_t ball_size(std::uint32_t depth) const;
  /// Dense id in BFS order: root is 0, then level 1, level 2, ...
  std::uint64_t dense_id(TreeVertex v) const;
  TreeVertex from_dense_id(std::uint64_t id) const;

  int child_count(TreeVertex v) const noexcept { return v.depth == 0 ? degree_ : degree_ - 1; }
  TreeVertex parent(TreeVertex v) const;
  TreeVertex child(TreeVertex v, int c) const;
  TreeVertex ancestor(TreeVertex v, std::uint32_t depth) const;
  bool is_ancestor_or_self(TreeVertex a, TreeVertex v) const;
  std::uint32_t lca_depth(TreeVertex a, TreeVertex b) const;
  std::uint32_t distance(TreeVertex a, TreeVertex b) const;

  std::vector<int> path(TreeVertex v) const;
  TreeVertex from_path(const std::vector<int>& path) const;

  bool valid(TreeVertex v) const noexcept;

 private:
  int degree_;
  std::uint32_t max_depth_;
  std::vector<std::uint64_t> branch_pow_;    // (d-1)^k
  std::vector<std::uint64_t> level_offset_;  // dense id of (k, 0)
};

}  // namespace balloons
