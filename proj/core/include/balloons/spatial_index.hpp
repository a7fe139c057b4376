#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "balloons/pointproc.hpp"

namespace balloons {

inline constexpr std::uint32_t kNoPoint = std::numeric_limits<std::uint32_t>::max();

struct Neighbor {
  std::uint32_t id = kNoPoint;
  double dist = std::numeric_limits<double>::infinity();
};

/// Strict total order on unordered pairs: (distance, smaller id, larger id).
inline bool pair_less(double d1, std::uint32_t a1, std::uint32_t b1, double d2, std::uint32_t a2,
                      std::uint32_t b2) noexcept {
  if (d1 != d2) return d1 < d2;
  const auto lo1 = std::min(a1, b1), lo2 = std::min(a2, b2);
  if (lo1 != lo2) return lo1 < lo2;
  return std::max(a1, b1) < std::max(a2, b2);
}

namespace detail {

// Geometric pruning uses approximate arithmetic; cells are discarded only when
// the bound beats the incumbent by this margin.
inline double prune_slack(double d) noexcept { return 1e-9 * (1.0 + d); }

inline void consider(std::uint32_t q, std::uint32_t id, double d, Neighbor& best) noexcept {
  if (best.id == kNoPoint || pair_less(d, q, id, best.dist, q, best.id)) best = {id, d};
}

}  // namespace detail

// All indexes share one interface:
//   Neighbor nearest(q)          nearest live member other than q (pair order)
//   void erase(id)               removes a live member
//   visit_ball(q, r, f)          calls f(id, dist) for every member (live or
//                                not) with dist(q, id) <= r; f returns false
//                                to stop early
//   std::size_t cell_count()     0 if the index never needs rebuilding
// The query point q is any id of the underlying PointSet.

/// Uniform grid over a box with compressed cell storage.
class EuclideanGrid {
 public:
  EuclideanGrid(const PointSet& ps, std::span<const std::uint32_t> members);

  Neighbor nearest(std::uint32_t q) const;
  void erase(std::uint32_t id);
  std::size_t live_count() const noexcept { return live_total_; }
  std::size_t cell_count() const noexcept { return cell_start_.size() - 1; }
  bool is_live(std::uint32_t id) const noexcept { return live_[id] != 0; }

  template <class F>
  void visit_ball(std::uint32_t q, double r, F&& f) const;

 private:
  using Cell = std::array<std::int64_t, kMaxEuclideanDim>;

  Cell cell_of(std::span<const double> x) const noexcept;
  std::size_t linear(const Cell& c) const noexcept;
  template <class F>
  void visit_ring(const Cell& center, std::int64_t k, F&& f) const;

  const PointSet* ps_;
  int dim_;
  std::array<double, kMaxEuclideanDim> corner_{};
  std::array<std::int64_t, kMaxEuclideanDim> extent_{};
  double cell_ = 1.0;
  std::vector<std::uint32_t> cell_start_;
  std::vector<std::uint32_t> entries_;
  std::vector<double> entry_coords_;
  std::vector<std::uint32_t> cell_live_;
  std::vector<std::uint8_t> live_;
  std::size_t live_total_ = 0;
};

/// Hyperbolic polar grid: bands of equal hyperbolic width about the disk
/// center, each split into sectors so that all cells have similar area.
class PolarGrid {
 public:
  PolarGrid(const PointSet& ps, std::span<const std::uint32_t> members);

  Neighbor nearest(std::uint32_t q) const;
  void erase(std::uint32_t id);
  std::size_t live_count() const noexcept { return live_total_; }
  std::size_t cell_count() const noexcept { return cell_band_.size(); }
  bool is_live(std::uint32_t id) const noexcept { return live_[id] != 0; }

  template <class F>
  void visit_ball(std::uint32_t q, double r, F&& f) const;

 private:
  std::uint32_t cell_of(double s, double theta) const noexcept;
  double lower_bound(double s, double theta, std::uint32_t cell) const noexcept;
  template <class F>
  void for_each_neighbor(std::uint32_t cell, F&& f) const;
  // Best-first traversal of cells with lower bound <= bound(); scan(cell) may
  // tighten the bound.
  template <class Bound, class Scan>
  void best_first(double s, double theta, Bound&& bound, Scan&& scan) const;

  const PointSet* ps_;
  double radius_ = 0.0;
  double band_width_ = 0.0;
  std::vector<std::uint32_t> band_offset_;  // first cell of each band, plus end
  std::vector<std::uint32_t> cell_band_;
  std::vector<std::uint32_t> cell_start_;
  std::vector<std::uint32_t> entries_;
  std::vector<std::complex<double>> entry_z_;
  std::vector<std::uint32_t> cell_live_;
  std::vector<double> point_s_, point_theta_;  // per PointSet id
  std::vector<std::uint8_t> live_;
  std::size_t live_total_ = 0;
  mutable std::vector<std::uint32_t> stamp_;
  mutable std::uint32_t epoch_ = 0;
};

/// Per-edge buckets on the real tree with subtree occupancy counts.
class TreeIndex {
 public:
  TreeIndex(const PointSet& ps, std::span<const std::uint32_t> members);

  Neighbor nearest(std::uint32_t q) const;
  void erase(std::uint32_t id);
  std::size_t live_count() const noexcept { return live_total_; }
  std::size_t cell_count() const noexcept { return 0; }
  bool is_live(std::uint32_t id) const noexcept { return live_[id] != 0; }

  template <class F>
  void visit_ball(std::uint32_t q, double r, F&& f) const;

 private:
  // Visits points of the ball around q in order of increasing lower bound on
  // edges whose occupancy (live or total) is nonzero.
  template <class Bound, class Scan>
  void search(std::uint32_t q, bool live_only, Bound&& bound, Scan&& scan) const;
  template <class Bound, class Scan>
  void descend(TreeVertex v, double base, bool live_only, Bound& bound, Scan& scan) const;
  template <class Scan>
  void scan_edge(TreeVertex e, double base, bool live_only, Scan& scan) const;

  const PointSet* ps_;
  const TreeAddressing* tree_;
  std::uint32_t max_depth_ = 0;
  std::vector<std::uint32_t> edge_start_;  // by dense id of the edge's child vertex
  std::vector<std::uint32_t> entries_;
  std::vector<std::uint32_t> sub_all_;
  std::vector<std::uint32_t> sub_live_;
  std::vector<std::uint8_t> live_;
  std::size_t live_total_ = 0;
};

/// Owns an index over the live members and rebuilds it coarser as points are
/// erased, so that nearest-neighbor searches do not wade through empty cells.
template <class Index>
class LiveIndex {
 public:
  LiveIndex(const PointSet& ps, std::vector<std::uint32_t> members)
      : ps_(&ps), index_(std::make_unique<Index>(ps, members)), members_(std::move(members)) {}

  Neighbor nearest(std::uint32_t q) const { return index_->nearest(q); }
  bool is_live(std::uint32_t id) const noexcept { return index_->is_live(id); }
  std::size_t live_count() const noexcept { return index_->live_count(); }

  void erase(std::uint32_t id) {
    index_->erase(id);
    const std::size_t live = index_->live_count();
    if (index_->cell_count() > 64 && live * 4 < index_->cell_count()) {
      std::erase_if(members_, [&](std::uint32_t m) { return !index_->is_live(m); });
      index_ = std::make_unique<Index>(*ps_, members_);
    }
  }

 private:
  const PointSet* ps_;
  std::unique_ptr<Index> index_;
  std::vector<std::uint32_t> members_;
};

/// Calls fn(type_tag) with a value of type Index* (null) for the space.
template <class Fn>
decltype(auto) dispatch_index(SpaceKind kind, Fn&& fn) {
  switch (kind) {
    case SpaceKind::euclidean: return fn(static_cast<EuclideanGrid*>(nullptr));
    case SpaceKind::hyperbolic: return fn(static_cast<PolarGrid*>(nullptr));
    case SpaceKind::real_tree: break;
  }
  return fn(static_cast<TreeIndex*>(nullptr));
}

std::vector<std::uint32_t> all_ids(const PointSet& ps);

// ---------------------------------------------------------------------------

template <class F>
void EuclideanGrid::visit_ball(std::uint32_t q, double r, F&& f) const {
  const auto x = ps_->coords(q);
  Cell lo{}, hi{};
  const double reach = r + detail::prune_slack(r);
  for (int i = 0; i < dim_; ++i) {
    const auto a = static_cast<std::size_t>(i);
    const double l = std::floor((x[a] - reach - corner_[a]) / cell_);
    const double h = std::floor((x[a] + reach - corner_[a]) / cell_);
    lo[a] = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::max(l, -1.0)), 0, extent_[a] - 1);
    hi[a] = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::min(h, static_cast<double>(extent_[a]))), 0, extent_[a] - 1);
  }
  Cell c = lo;
  const auto d = static_cast<std::size_t>(dim_);
  while (true) {
    const std::size_t cell = linear(c);
    for (std::uint32_t e = cell_start_[cell]; e < cell_start_[cell + 1]; ++e) {
      const double dist = euclidean_distance(x, {entry_coords_.data() + e * d, d});
      if (dist <= r && !f(entries_[e], dist)) return;
    }
    int i = 0;
    for (; i < dim_; ++i) {
      const auto a = static_cast<std::size_t>(i);
      if (++c[a] <= hi[a]) break;
      c[a] = lo[a];
    }
    if (i == dim_) return;
  }
}

template <class F>
void EuclideanGrid::visit_ring(const Cell& center, std::int64_t k, F&& f) const {
  if (k == 0) {
    f(linear(center));
    return;
  }
  Cell lo{}, hi{}, c{};
  for (int j = 0; j < dim_; ++j) {
    for (const std::int64_t sign : {-1, 1}) {
      const auto aj = static_cast<std::size_t>(j);
      const std::int64_t fixed = center[aj] + sign * k;
      if (fixed < 0 || fixed >= extent_[aj]) continue;
      bool empty = false;
      for (int i = 0; i < dim_; ++i) {
        const auto a = static_cast<std::size_t>(i);
        if (i == j) {
          lo[a] = hi[a] = fixed;
          continue;
        }
        const std::int64_t w = i < j ? k - 1 : k;
        lo[a] = std::max<std::int64_t>(center[a] - w, 0);
        hi[a] = std::min<std::int64_t>(center[a] + w, extent_[a] - 1);
        if (lo[a] > hi[a]) empty = true;
      }
      if (empty) continue;
      c = lo;
      while (true) {
        f(linear(c));
        int i = 0;
        for (; i < dim_; ++i) {
          const auto a = static_cast<std::size_t>(i);
          if (++c[a] <= hi[a]) break;
          c[a] = lo[a];
        }
        if (i == dim_) break;
      }
    }
  }
}

template <class F>
void PolarGrid::for_each_neighbor(std::uint32_t cell, F&& f) const {
  const std::uint32_t b = cell_band_[cell];
  const std::uint32_t m = band_offset_[b + 1] - band_offset_[b];
  const std::uint32_t j = cell - band_offset_[b];
  if (m > 1) {
    f(band_offset_[b] + (j + 1) % m);
    if (m > 2) f(band_offset_[b] + (j + m - 1) % m);
  }
  const auto bands = static_cast<std::uint32_t>(band_offset_.size() - 1);
  for (const std::int64_t step : {-1, 1}) {
    const std::int64_t nb64 = static_cast<std::int64_t>(b) + step;
    if (nb64 < 0 || nb64 >= static_cast<std::int64_t>(bands)) continue;
    const auto nb = static_cast<std::uint32_t>(nb64);
    const std::uint64_t mn = band_offset_[nb + 1] - band_offset_[nb];
    // cells of band nb whose closed angular interval meets [j/m, (j+1)/m]
    const std::uint64_t first = static_cast<std::uint64_t>(j) * mn / m;
    const std::uint64_t last = (static_cast<std::uint64_t>(j) + 1) * mn / m;
    for (std::uint64_t k = first; k <= last; ++k) {
      f(band_offset_[nb] + static_cast<std::uint32_t>(k % mn));
    }
  }
}

template <class Bound, class Scan>
void PolarGrid::best_first(double s, double theta, Bound&& bound, Scan&& scan) const {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  const std::uint32_t start = cell_of(s, theta);
  stamp_[start] = epoch_;
  heap.emplace(0.0, start);
  while (!heap.empty()) {
    const auto [lb, cell] = heap.top();
    heap.pop();
    const double limit = bound();
    if (lb > limit + detail::prune_slack(limit)) break;
    scan(cell);
    for_each_neighbor(cell, [&](std::uint32_t n) {
      if (stamp_[n] == epoch_) return;
      stamp_[n] = epoch_;
      heap.emplace(lower_bound(s, theta, n), n);
    });
  }
}

template <class F>
void PolarGrid::visit_ball(std::uint32_t q, double r, F&& f) const {
  const auto z = ps_->disk(q);
  bool stop = false;
  best_first(
      point_s_[q], point_theta_[q], [&] { return stop ? -1.0 : r; },
      [&](std::uint32_t cell) {
        for (std::uint32_t e = cell_start_[cell]; e < cell_start_[cell + 1] && !stop; ++e) {
          const double dist = hyperbolic_distance(z, entry_z_[e]);
          if (dist <= r && !f(entries_[e], dist)) stop = true;
        }
      });
}

template <class Scan>
void TreeIndex::scan_edge(TreeVertex e, double base, bool live_only, Scan& scan) const {
  if (e.depth == 0 || e.depth > max_depth_) return;
  const auto id = tree_->dense_id(e);
  if ((live_only ? sub_live_ : sub_all_)[id] == 0) return;
  for (std::uint32_t k = edge_start_[id]; k < edge_start_[id + 1]; ++k) {
    const std::uint32_t p = entries_[k];
    if (!live_only || live_[p]) scan(p, base);
  }
}

template <class Bound, class Scan>
void TreeIndex::descend(TreeVertex v, double base, bool live_only, Bound& bound, Scan& scan) const {
  if (v.depth >= max_depth_) return;
  const auto& count = live_only ? sub_live_ : sub_all_;
  for (int c = 0; c < tree_->child_count(v); ++c) {
    const double limit = bound();
    if (base > limit + detail::prune_slack(limit)) return;
    const TreeVertex child = tree_->child(v, c);
    if (count[tree_->dense_id(child)] == 0) continue;
    scan_edge(child, base, live_only, scan);
    descend(child, base + 1.0, live_only, bound, scan);
  }
}

template <class Bound, class Scan>
void TreeIndex::search(std::uint32_t q, bool live_only, Bound&& bound, Scan&& scan) const {
  const TreePoint& x = ps_->tree(q);
  scan_edge(x.edge, 0.0, live_only, scan);
  descend(x.edge, 1.0 - x.offset, live_only, bound, scan);
  TreeVertex v = x.edge;
  double base = x.offset;  // distance from x to the parent of v
  const auto& count = live_only ? sub_live_ : sub_all_;
  while (v.depth >= 1) {
    const double limit = bound();
    if (base > limit + detail::prune_slack(limit)) return;
    const TreeVertex p = tree_->parent(v);
    for (int c = 0; c < tree_->child_count(p); ++c) {
      const TreeVertex sibling = tree_->child(p, c);
      if (sibling == v || count[tree_->dense_id(sibling)] == 0) continue;
      const double lim = bound();
      if (base > lim + detail::prune_slack(lim)) return;
      scan_edge(sibling, base, live_only, scan);
      descend(sibling, base + 1.0, live_only, bound, scan);
    }
    scan_edge(p, base, live_only, scan);
    v = p;
    base += 1.0;
  }
}

template <class F>
void TreeIndex::visit_ball(std::uint32_t q, double r, F&& f) const {
  const TreePoint& x = ps_->tree(q);
  bool stop = false;
  search(
      q, false, [&] { return stop ? -1.0 : r; },
      [&](std::uint32_t p, double) {
        if (stop) return;
        const double dist = tree_distance(*tree_, x, ps_->tree(p));
        if (dist <= r && !f(p, dist)) stop = true;
      });
}

}  // namespace balloons
