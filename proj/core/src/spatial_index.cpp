#include "balloons/spatial_index.hpp"

#include <numeric>

#include "balloons/error.hpp"

namespace balloons {

std::vector<std::uint32_t> all_ids(const PointSet& ps) {
  std::vector<std::uint32_t> ids(ps.size());
  std::iota(ids.begin(), ids.end(), 0u);
  return ids;
}

// ---------------------------------------------------------------- Euclidean

EuclideanGrid::EuclideanGrid(const PointSet& ps, std::span<const std::uint32_t> members)
    : ps_(&ps), dim_(ps.space().dim()) {
  require(ps.space().kind() == SpaceKind::euclidean, ErrorCode::invalid_argument,
          "euclidean grid needs a euclidean point set");
  const auto& box = std::get<BoxWindow>(ps.window());
  const double vol = measure(ps.space(), ps.window());
  const double count = std::max<double>(1.0, static_cast<double>(members.size()));
  cell_ = std::pow(vol / count, 1.0 / dim_);
  std::size_t cells = 1;
  for (int i = 0; i < dim_; ++i) {
    const auto a = static_cast<std::size_t>(i);
    corner_[a] = box.corner[i];
    extent_[a] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(box.sides[i] / cell_)));
    cells *= static_cast<std::size_t>(extent_[a]);
  }
  require(cells < (std::size_t{1} << 31), ErrorCode::size_guard, "grid too large");

  const auto d = static_cast<std::size_t>(dim_);
  std::vector<std::uint32_t> cell_of_member(members.size());
  cell_start_.assign(cells + 1, 0);
  for (std::size_t k = 0; k < members.size(); ++k) {
    cell_of_member[k] = static_cast<std::uint32_t>(linear(cell_of(ps.coords(members[k]))));
    ++cell_start_[cell_of_member[k] + 1];
  }
  std::partial_sum(cell_start_.begin(), cell_start_.end(), cell_start_.begin());
  cell_live_.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) cell_live_[c] = cell_start_[c + 1] - cell_start_[c];

  entries_.resize(members.size());
  entry_coords_.resize(members.size() * d);
  live_.assign(ps.size(), 0);
  std::vector<std::uint32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t k = 0; k < members.size(); ++k) {
    const std::uint32_t e = fill[cell_of_member[k]]++;
    const std::uint32_t id = members[k];
    entries_[e] = id;
    const auto x = ps.coords(id);
    std::copy(x.begin(), x.end(), entry_coords_.begin() + static_cast<std::ptrdiff_t>(e * d));
    live_[id] = 1;
  }
  live_total_ = members.size();
}

EuclideanGrid::Cell EuclideanGrid::cell_of(std::span<const double> x) const noexcept {
  Cell c{};
  for (int i = 0; i < dim_; ++i) {
    const auto a = static_cast<std::size_t>(i);
    const double f = std::floor((x[a] - corner_[a]) / cell_);
    c[a] = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::clamp(f, -1.0, 1e18)), 0,
                                    extent_[a] - 1);
  }
  return c;
}

std::size_t EuclideanGrid::linear(const Cell& c) const noexcept {
  std::size_t idx = 0;
  for (int i = dim_ - 1; i >= 0; --i) {
    const auto a = static_cast<std::size_t>(i);
    idx = idx * static_cast<std::size_t>(extent_[a]) + static_cast<std::size_t>(c[a]);
  }
  return idx;
}

void EuclideanGrid::erase(std::uint32_t id) {
  if (!live_[id]) return;
  live_[id] = 0;
  --live_total_;
  --cell_live_[linear(cell_of(ps_->coords(id)))];
}

Neighbor EuclideanGrid::nearest(std::uint32_t q) const {
  Neighbor best;
  const auto x = ps_->coords(q);
  const Cell center = cell_of(x);
  const auto d = static_cast<std::size_t>(dim_);
  std::int64_t max_ring = 0;
  for (int i = 0; i < dim_; ++i) {
    const auto a = static_cast<std::size_t>(i);
    max_ring = std::max({max_ring, center[a], extent_[a] - 1 - center[a]});
  }
  for (std::int64_t k = 0; k <= max_ring; ++k) {
    if (k > 0 && best.id != kNoPoint) {
      // distance from x to the outside of the block of rings < k
      double bound = std::numeric_limits<double>::infinity();
      for (int i = 0; i < dim_; ++i) {
        const auto a = static_cast<std::size_t>(i);
        if (center[a] - (k - 1) > 0) {
          bound = std::min(bound, x[a] - (corner_[a] + static_cast<double>(center[a] - k + 1) * cell_));
        }
        if (center[a] + k < extent_[a]) {
          bound = std::min(bound, corner_[a] + static_cast<double>(center[a] + k) * cell_ - x[a]);
        }
      }
      if (bound > best.dist + detail::prune_slack(best.dist)) break;
    }
    visit_ring(center, k, [&](std::size_t cell) {
      if (cell_live_[cell] == 0) return;
      for (std::uint32_t e = cell_start_[cell]; e < cell_start_[cell + 1]; ++e) {
        const std::uint32_t id = entries_[e];
        if (id == q || !live_[id]) continue;
        detail::consider(q, id, euclidean_distance(x, {entry_coords_.data() + e * d, d}), best);
      }
    });
  }
  return best;
}

// --------------------------------------------------------------- hyperbolic

PolarGrid::PolarGrid(const PointSet& ps, std::span<const std::uint32_t> members) : ps_(&ps) {
  require(ps.space().kind() == SpaceKind::hyperbolic, ErrorCode::invalid_argument,
          "polar grid needs a hyperbolic point set");
  radius_ = std::get<DiskWindow>(ps.window()).radius;
  const double area = measure(ps.space(), ps.window());
  const double target = 2.0 * area / std::max<double>(1.0, static_cast<double>(members.size()));
  const double bands = std::clamp(std::ceil(radius_ / std::sqrt(target)), 1.0, 1e5);
  band_width_ = radius_ / bands;
  const Space& space = ps.space();
  band_offset_.push_back(0);
  for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(bands); ++b) {
    const double s0 = band_width_ * b;
    const double s1 = band_width_ * (b + 1);
    const double band_area = ball_volume(space, s1) - ball_volume(space, s0);
    const double sectors = b == 0 ? 1.0 : std::clamp(std::round(band_area / target), 1.0, 1e7);
    band_offset_.push_back(band_offset_.back() + static_cast<std::uint32_t>(sectors));
    cell_band_.insert(cell_band_.end(), static_cast<std::size_t>(sectors), b);
  }
  require(cell_band_.size() < (std::size_t{1} << 31), ErrorCode::size_guard, "polar grid too large");

  point_s_.assign(ps.size(), 0.0);
  point_theta_.assign(ps.size(), 0.0);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto z = ps.disk(i);
    point_s_[i] = 2.0 * std::atanh(std::abs(z));
    double th = std::arg(z);
    if (th < 0) th += 2.0 * std::numbers::pi;
    point_theta_[i] = th;
  }

  const std::size_t cells = cell_band_.size();
  std::vector<std::uint32_t> cell_of_member(members.size());
  cell_start_.assign(cells + 1, 0);
  for (std::size_t k = 0; k < members.size(); ++k) {
    cell_of_member[k] = cell_of(point_s_[members[k]], point_theta_[members[k]]);
    ++cell_start_[cell_of_member[k] + 1];
  }
  std::partial_sum(cell_start_.begin(), cell_start_.end(), cell_start_.begin());
  cell_live_.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) cell_live_[c] = cell_start_[c + 1] - cell_start_[c];
  entries_.resize(members.size());
  entry_z_.resize(members.size());
  live_.assign(ps.size(), 0);
  std::vector<std::uint32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t k = 0; k < members.size(); ++k) {
    const std::uint32_t e = fill[cell_of_member[k]]++;
    entries_[e] = members[k];
    entry_z_[e] = ps.disk(members[k]);
    live_[members[k]] = 1;
  }
  live_total_ = members.size();
  stamp_.assign(cells, 0);
}

std::uint32_t PolarGrid::cell_of(double s, double theta) const noexcept {
  const auto bands = static_cast<std::uint32_t>(band_offset_.size() - 1);
  const auto b = std::min<std::uint32_t>(static_cast<std::uint32_t>(std::max(0.0, s / band_width_)), bands - 1);
  const std::uint32_t m = band_offset_[b + 1] - band_offset_[b];
  const auto j = std::min<std::uint32_t>(
      static_cast<std::uint32_t>(theta / (2.0 * std::numbers::pi) * m), m - 1);
  return band_offset_[b] + j;
}

double PolarGrid::lower_bound(double s, double theta, std::uint32_t cell) const noexcept {
  const std::uint32_t b = cell_band_[cell];
  const std::uint32_t m = band_offset_[b + 1] - band_offset_[b];
  const std::uint32_t j = cell - band_offset_[b];
  const double s0 = band_width_ * b;
  const double s1 = b + 2 == band_offset_.size() ? radius_ : band_width_ * (b + 1);
  const double ds = s < s0 ? s0 - s : (s > s1 ? s - s1 : 0.0);
  double dth = 0.0;
  if (m > 1) {
    const double two_pi = 2.0 * std::numbers::pi;
    const double a0 = two_pi * j / m;
    const double a1 = two_pi * (j + 1) / m;
    if (theta < a0 || theta > a1) {
      auto gap = [&](double a) {
        const double g = std::fmod(std::abs(theta - a), two_pi);
        return std::min(g, two_pi - g);
      };
      dth = std::min(gap(a0), gap(a1));
    }
  }
  const double hs = std::sinh(ds / 2.0);
  const double ht = std::sin(dth / 2.0);
  const double v = hs * hs + std::sinh(s0) * std::sinh(s) * ht * ht;
  return 2.0 * std::asinh(std::sqrt(v));
}

void PolarGrid::erase(std::uint32_t id) {
  if (!live_[id]) return;
  live_[id] = 0;
  --live_total_;
  --cell_live_[cell_of(point_s_[id], point_theta_[id])];
}

Neighbor PolarGrid::nearest(std::uint32_t q) const {
  Neighbor best;
  const auto z = ps_->disk(q);
  best_first(
      point_s_[q], point_theta_[q],
      [&] { return best.id == kNoPoint ? std::numeric_limits<double>::infinity() : best.dist; },
      [&](std::uint32_t cell) {
        if (cell_live_[cell] == 0) return;
        for (std::uint32_t e = cell_start_[cell]; e < cell_start_[cell + 1]; ++e) {
          const std::uint32_t id = entries_[e];
          if (id == q || !live_[id]) continue;
          detail::consider(q, id, hyperbolic_distance(z, entry_z_[e]), best);
        }
      });
  return best;
}

// --------------------------------------------------------------------- tree

TreeIndex::TreeIndex(const PointSet& ps, std::span<const std::uint32_t> members)
    : ps_(&ps), tree_(&ps.addressing()) {
  require(ps.space().kind() == SpaceKind::real_tree, ErrorCode::invalid_argument,
          "tree index needs a tree point set");
  const double radius = std::get<TreeBallWindow>(ps.window()).radius;
  max_depth_ = static_cast<std::uint32_t>(std::ceil(radius));
  for (std::uint32_t id : members) max_depth_ = std::max(max_depth_, ps.tree(id).edge.depth);
  const std::uint64_t vertices = tree_->ball_size(max_depth_);
  require(vertices < (std::uint64_t{1} << 28), ErrorCode::size_guard, "tree window too large to index");

  const auto nv = static_cast<std::size_t>(vertices);
  edge_start_.assign(nv + 1, 0);
  std::vector<std::uint32_t> edge_of(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    edge_of[k] = static_cast<std::uint32_t>(tree_->dense_id(ps.tree(members[k]).edge));
    ++edge_start_[edge_of[k] + 1];
  }
  std::partial_sum(edge_start_.begin(), edge_start_.end(), edge_start_.begin());
  entries_.resize(members.size());
  std::vector<std::uint32_t> fill(edge_start_.begin(), edge_start_.end() - 1);
  for (std::size_t k = 0; k < members.size(); ++k) entries_[fill[edge_of[k]]++] = members[k];

  // subtree totals: children have larger dense ids, so sweep ids downward
  sub_all_.assign(nv, 0);
  for (std::size_t v = nv; v-- > 1;) {
    sub_all_[v] += edge_start_[v + 1] - edge_start_[v];
    const TreeVertex p = tree_->parent(tree_->from_dense_id(v));
    if (p.depth > 0) sub_all_[tree_->dense_id(p)] += sub_all_[v];
  }
  sub_live_ = sub_all_;
  live_.assign(ps.size(), 0);
  for (std::uint32_t id : members) live_[id] = 1;
  live_total_ = members.size();
}

void TreeIndex::erase(std::uint32_t id) {
  if (!live_[id]) return;
  live_[id] = 0;
  --live_total_;
  for (TreeVertex v = ps_->tree(id).edge; v.depth > 0; v = tree_->parent(v)) {
    --sub_live_[tree_->dense_id(v)];
  }
}

Neighbor TreeIndex::nearest(std::uint32_t q) const {
  Neighbor best;
  const TreePoint& x = ps_->tree(q);
  search(
      q, true,
      [&] { return best.id == kNoPoint ? std::numeric_limits<double>::infinity() : best.dist; },
      [&](std::uint32_t p, double) {
        if (p == q) return;
        detail::consider(q, p, tree_distance(*tree_, x, ps_->tree(p)), best);
      });
  return best;
}

}  // namespace balloons
