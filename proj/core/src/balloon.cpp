#include "balloons/balloon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "balloons/error.hpp"

namespace balloons {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sup{t : R_t + 2t < reach} over pieces [t_i, t_{i+1}) with value R_i.
double horizon(const std::vector<Breakpoint>& pieces, double reach) {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const double a = pieces[i].t;
    const double b = i + 1 < pieces.size() ? pieces[i + 1].t : kInf;
    const double R = pieces[i].R;
    if (R + 2.0 * a >= reach) return a;
    const double limit = (reach - R) / 2.0;
    if (limit < b) return limit;
  }
  return 0.0;
}

}  // namespace

double Trajectory::R_at(double t) const {
  require(!breakpoints.empty() && t >= 0.0, ErrorCode::invalid_argument, "trajectory is empty");
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t,
                             [](double x, const Breakpoint& b) { return x < b.t; });
  return std::prev(it)->R;
}

Trajectory compute_trajectory(const PointSet& ps, const MatchingResult& mr, const MetricPoint& origin) {
  require(mr.has_certification, ErrorCode::invalid_argument, "trajectory needs a certified matching");
  if (!contains(ps.space(), ps.window(), origin)) {
    fail(ErrorCode::outside_region, "origin lies outside the window");
  }
  Trajectory traj;
  traj.origin = origin;
  double reach = boundary_distance(ps.space(), ps.window(), origin);
  for (const auto& w : mr.taint_log) reach = std::min(reach, ps.distance_to(w.id, origin));
  if (mr.unmatched) reach = std::min(reach, ps.distance_to(*mr.unmatched, origin));

  const auto pop = pop_times(ps, mr);
  std::vector<std::pair<double, std::uint32_t>> near;
  for (std::uint32_t i = 0; i < ps.size(); ++i) {
    const double d = ps.distance_to(i, origin);
    if (d < reach) near.emplace_back(d, i);
  }
  std::sort(near.begin(), near.end());

  // R_t jumps when the current nearest active center pops.
  std::vector<Breakpoint> pieces;
  double tau = 0.0;
  for (const auto& [d, id] : near) {
    if (pop[id] > tau || pieces.empty()) {
      pieces.push_back({tau, d});
      tau = pop[id];
      if (tau == kInf) break;
    }
  }
  // beyond the known points R_t is at least the certification radius
  if (pieces.empty() || tau != kInf) pieces.push_back({tau, reach});

  traj.certified_until = horizon(pieces, reach);
  traj.strict_horizon = horizon(pieces, reach / 2.0);
  for (const auto& b : pieces) {
    if (b.t < traj.certified_until) traj.breakpoints.push_back(b);
  }
  return traj;
}

CoverReport cover_report(const Trajectory& traj, double t0) {
  require(t0 > 0.0, ErrorCode::invalid_argument, "t0 must be positive");
  CoverReport rep;
  rep.t0 = t0;
  const double cu = traj.certified_until;
  const auto& bp = traj.breakpoints;
  rep.min_ratio = kInf;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    const double a = bp[i].t;
    const double b = std::min(i + 1 < bp.size() ? bp[i + 1].t : kInf, cu);
    const double R = bp[i].R;
    if (b <= a) continue;
    rep.max_inverse_ratio = std::max(rep.max_inverse_ratio, b / R);
    const double lo = std::max(a, R);
    if (lo < b) {
      if (!rep.covered_intervals.empty() && rep.covered_intervals.back().second == lo) {
        rep.covered_intervals.back().second = b;
      } else {
        rep.covered_intervals.emplace_back(lo, b);
      }
    }
    // on [a, b) the ratio R/t decreases; its infimum is approached at b
    if (b >= t0 && R / b < rep.min_ratio) {
      rep.min_ratio = R / b;
      rep.argmin_t = b;
    }
  }
  rep.empty = cu < t0;
  return rep;
}

double LatticeField::value(std::span<const std::int64_t> n) const {
  LatticeCell key;
  std::copy(n.begin(), n.end(), key.n.begin());
  auto it = std::lower_bound(cells.begin(), cells.end(), key,
                             [](const LatticeCell& a, const LatticeCell& b) { return a.n < b.n; });
  return it != cells.end() && it->n == key.n ? it->value : 0.0;
}

std::optional<TreeVertex> project_tree_point(const TreeAddressing& tree, const TreePoint& x) {
  if (x.offset < 0.5) return tree.parent(x.edge);
  if (x.offset > 0.5) return x.edge;
  return std::nullopt;
}

LatticeField lattice_field(const PointSet& ps, const MatchingResult& mr, const MetricPoint& origin,
                           std::int64_t extent) {
  if (ps.space().kind() != SpaceKind::euclidean) fail(ErrorCode::unsupported, "lattice field needs euclidean space");
  require(extent >= 0, ErrorCode::invalid_argument, "extent must be nonnegative");
  const auto& o = std::get<EuclideanPoint>(origin);
  require(o.dim == ps.space().dim(), ErrorCode::invalid_argument, "origin dimension mismatch");
  LatticeField field;
  field.dim = o.dim;
  field.extent = extent;
  const auto pop = pop_times(ps, mr);
  const auto cert = certified_points(ps, mr);

  struct Hash {
    std::size_t operator()(const std::array<std::int64_t, kMaxEuclideanDim>& n) const noexcept {
      std::uint64_t h = 0;
      for (auto v : n) h = mix64(h ^ static_cast<std::uint64_t>(v));
      return static_cast<std::size_t>(h);
    }
  };
  std::unordered_map<std::array<std::int64_t, kMaxEuclideanDim>, std::size_t, Hash> slot;
  for (std::uint32_t i = 0; i < ps.size(); ++i) {
    const auto x = ps.coords(i);
    std::array<std::int64_t, kMaxEuclideanDim> n{};
    bool inside = true;
    for (int k = 0; k < o.dim; ++k) {
      const auto a = static_cast<std::size_t>(k);
      n[a] = static_cast<std::int64_t>(std::floor(x[a] - o.x[a]));
      if (std::abs(n[a]) > extent) inside = false;
    }
    if (!inside) continue;
    auto [it, fresh] = slot.try_emplace(n, field.cells.size());
    if (fresh) field.cells.push_back({n, 0.0, true});
    auto& cell = field.cells[it->second];
    cell.value = std::max(cell.value, pop[i]);
    cell.certified = cell.certified && cert[i];
  }
  std::sort(field.cells.begin(), field.cells.end(),
            [](const LatticeCell& a, const LatticeCell& b) { return a.n < b.n; });
  return field;
}

}  // namespace balloons
