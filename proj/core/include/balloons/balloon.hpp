#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "balloons/matching.hpp"

namespace balloons {

/// R_s = R for s in [t, next t).
struct Breakpoint {
  double t = 0.0;
  double R = 0.0;
};

/// The step function t -> R_t = distance from the origin to the nearest
/// active balloon center, recorded up to the certified horizon.
struct Trajectory {
  std::vector<Breakpoint> breakpoints;
  /// sup{t : B(o, R_t + 2t) avoids the boundary and every taint location}.
  double certified_until = 0.0;
  /// The same horizon with the stricter radius 2(R_t + 2t).
  double strict_horizon = 0.0;
  MetricPoint origin;

  /// R_t for t below the last recorded breakpoint's successor.
  double R_at(double t) const;
};

/// Walks the points outward from the origin. The certification radius D is
/// the distance from the origin to the window boundary, the nearest tainted
/// point, or the unmatched point, whichever is smallest.
Trajectory compute_trajectory(const PointSet& ps, const MatchingResult& mr, const MetricPoint& origin);

struct CoverReport {
  /// Maximal intervals [a, b) within [0, certified_until] where R_t <= t.
  std::vector<std::pair<double, double>> covered_intervals;
  /// inf of R_t / t over [t0, certified_until].
  double min_ratio = 0.0;
  double argmin_t = 0.0;
  /// sup of t / R_t over (0, certified_until].
  double max_inverse_ratio = 0.0;
  double t0 = 1.0;
  /// Set when certified_until < t0; min_ratio is then meaningless.
  bool empty = false;
};

CoverReport cover_report(const Trajectory& traj, double t0 = 1.0);

/// One unit cell n + [0,1)^d of the integer lattice, placed at the origin.
struct LatticeCell {
  std::array<std::int64_t, kMaxEuclideanDim> n{};
  double value = 0.0;  // max pop time over the cell's points
  bool certified = true;
};

struct LatticeField {
  int dim = 0;
  std::int64_t extent = 0;  // cells with |n|_inf <= extent
  std::vector<LatticeCell> cells;  // nonempty cells only, sorted by n

  /// X_n, 0 for cells without points.
  double value(std::span<const std::int64_t> n) const;
};

/// X_n = max{T_x : x in origin + n + [0,1)^d}, restricted to |n|_inf <= extent.
LatticeField lattice_field(const PointSet& ps, const MatchingResult& mr, const MetricPoint& origin,
                           std::int64_t extent);

/// The tree vertex within distance < 1/2 of x; nothing for edge midpoints.
std::optional<TreeVertex> project_tree_point(const TreeAddressing& tree, const TreePoint& x);

struct RenderStyle {
  double size_px = 800.0;
  double stroke_px = 1.0;
  bool draw_edges = true;
  bool draw_disk_boundary = true;
  std::string active_color = "#1f5fbf";
  std::string popped_color = "#9a9a9a";
  std::string edge_color = "#404040";
};

/// Balloons at time t: active centers as blue circles of radius t, popped
/// ones gray at their pop radius, and a segment between each pair that
/// popped each other. Hyperbolic circles are drawn in the Poincare disk.
std::string render_svg(const PointSet& ps, const MatchingResult& mr, double t,
                       const RenderStyle& style = {});

}  // namespace balloons
