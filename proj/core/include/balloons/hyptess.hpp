#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "balloons/matching.hpp"
#include "balloons/tree_addressing.hpp"

namespace balloons {

using Complex = std::complex<double>;

/// Distance from a triangle's center to each of its edges, (1/2) log 3.
double center_edge_distance();
/// Distance between two edge midpoints of one triangle, 2 log golden ratio.
double midpoint_distance();
/// Additive constant 2r + log 3 - a of the projection distortion bound.
double distortion_constant(double r);

/// Ideal triangle given by three points on the unit circle. For every
/// triangle except the root, ideal[0] and ideal[1] span the parent edge.
struct IdealTriangle {
  std::array<Complex, 3> ideal{};
};

/// Reflection across the geodesic with ideal endpoints p and q.
Complex reflect(Complex p, Complex q, Complex z);
/// Foot of the perpendicular from u to the geodesic with ideal ends p, q.
Complex geodesic_foot(Complex p, Complex q, Complex u);
/// Strictly beyond the geodesic pq as seen from `inside`.
bool beyond(Complex p, Complex q, Complex inside, Complex z);

/// The tree of ideal triangles obtained by reflecting the triangle with
/// corners 1, e^{2pi i/3}, e^{4pi i/3} across its edges; the tree vertices
/// are the images of 0. Stored by dense id of the 3-regular tree.
class Tessellation {
 public:
  int depth() const noexcept { return depth_; }
  /// Truncation radius r of the near-vertex parts.
  double r() const noexcept { return r_; }
  const TreeAddressing& tree() const noexcept { return tree_; }
  std::size_t size() const noexcept { return centers_.size(); }

  Complex center(TreeVertex v) const { return centers_[tree_.dense_id(v)]; }
  const IdealTriangle& triangle(TreeVertex v) const { return triangles_[tree_.dense_id(v)]; }
  Complex center_by_id(std::uint64_t id) const { return centers_[id]; }
  /// Vertex for edge `e` of triangle(v) (edges are (ideal[e], ideal[e+1 mod 3])).
  TreeVertex across(TreeVertex v, int e) const;

  friend Tessellation build_tessellation(int depth);

 private:
  Tessellation() : tree_(3) {}

  int depth_ = 0;
  double r_ = 0.0;
  TreeAddressing tree_;
  std::vector<Complex> centers_;
  std::vector<IdealTriangle> triangles_;
};

inline constexpr int kMaxTessellationDepth = 30;
/// Storage guard: depth 20 already holds 3.1 million triangles.
inline constexpr int kMaxStoredTessellationDepth = 20;

Tessellation build_tessellation(int depth);

struct ConstantsReport {
  double dist_center_edge = 0.0;  // at the root
  double dist_midpoints = 0.0;    // at the root
  /// Largest deviation from the exact values over every built triangle.
  double max_center_edge_error = 0.0;
  double max_midpoint_error = 0.0;
};

ConstantsReport verify_constants(const Tessellation& tess);

/// Edge midpoints z_1..z_ell along a tree path from the root whose turns
/// alternate left and right.
std::vector<Complex> zigzag_midpoints(const Tessellation& tess, int ell);

/// Area of {x in an ideal triangle : distance(x, center) <= r}, by adaptive
/// Gauss-Kronrod quadrature in polar coordinates about the center.
double truncated_area(double r);
/// The same area from the closed-form antiderivative (test oracle).
double truncated_area_closed_form(double r);
/// The r with truncated_area(r) = pi/2.
double truncation_radius();

struct AreaEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Hit-or-miss estimate of truncated_area(r): uniform points of the ball of
/// radius r about 0, counted when they fall in the root triangle.
AreaEstimate monte_carlo_truncated_area(double r, std::uint64_t samples, std::uint64_t seed);

struct Projection {
  TreeVertex vertex;
  double distance = 0.0;    // to the vertex
  bool truncated = false;   // within r of the vertex (in the near part)
};

/// Nearest tree vertex by descent through the triangles. Points on an edge
/// stay with the shallower triangle. Returns nothing past the built depth.
std::optional<Projection> try_project(const Tessellation& tess, Complex x);
Projection project_to_tree(const Tessellation& tess, Complex x);

struct DistortionReport {
  std::uint64_t pairs = 0;
  std::uint64_t violations = 0;
  /// max of distance(x, y) - (a d_tree + c) over the sampled pairs.
  double max_excess = 0.0;
};

/// Samples pairs of points in near parts of built triangles; half the pairs
/// use independent vertices, half a second vertex a short walk away.
DistortionReport distortion_check(const Tessellation& tess, std::uint64_t pairs, std::uint64_t seed);

struct TransiencePoint {
  double t = 0.0;
  std::uint64_t active = 0;        // certified active centers in core near parts
  double lambda_hat = 0.0;
  std::int64_t required_separation = 0;  // floor(2(t - c)/a)
  std::uint64_t pairs_checked = 0;
  std::uint64_t violations = 0;
};

struct TransienceReport {
  /// Every point this close to the origin is certified.
  double certified_radius = 0.0;
  std::uint64_t core_vertices = 0;
  double core_area = 0.0;
  std::vector<TransiencePoint> points;
  /// C in the envelope lambda_t ~ C t 4^{-t/a}, geometric-mean fit.
  double fitted_C = 0.0;
  double min_ratio = 0.0;  // min R_t / t over [t0, certified_until]
  double argmin_t = 0.0;
  double certified_until = 0.0;
  bool ratio_empty = true;
};

/// Projects the certified active centers of a hyperbolic run onto the tree
/// and checks their separation on a time grid. The core consists of the
/// built vertices v with distance(0, v) + r below the certified radius.
TransienceReport transience_bound_report(const PointSet& ps, const MatchingResult& mr, const Tessellation& tess,
                                         std::span<const double> t_grid, double t0 = 2.0);

}  // namespace balloons
