#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include "balloons/rng.hpp"
#include "balloons/tree_addressing.hpp"

namespace balloons {

inline constexpr int kMaxEuclideanDim = 8;

/// Hyperbolic points closer than this to the ideal boundary are rejected.
inline constexpr double kDiskBoundaryGuard = 1e-12;

enum class SpaceKind { euclidean, hyperbolic, real_tree };

std::string to_string(SpaceKind kind);

/// One of the three metric measure spaces: R^d with Lebesgue measure, the
/// hyperbolic plane (curvature -1) with its area measure, or the d-regular
/// real tree with unit edges and length measure.
class Space {
 public:
  static Space euclidean(int dim);
  static Space hyperbolic() noexcept { return Space(SpaceKind::hyperbolic, 2); }
  static Space real_tree(int degree);

  SpaceKind kind() const noexcept { return kind_; }
  /// Euclidean dimension (2 for the hyperbolic plane, 1 for the tree).
  int dim() const noexcept { return kind_ == SpaceKind::real_tree ? 1 : param_; }
  /// Tree degree; only meaningful for real trees.
  int degree() const noexcept { return kind_ == SpaceKind::real_tree ? param_ : 0; }

  std::string describe() const;

  friend bool operator==(const Space&, const Space&) = default;

 private:
  Space(SpaceKind kind, int param) noexcept : kind_(kind), param_(param) {}

  SpaceKind kind_;
  int param_;
};

struct EuclideanPoint {
  std::array<double, kMaxEuclideanDim> x{};
  int dim = 0;

  EuclideanPoint() = default;
  EuclideanPoint(std::initializer_list<double> coords);
  explicit EuclideanPoint(std::span<const double> coords);

  std::span<const double> coords() const noexcept { return {x.data(), static_cast<std::size_t>(dim)}; }
  double operator[](int i) const noexcept { return x[static_cast<std::size_t>(i)]; }
};

/// Poincare-disk coordinate with |z| < 1 - kDiskBoundaryGuard.
class DiskPoint {
 public:
  DiskPoint() = default;
  explicit DiskPoint(std::complex<double> z);
  /// Point at hyperbolic distance `radius` from 0 in direction `angle`.
  static DiskPoint polar(double radius, double angle);

  std::complex<double> z() const noexcept { return z_; }
  /// Hyperbolic distance to the disk center.
  double radius() const noexcept;

 private:
  std::complex<double> z_{};
};

/// A point on the real tree: the edge is named by its endpoint farther from
/// the root, and `offset` in [0,1] is the distance from the nearer endpoint.
struct TreePoint {
  TreeVertex edge{1, 0};
  double offset = 0.0;

  /// The root vertex, which serves as the origin of the tree.
  static TreePoint root() noexcept { return {}; }
  /// The vertex `v` as a point (for the root, offset 0 on the first edge).
  static TreePoint at_vertex(TreeVertex v) noexcept;
};

using MetricPoint = std::variant<EuclideanPoint, DiskPoint, TreePoint>;

SpaceKind kind_of(const MetricPoint& p) noexcept;

// Windows: finite observation regions with closed-form measure.
struct BoxWindow {
  EuclideanPoint corner;
  EuclideanPoint sides;
};
struct DiskWindow {
  double radius = 0.0;  // hyperbolic radius about 0
};
struct TreeBallWindow {
  double radius = 0.0;  // radius about the root vertex
};
using Window = std::variant<BoxWindow, DiskWindow, TreeBallWindow>;

BoxWindow make_box(std::span<const double> corner, std::span<const double> sides);
/// The cube [0, side)^dim.
BoxWindow make_cube(int dim, double side);

void validate(const Space& space, const Window& window);
double measure(const Space& space, const Window& window);
bool contains(const Space& space, const Window& window, const MetricPoint& p);
/// Distance from p to the complement of the window, i.e. to its boundary.
double boundary_distance(const Space& space, const Window& window, const MetricPoint& p);
/// The natural origin: box center, disk center, or tree root.
MetricPoint window_center(const Space& space, const Window& window);

// Raw-coordinate metrics shared by the point containers and spatial indexes.
// Each is bitwise symmetric in its arguments.
double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept;
double hyperbolic_distance(std::complex<double> z, std::complex<double> w) noexcept;
double tree_distance(const TreeAddressing& tree, const TreePoint& x, const TreePoint& y);
double tree_root_distance(const TreePoint& x) noexcept;

double distance(const Space& space, const MetricPoint& x, const MetricPoint& y);

/// Process-wide addressing tables for a tree degree (thread-safe, built once).
const TreeAddressing& shared_tree_addressing(int degree);

/// Measure of a ball of radius s (about a vertex, for trees).
double ball_volume(const Space& space, double s);

/// Uniform draw from the window's normalized measure.
MetricPoint sample_uniform(const Space& space, const Window& window, Stream& rng);

}  // namespace balloons
