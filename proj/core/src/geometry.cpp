#include "balloons/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "balloons/error.hpp"

namespace balloons {

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::euclidean: return "euclidean";
    case SpaceKind::hyperbolic: return "hyperbolic";
    case SpaceKind::real_tree: return "tree";
  }
  return "unknown";
}

Space Space::euclidean(int dim) {
  require(dim >= 1 && dim <= kMaxEuclideanDim, ErrorCode::invalid_argument,
          "euclidean dimension must be in [1, 8]");
  return Space(SpaceKind::euclidean, dim);
}

Space Space::real_tree(int degree) {
  require(degree >= 3, ErrorCode::invalid_argument, "tree degree must be at least 3");
  return Space(SpaceKind::real_tree, degree);
}

std::string Space::describe() const {
  switch (kind_) {
    case SpaceKind::euclidean: return "R^" + std::to_string(param_);
    case SpaceKind::hyperbolic: return "H^2";
    case SpaceKind::real_tree: return "T_" + std::to_string(param_);
  }
  return "?";
}

EuclideanPoint::EuclideanPoint(std::initializer_list<double> coords)
    : EuclideanPoint(std::span<const double>(coords.begin(), coords.size())) {}

EuclideanPoint::EuclideanPoint(std::span<const double> coords) {
  require(!coords.empty() && coords.size() <= kMaxEuclideanDim, ErrorCode::invalid_argument,
          "euclidean point dimension must be in [1, 8]");
  dim = static_cast<int>(coords.size());
  std::copy(coords.begin(), coords.end(), x.begin());
}

DiskPoint::DiskPoint(std::complex<double> z) : z_(z) {
  require(std::isfinite(z.real()) && std::isfinite(z.imag()) &&
              std::abs(z) <= 1.0 - kDiskBoundaryGuard,
          ErrorCode::invalid_argument, "disk coordinate too close to the ideal boundary");
}

DiskPoint DiskPoint::polar(double radius, double angle) {
  return DiskPoint(std::polar(std::tanh(radius / 2.0), angle));
}

double DiskPoint::radius() const noexcept { return 2.0 * std::atanh(std::abs(z_)); }

TreePoint TreePoint::at_vertex(TreeVertex v) noexcept {
  if (v.depth == 0) return root();
  return {v, 1.0};
}

SpaceKind kind_of(const MetricPoint& p) noexcept {
  switch (p.index()) {
    case 0: return SpaceKind::euclidean;
    case 1: return SpaceKind::hyperbolic;
    default: return SpaceKind::real_tree;
  }
}

const TreeAddressing& shared_tree_addressing(int degree) {
  constexpr int kCached = 64;
  static std::once_flag once;
  static std::vector<std::unique_ptr<TreeAddressing>> table;
  std::call_once(once, [] {
    for (int d = 0; d < kCached; ++d) {
      table.push_back(d >= 3 ? std::make_unique<TreeAddressing>(d) : nullptr);
    }
  });
  if (degree >= 3 && degree < kCached) return *table[static_cast<std::size_t>(degree)];
  thread_local std::unique_ptr<TreeAddressing> spare;
  if (!spare || spare->degree() != degree) spare = std::make_unique<TreeAddressing>(degree);
  return *spare;
}

BoxWindow make_box(std::span<const double> corner, std::span<const double> sides) {
  require(corner.size() == sides.size(), ErrorCode::invalid_argument,
          "box corner and sides differ in dimension");
  return {EuclideanPoint(corner), EuclideanPoint(sides)};
}

BoxWindow make_cube(int dim, double side) {
  BoxWindow box;
  box.corner.dim = dim;
  box.sides.dim = dim;
  for (int i = 0; i < dim; ++i) box.sides.x[static_cast<std::size_t>(i)] = side;
  return box;
}

void validate(const Space& space, const Window& window) {
  switch (space.kind()) {
    case SpaceKind::euclidean: {
      const auto* box = std::get_if<BoxWindow>(&window);
      require(box != nullptr, ErrorCode::invalid_argument, "euclidean space needs a box window");
      require(box->corner.dim == space.dim() && box->sides.dim == space.dim(),
              ErrorCode::invalid_argument, "box window dimension mismatch");
      for (int i = 0; i < space.dim(); ++i) {
        require(box->sides[i] >= 0.0 && std::isfinite(box->sides[i]), ErrorCode::invalid_argument,
                "box sides must be nonnegative");
      }
      return;
    }
    case SpaceKind::hyperbolic: {
      const auto* disk = std::get_if<DiskWindow>(&window);
      require(disk != nullptr, ErrorCode::invalid_argument, "hyperbolic space needs a disk window");
      require(disk->radius >= 0.0, ErrorCode::invalid_argument, "disk radius must be nonnegative");
      require(std::tanh(disk->radius / 2.0) <= 1.0 - kDiskBoundaryGuard,
              ErrorCode::invalid_argument, "disk window exceeds representable radius");
      return;
    }
    case SpaceKind::real_tree: {
      const auto* ball = std::get_if<TreeBallWindow>(&window);
      require(ball != nullptr, ErrorCode::invalid_argument, "tree space needs a ball window");
      require(ball->radius >= 0.0, ErrorCode::invalid_argument, "tree ball radius must be nonnegative");
      require(std::ceil(ball->radius) <= shared_tree_addressing(space.degree()).max_depth(),
              ErrorCode::size_guard, "tree ball radius exceeds addressable depth");
      return;
    }
  }
}

double measure(const Space& space, const Window& window) {
  validate(space, window);
  switch (space.kind()) {
    case SpaceKind::euclidean: {
      const auto& box = std::get<BoxWindow>(window);
      double m = 1.0;
      for (int i = 0; i < box.sides.dim; ++i) m *= box.sides[i];
      return m;
    }
    case SpaceKind::hyperbolic:
      return ball_volume(space, std::get<DiskWindow>(window).radius);
    case SpaceKind::real_tree:
      return ball_volume(space, std::get<TreeBallWindow>(window).radius);
  }
  return 0.0;
}

namespace {

void check_kind(const Space& space, const MetricPoint& p) {
  require(kind_of(p) == space.kind(), ErrorCode::invalid_argument,
          "point does not belong to the space");
  if (space.kind() == SpaceKind::euclidean) {
    require(std::get<EuclideanPoint>(p).dim == space.dim(), ErrorCode::invalid_argument,
            "point dimension does not match the space");
  }
}

}  // namespace

bool contains(const Space& space, const Window& window, const MetricPoint& p) {
  check_kind(space, p);
  switch (space.kind()) {
    case SpaceKind::euclidean: {
      const auto& box = std::get<BoxWindow>(window);
      const auto& x = std::get<EuclideanPoint>(p);
      for (int i = 0; i < x.dim; ++i) {
        if (x[i] < box.corner[i] || x[i] >= box.corner[i] + box.sides[i]) return false;
      }
      return true;
    }
    case SpaceKind::hyperbolic:
      return std::get<DiskPoint>(p).radius() <= std::get<DiskWindow>(window).radius;
    case SpaceKind::real_tree:
      return tree_root_distance(std::get<TreePoint>(p)) <= std::get<TreeBallWindow>(window).radius;
  }
  return false;
}

double boundary_distance(const Space& space, const Window& window, const MetricPoint& p) {
  check_kind(space, p);
  switch (space.kind()) {
    case SpaceKind::euclidean: {
      const auto& box = std::get<BoxWindow>(window);
      const auto& x = std::get<EuclideanPoint>(p);
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < x.dim; ++i) {
        best = std::min({best, x[i] - box.corner[i], box.corner[i] + box.sides[i] - x[i]});
      }
      return best;
    }
    case SpaceKind::hyperbolic:
      return std::get<DiskWindow>(window).radius - std::get<DiskPoint>(p).radius();
    case SpaceKind::real_tree:
      return std::get<TreeBallWindow>(window).radius - tree_root_distance(std::get<TreePoint>(p));
  }
  return 0.0;
}

MetricPoint window_center(const Space& space, const Window& window) {
  validate(space, window);
  switch (space.kind()) {
    case SpaceKind::euclidean: {
      const auto& box = std::get<BoxWindow>(window);
      EuclideanPoint c = box.corner;
      for (int i = 0; i < c.dim; ++i) c.x[static_cast<std::size_t>(i)] += box.sides[i] / 2.0;
      return c;
    }
    case SpaceKind::hyperbolic: return DiskPoint{};
    case SpaceKind::real_tree: return TreePoint::root();
  }
  return DiskPoint{};
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double hyperbolic_distance(std::complex<double> z, std::complex<double> w) noexcept {
  // 2 asinh(|z-w| / sqrt((1-|z|^2)(1-|w|^2))) avoids the acosh(1+eps) cancellation.
  const double num = std::abs(z - w);
  const double dz = 1.0 - std::norm(z);
  const double dw = 1.0 - std::norm(w);
  return 2.0 * std::asinh(num / std::sqrt(dz * dw));
}

double tree_root_distance(const TreePoint& x) noexcept {
  return static_cast<double>(x.edge.depth) - 1.0 + x.offset;
}

double tree_distance(const TreeAddressing& tree, const TreePoint& x0, const TreePoint& y0) {
  // canonical argument order keeps the floating-point evaluation symmetric
  const bool swap = std::tie(y0.edge, y0.offset) < std::tie(x0.edge, x0.offset);
  const TreePoint& x = swap ? y0 : x0;
  const TreePoint& y = swap ? x0 : y0;
  if (x.edge == y.edge) return std::abs(x.offset - y.offset);
  if (x.edge.depth < y.edge.depth && tree.is_ancestor_or_self(x.edge, y.edge)) {
    // y lies below x's far endpoint
    const double between = static_cast<double>(y.edge.depth - 1 - x.edge.depth);
    return (1.0 - x.offset) + between + y.offset;
  }
  const double between =
      static_cast<double>(tree.distance(tree.parent(x.edge), tree.parent(y.edge)));
  return x.offset + y.offset + between;
}

double distance(const Space& space, const MetricPoint& x, const MetricPoint& y) {
  check_kind(space, x);
  check_kind(space, y);
  switch (space.kind()) {
    case SpaceKind::euclidean:
      return euclidean_distance(std::get<EuclideanPoint>(x).coords(), std::get<EuclideanPoint>(y).coords());
    case SpaceKind::hyperbolic:
      return hyperbolic_distance(std::get<DiskPoint>(x).z(), std::get<DiskPoint>(y).z());
    case SpaceKind::real_tree:
      return tree_distance(shared_tree_addressing(space.degree()), std::get<TreePoint>(x), std::get<TreePoint>(y));
  }
  return 0.0;
}

double ball_volume(const Space& space, double s) {
  require(s >= 0.0, ErrorCode::invalid_argument, "ball radius must be nonnegative");
  switch (space.kind()) {
    case SpaceKind::euclidean: {
      // V_d = (2 pi / d) V_{d-2}, V_0 = 1, V_1 = 2
      const int d = space.dim();
      double unit = d % 2 == 0 ? 1.0 : 2.0;
      for (int k = d % 2 == 0 ? 2 : 3; k <= d; k += 2) unit *= 2.0 * std::numbers::pi / k;
      return unit * std::pow(s, d);
    }
    case SpaceKind::hyperbolic: {
      const double h = std::sinh(s / 2.0);
      return 4.0 * std::numbers::pi * h * h;
    }
    case SpaceKind::real_tree: {
      // d((d-1)^i - 1)/(d-2) at integer i, slope d(d-1)^i on [i, i+1]
      const double d = space.degree();
      const double i = std::floor(s);
      const double layer = std::pow(d - 1.0, i);
      return d * (layer - 1.0) / (d - 2.0) + d * layer * (s - i);
    }
  }
  return 0.0;
}

namespace {

MetricPoint sample_tree(const Space& space, double radius, Stream& rng) {
  const TreeAddressing& tree = shared_tree_addressing(space.degree());
  const auto levels = static_cast<std::uint32_t>(std::ceil(radius));
  // pick the level of the edge with probability proportional to its length measure
  double total = 0.0;
  std::array<double, 64> weight{};
  for (std::uint32_t k = 1; k <= levels; ++k) {
    const double length = std::min(1.0, radius - static_cast<double>(k - 1));
    weight[k] = static_cast<double>(tree.level_size(k)) * length;
    total += weight[k];
  }
  double u = rng.uniform() * total;
  std::uint32_t level = levels;
  for (std::uint32_t k = 1; k <= levels; ++k) {
    if (u < weight[k]) {
      level = k;
      break;
    }
    u -= weight[k];
  }
  const double length = std::min(1.0, radius - static_cast<double>(level - 1));
  TreePoint p;
  p.edge = {level, rng.below(tree.level_size(level))};
  p.offset = rng.uniform() * length;
  return p;
}

}  // namespace

MetricPoint sample_uniform(const Space& space, const Window& window, Stream& rng) {
  validate(space, window);
  switch (space.kind()) {
    case SpaceKind::euclidean: {
      const auto& box = std::get<BoxWindow>(window);
      EuclideanPoint p;
      p.dim = box.corner.dim;
      for (int i = 0; i < p.dim; ++i) {
        p.x[static_cast<std::size_t>(i)] = box.corner[i] + rng.uniform() * box.sides[i];
      }
      return p;
    }
    case SpaceKind::hyperbolic: {
      // radial CDF sinh^2(s/2) / sinh^2(R/2)
      const double radius = std::get<DiskWindow>(window).radius;
      const double s = 2.0 * std::asinh(std::sqrt(rng.uniform()) * std::sinh(radius / 2.0));
      const double angle = 2.0 * std::numbers::pi * rng.uniform();
      return DiskPoint::polar(s, angle);
    }
    case SpaceKind::real_tree:
      return sample_tree(space, std::get<TreeBallWindow>(window).radius, rng);
  }
  return DiskPoint{};
}

}  // namespace balloons
