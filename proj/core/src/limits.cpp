#include "balloons/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "balloons/error.hpp"
#include "balloons/rng.hpp"

namespace balloons {

namespace {

using boost::multiprecision::cpp_rational;

cpp_rational squared_distance_exact(const EuclideanPoint& x, const EuclideanPoint& y) {
  cpp_rational s = 0;
  for (int k = 0; k < x.dim; ++k) {
    const cpp_rational d = cpp_rational(x[k]) - cpp_rational(y[k]);
    s += d * d;
  }
  return s;
}

double squared_distance(const EuclideanPoint& x, const EuclideanPoint& y) {
  double s = 0.0;
  for (int k = 0; k < x.dim; ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
  return s;
}

// Decides a <= b for a = |x - y|^2 and b = bound^2, using the double values
// when they are clearly apart.
bool squared_at_most(const EuclideanPoint& x, const EuclideanPoint& y, const cpp_rational& bound, double approx) {
  const double d2 = squared_distance(x, y);
  const double b2 = approx * approx;
  const double slack = 1e-9 * (d2 + b2 + 1e-300);
  if (d2 < b2 - slack) return true;
  if (d2 > b2 + slack) return false;
  return squared_distance_exact(x, y) <= bound * bound;
}

void check_same_dim(const EuclideanPoint& x, const EuclideanPoint& y) {
  require(x.dim == y.dim, ErrorCode::invalid_argument, "ball dimensions differ");
}

}  // namespace

bool balls_intersect(const EuclideanPoint& x, double rx, const EuclideanPoint& y, double ry) {
  check_same_dim(x, y);
  return squared_at_most(x, y, cpp_rational(rx) + cpp_rational(ry), rx + ry);
}

bool triple_blowup_contains(const EuclideanPoint& y, double ry, const EuclideanPoint& x, double rx) {
  check_same_dim(x, y);
  const cpp_rational slack = 3 * cpp_rational(ry) - cpp_rational(rx);
  if (slack < 0) return false;
  return squared_at_most(x, y, slack, 3.0 * ry - rx);
}

std::vector<std::size_t> vitali_subcover(const BallCollection& bc) {
  require(bc.centers.size() == bc.radii.size(), ErrorCode::invalid_argument, "centers and radii differ in length");
  for (double r : bc.radii) require(r > 0.0 && std::isfinite(r), ErrorCode::invalid_argument, "radii must be positive");
  std::vector<std::size_t> order(bc.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return bc.radii[a] > bc.radii[b]; });
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    bool free = true;
    for (std::size_t j : kept) {
      if (balls_intersect(bc.centers[i], bc.radii[i], bc.centers[j], bc.radii[j])) {
        free = false;
        break;
      }
    }
    if (free) kept.push_back(i);
  }
  return kept;
}

VitaliCheck check_vitali(const BallCollection& bc, std::span<const std::size_t> selected) {
  VitaliCheck out;
  for (std::size_t a = 0; a < selected.size(); ++a) {
    for (std::size_t b = a + 1; b < selected.size(); ++b) {
      const auto i = selected[a], j = selected[b];
      if (balls_intersect(bc.centers[i], bc.radii[i], bc.centers[j], bc.radii[j])) ++out.intersecting_pairs;
    }
  }
  for (std::size_t i = 0; i < bc.size(); ++i) {
    const bool covered = std::any_of(selected.begin(), selected.end(), [&](std::size_t j) {
      return triple_blowup_contains(bc.centers[j], bc.radii[j], bc.centers[i], bc.radii[i]);
    });
    if (!covered) ++out.uncovered;
  }
  return out;
}

BallCollection random_balls(int dim, std::size_t n, double side, double max_radius, std::uint64_t seed) {
  require(dim >= 1 && dim <= kMaxEuclideanDim, ErrorCode::invalid_argument, "bad dimension");
  Stream rng(seed, "vitali.balls");
  BallCollection bc;
  bc.centers.reserve(n);
  bc.radii.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    EuclideanPoint c;
    c.dim = dim;
    for (int k = 0; k < dim; ++k) c.x[static_cast<std::size_t>(k)] = side * rng.uniform();
    bc.centers.push_back(c);
    bc.radii.push_back(max_radius * (1.0 - rng.uniform()));
  }
  return bc;
}

std::size_t DenseField::index(std::span<const std::int64_t> n) const {
  require(static_cast<int>(n.size()) == dim, ErrorCode::invalid_argument, "index dimension mismatch");
  std::size_t idx = 0;
  const auto w = static_cast<std::size_t>(2 * extent + 1);
  for (auto v : n) {
    require(v >= -extent && v <= extent, ErrorCode::outside_region, "index outside the field");
    idx = idx * w + static_cast<std::size_t>(v + extent);
  }
  return idx;
}

DenseField make_field(int dim, std::int64_t extent, double fill) {
  require(dim >= 1 && dim <= kMaxEuclideanDim, ErrorCode::invalid_argument, "bad dimension");
  require(extent >= 0, ErrorCode::invalid_argument, "extent must be nonnegative");
  double cells = std::pow(2.0 * static_cast<double>(extent) + 1.0, dim);
  require(cells <= 1e8, ErrorCode::size_guard, "field too large");
  DenseField f;
  f.dim = dim;
  f.extent = extent;
  f.values.assign(static_cast<std::size_t>(cells), fill);
  return f;
}

namespace {

// Calls g(index, n) for every cell of the box in storage order.
template <class G>
void for_each_cell(const DenseField& f, G&& g) {
  std::vector<std::int64_t> n(static_cast<std::size_t>(f.dim), -f.extent);
  for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
    g(idx, std::span<const std::int64_t>(n));
    for (int k = f.dim - 1; k >= 0; --k) {
      auto& c = n[static_cast<std::size_t>(k)];
      if (++c <= f.extent) break;
      c = -f.extent;
    }
  }
}

std::int64_t inf_norm(std::span<const std::int64_t> n) {
  std::int64_t m = 0;
  for (auto v : n) m = std::max(m, v < 0 ? -v : v);
  return m;
}

}  // namespace

DenseField constant_field(int dim, std::int64_t extent, double value) { return make_field(dim, extent, value); }

DenseField power_field(int dim, std::int64_t extent) {
  DenseField f = make_field(dim, extent);
  for_each_cell(f, [&](std::size_t idx, std::span<const std::int64_t> n) {
    const auto m = static_cast<double>(inf_norm(n));
    f.values[idx] = m * m;
  });
  return f;
}

DenseField pareto_field(int dim, std::int64_t extent, double beta, std::uint64_t seed) {
  require(beta > 0.0, ErrorCode::invalid_argument, "tail index must be positive");
  DenseField f = make_field(dim, extent);
  Stream rng(seed, "field.pareto");
  for (double& x : f.values) x = std::pow(rng.uniform_open(), -1.0 / beta);
  return f;
}

DenseField to_dense(const LatticeField& field) {
  DenseField f = make_field(field.dim, field.extent);
  for (const auto& c : field.cells) {
    f.values[f.index(std::span<const std::int64_t>(c.n.data(), static_cast<std::size_t>(field.dim)))] = c.value;
  }
  return f;
}

LimsupEstimate limsup_estimator(const DenseField& field, std::int64_t L, std::int64_t lower) {
  require(L >= 1, ErrorCode::invalid_argument, "L must be at least 1");
  require(L <= field.extent, ErrorCode::outside_region, "L exceeds the field extent");
  require(lower >= 0 && lower < L, ErrorCode::invalid_argument, "lower cutoff must lie in [0, L)");
  LimsupEstimate best;
  best.value = -std::numeric_limits<double>::infinity();
  for_each_cell(field, [&](std::size_t idx, std::span<const std::int64_t> n) {
    const auto m = inf_norm(n);
    if (m <= lower || m > L) return;
    const double v = field.values[idx] / static_cast<double>(m);
    if (v > best.value) {
      best.value = v;
      best.argmax.assign(n.begin(), n.end());
      best.norm = m;
    }
  });
  return best;
}

TailClass tail_criterion(double beta, int d) {
  require(beta > 0.0, ErrorCode::invalid_argument, "tail index must be positive");
  require(d >= 1, ErrorCode::invalid_argument, "dimension must be positive");
  return beta <= d ? TailClass::infinite : TailClass::finite;
}

}  // namespace balloons
