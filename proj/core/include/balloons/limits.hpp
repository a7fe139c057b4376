#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "balloons/balloon.hpp"
#include "balloons/geometry.hpp"

namespace balloons {

/// Closed Euclidean balls B(centers[i], radii[i]).
struct BallCollection {
  std::vector<EuclideanPoint> centers;
  std::vector<double> radii;

  std::size_t size() const noexcept { return radii.size(); }
};

/// Exact predicates on closed balls (decided in rational arithmetic when
/// floating point cannot separate the cases).
bool balls_intersect(const EuclideanPoint& x, double rx, const EuclideanPoint& y, double ry);
/// B(x, rx) is contained in B(y, 3 ry).
bool triple_blowup_contains(const EuclideanPoint& y, double ry, const EuclideanPoint& x, double rx);

/// Greedy largest-first disjoint subfamily; every ball lies in the 3-fold
/// blowup of a selected ball at least as large. Indices in selection order.
std::vector<std::size_t> vitali_subcover(const BallCollection& bc);

struct VitaliCheck {
  std::uint64_t intersecting_pairs = 0;
  std::uint64_t uncovered = 0;

  bool ok() const noexcept { return intersecting_pairs == 0 && uncovered == 0; }
};

VitaliCheck check_vitali(const BallCollection& bc, std::span<const std::size_t> selected);

/// Random collection: centers uniform in [0, side)^dim, radii uniform in (0, max_radius].
BallCollection random_balls(int dim, std::size_t n, double side, double max_radius, std::uint64_t seed);

/// Values X_n on the box |n|_inf <= extent of Z^dim, row-major with the last
/// coordinate fastest.
struct DenseField {
  int dim = 0;
  std::int64_t extent = 0;
  std::vector<double> values;

  std::size_t index(std::span<const std::int64_t> n) const;
  double at(std::span<const std::int64_t> n) const { return values[index(n)]; }
};

DenseField make_field(int dim, std::int64_t extent, double fill = 0.0);
DenseField constant_field(int dim, std::int64_t extent, double value);
/// X_n = |n|_inf^2.
DenseField power_field(int dim, std::int64_t extent);
/// iid Pareto(beta): P(X >= x) = x^{-beta} for x >= 1.
DenseField pareto_field(int dim, std::int64_t extent, double beta, std::uint64_t seed);
/// Dense copy of a lattice field; cells without points are 0.
DenseField to_dense(const LatticeField& field);

struct LimsupEstimate {
  double value = 0.0;
  std::vector<std::int64_t> argmax;
  std::int64_t norm = 0;
};

/// max of X_n / |n|_inf over lower < |n|_inf <= L (lower = 0: the whole box).
LimsupEstimate limsup_estimator(const DenseField& field, std::int64_t L, std::int64_t lower = 0);

enum class TailClass { finite, infinite };

/// For iid Pareto(beta) fields on Z^d: limsup X_n / |n| is infinite iff
/// E X^d = infinity, i.e. iff beta <= d.
TailClass tail_criterion(double beta, int d);

}  // namespace balloons
