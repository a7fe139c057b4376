#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "balloons/geometry.hpp"

namespace balloons {

/// A finite point configuration in a window. Points are stored per space in
/// flat arrays; the id of a point is its insertion index.
class PointSet {
 public:
  PointSet(Space space, Window window, std::uint64_t seed = 0);

  const Space& space() const noexcept { return space_; }
  const Window& window() const noexcept { return window_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  /// Appends a point; it must lie in the window. Returns its id.
  std::uint32_t add(const MetricPoint& p);
  void reserve(std::size_t n);

  MetricPoint point(std::size_t i) const;
  double distance(std::size_t i, std::size_t j) const;
  double distance_to(std::size_t i, const MetricPoint& q) const;
  double boundary_distance(std::size_t i) const;

  std::span<const double> coords(std::size_t i) const noexcept {
    const auto d = static_cast<std::size_t>(space_.dim());
    return {euclid_.data() + i * d, d};
  }
  std::complex<double> disk(std::size_t i) const noexcept { return disk_[i]; }
  const TreePoint& tree(std::size_t i) const noexcept { return tree_[i]; }
  /// Addressing tables; only valid for tree spaces.
  const TreeAddressing& addressing() const noexcept { return *addressing_; }

  friend bool operator==(const PointSet& a, const PointSet& b);

 private:
  Space space_;
  Window window_;
  std::uint64_t seed_;
  std::size_t size_ = 0;
  std::vector<double> euclid_;
  std::vector<std::complex<double>> disk_;
  std::vector<TreePoint> tree_;
  const TreeAddressing* addressing_ = nullptr;
};

/// Poisson process of the given intensity (points per unit measure).
PointSet sample_poisson(const Space& space, const Window& window, double intensity,
                        std::uint64_t seed);

/// Exactly n iid uniform points (binomial process).
PointSet sample_uniform_points(const Space& space, const Window& window, std::size_t n,
                               std::uint64_t seed);

/// Bernoulli(p) site percolation on the integer lattice inside a box, each
/// kept site displaced by a Gaussian of scale perturb_sd conditioned on
/// |displacement| < 1/2. Sites displaced out of the window are dropped.
PointSet sample_perturbed_lattice(const Space& space, const Window& window, double p,
                                  double perturb_sd, std::uint64_t seed);

struct DiagnosticsOptions {
  double tol = 1e-12;
  /// Number of smallest pair distances scanned for near-equal pairs.
  std::size_t smallest_pairs = 4096;
  /// Neighbor lists used for chain search.
  int chain_neighbors = 8;
  int chain_cap = 64;
};

struct Diagnostics {
  double min_gap = 0.0;
  std::uint64_t equidistant_quadruples = 0;
  int longest_descending_chain = 0;  // number of points in the chain
};

Diagnostics diagnostics(const PointSet& ps, const DiagnosticsOptions& options = {});

}  // namespace balloons
