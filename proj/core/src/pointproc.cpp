#include "balloons/pointproc.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "balloons/error.hpp"
#include "balloons/spatial_index.hpp"

namespace balloons {

PointSet::PointSet(Space space, Window window, std::uint64_t seed)
    : space_(space), window_(std::move(window)), seed_(seed) {
  validate(space_, window_);
  if (space_.kind() == SpaceKind::real_tree) addressing_ = &shared_tree_addressing(space_.degree());
}

void PointSet::reserve(std::size_t n) {
  switch (space_.kind()) {
    case SpaceKind::euclidean: euclid_.reserve(n * static_cast<std::size_t>(space_.dim())); break;
    case SpaceKind::hyperbolic: disk_.reserve(n); break;
    case SpaceKind::real_tree: tree_.reserve(n); break;
  }
}

std::uint32_t PointSet::add(const MetricPoint& p) {
  require(contains(space_, window_, p), ErrorCode::outside_region, "point lies outside the window");
  require(size_ < kNoPoint, ErrorCode::size_guard, "too many points");
  switch (space_.kind()) {
    case SpaceKind::euclidean: {
      const auto c = std::get<EuclideanPoint>(p).coords();
      euclid_.insert(euclid_.end(), c.begin(), c.end());
      break;
    }
    case SpaceKind::hyperbolic: disk_.push_back(std::get<DiskPoint>(p).z()); break;
    case SpaceKind::real_tree: {
      const auto& t = std::get<TreePoint>(p);
      require(addressing_->valid(t.edge) && t.edge.depth >= 1 && t.offset >= 0.0 && t.offset <= 1.0,
              ErrorCode::invalid_argument, "malformed tree point");
      tree_.push_back(t);
      break;
    }
  }
  return static_cast<std::uint32_t>(size_++);
}

MetricPoint PointSet::point(std::size_t i) const {
  switch (space_.kind()) {
    case SpaceKind::euclidean: return EuclideanPoint(coords(i));
    case SpaceKind::hyperbolic: return DiskPoint(disk_[i]);
    case SpaceKind::real_tree: return tree_[i];
  }
  return DiskPoint{};
}

double PointSet::distance(std::size_t i, std::size_t j) const {
  switch (space_.kind()) {
    case SpaceKind::euclidean: return euclidean_distance(coords(i), coords(j));
    case SpaceKind::hyperbolic: return hyperbolic_distance(disk_[i], disk_[j]);
    case SpaceKind::real_tree: return tree_distance(*addressing_, tree_[i], tree_[j]);
  }
  return 0.0;
}

double PointSet::distance_to(std::size_t i, const MetricPoint& q) const {
  return balloons::distance(space_, point(i), q);
}

double PointSet::boundary_distance(std::size_t i) const {
  return balloons::boundary_distance(space_, window_, point(i));
}

bool operator==(const PointSet& a, const PointSet& b) {
  return a.space_ == b.space_ && a.seed_ == b.seed_ && a.size_ == b.size_ && a.euclid_ == b.euclid_ &&
         a.disk_ == b.disk_ &&
         std::equal(a.tree_.begin(), a.tree_.end(), b.tree_.begin(), b.tree_.end(),
                    [](const TreePoint& x, const TreePoint& y) {
                      return x.edge == y.edge && x.offset == y.offset;
                    });
}

PointSet sample_poisson(const Space& space, const Window& window, double intensity,
                        std::uint64_t seed) {
  require(intensity > 0.0 && std::isfinite(intensity), ErrorCode::invalid_argument,
          "intensity must be positive");
  const double mean = intensity * measure(space, window);
  Stream count_rng(seed, "poisson.count");
  // a zero-measure window is legal and simply holds no points
  const auto n = mean > 0.0 ? static_cast<std::size_t>(std::poisson_distribution<std::int64_t>(mean)(count_rng)) : 0;
  PointSet ps(space, window, seed);
  ps.reserve(n);
  Stream rng(seed, "poisson.points");
  for (std::size_t i = 0; i < n; ++i) ps.add(sample_uniform(space, window, rng));
  return ps;
}

PointSet sample_uniform_points(const Space& space, const Window& window, std::size_t n,
                               std::uint64_t seed) {
  require(n == 0 || measure(space, window) > 0.0, ErrorCode::invalid_argument,
          "cannot place points in a window of zero measure");
  PointSet ps(space, window, seed);
  ps.reserve(n);
  Stream rng(seed, "uniform.points");
  for (std::size_t i = 0; i < n; ++i) ps.add(sample_uniform(space, window, rng));
  return ps;
}

PointSet sample_perturbed_lattice(const Space& space, const Window& window, double p,
                                  double perturb_sd, std::uint64_t seed) {
  if (space.kind() != SpaceKind::euclidean) fail(ErrorCode::unsupported, "perturbed lattice needs euclidean space");
  require(p > 0.0 && p <= 1.0, ErrorCode::invalid_argument, "keep probability must be in (0, 1]");
  require(perturb_sd >= 0.0, ErrorCode::invalid_argument, "perturbation scale must be nonnegative");
  validate(space, window);
  const auto& box = std::get<BoxWindow>(window);
  const int d = space.dim();
  std::array<std::int64_t, kMaxEuclideanDim> lo{}, hi{};
  for (int i = 0; i < d; ++i) {
    const auto a = static_cast<std::size_t>(i);
    lo[a] = static_cast<std::int64_t>(std::ceil(box.corner[i]));
    hi[a] = static_cast<std::int64_t>(std::ceil(box.corner[i] + box.sides[i])) - 1;  // half-open
    if (hi[a] < lo[a]) return PointSet(space, window, seed);
  }
  PointSet ps(space, window, seed);
  Stream keep(seed, "lattice.keep");
  Stream shift(seed, "lattice.shift");
  std::normal_distribution<double> normal(0.0, 1.0);
  auto site = lo;
  EuclideanPoint x;
  x.dim = d;
  while (true) {
    if (keep.uniform() < p) {
      std::array<double, kMaxEuclideanDim> delta{};
      if (perturb_sd > 0.0) {
        double norm2;
        do {
          norm2 = 0.0;
          for (int i = 0; i < d; ++i) {
            const auto a = static_cast<std::size_t>(i);
            delta[a] = perturb_sd * normal(shift);
            norm2 += delta[a] * delta[a];
          }
        } while (norm2 >= 0.25);
      }
      for (int i = 0; i < d; ++i) {
        const auto a = static_cast<std::size_t>(i);
        x.x[a] = static_cast<double>(site[a]) + delta[a];
      }
      if (contains(space, window, x)) ps.add(x);
    }
    int i = 0;
    for (; i < d; ++i) {
      const auto a = static_cast<std::size_t>(i);
      if (++site[a] <= hi[a]) break;
      site[a] = lo[a];
    }
    if (i == d) break;
  }
  return ps;
}

namespace {

struct Edge {
  double dist;
  std::uint32_t a, b;
};

// Directed kNN lists via ball queries with a growing radius.
template <class Index>
std::vector<std::vector<Neighbor>> knn_lists(const PointSet& ps, const Index& index, int k) {
  const std::size_t n = ps.size();
  const auto want = static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(k), n - 1));
  const double typical =
      std::pow(measure(ps.space(), ps.window()) / static_cast<double>(n), 1.0 / ps.space().dim());
  std::vector<std::vector<Neighbor>> out(n);
  std::vector<Neighbor> found;
  for (std::uint32_t q = 0; q < n; ++q) {
    double r = typical;
    while (true) {
      found.clear();
      index.visit_ball(q, r, [&](std::uint32_t id, double d) {
        if (id != q) found.push_back({id, d});
        return true;
      });
      if (found.size() >= want) break;
      r *= 2.0;
    }
    std::sort(found.begin(), found.end(), [&](const Neighbor& x, const Neighbor& y) {
      return pair_less(x.dist, q, x.id, y.dist, q, y.id);
    });
    found.resize(want);
    out[q] = found;
  }
  return out;
}

template <class Index>
Diagnostics run_diagnostics(const PointSet& ps, const DiagnosticsOptions& opt) {
  Diagnostics rep;
  const auto ids = all_ids(ps);
  const Index index(ps, ids);
  const auto lists = knn_lists(ps, index, std::max(opt.chain_neighbors, 1));

  rep.min_gap = std::numeric_limits<double>::infinity();
  for (const auto& l : lists) rep.min_gap = std::min(rep.min_gap, l.front().dist);

  // Smallest pair distances: kNN candidates give an upper bound on the m-th
  // smallest; a ball sweep at that radius then collects every pair exactly.
  std::vector<Edge> cand;
  for (std::uint32_t q = 0; q < lists.size(); ++q) {
    for (const auto& nb : lists[q]) {
      if (q < nb.id) cand.push_back({nb.dist, q, nb.id});
      else cand.push_back({nb.dist, nb.id, q});
    }
  }
  auto edge_less = [](const Edge& x, const Edge& y) { return pair_less(x.dist, x.a, x.b, y.dist, y.a, y.b); };
  std::sort(cand.begin(), cand.end(), edge_less);
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](const Edge& x, const Edge& y) { return x.a == y.a && x.b == y.b; }),
             cand.end());
  const std::size_t m = std::min(opt.smallest_pairs, cand.size());
  std::vector<Edge> pairs;
  if (m == cand.size()) {
    pairs = cand;
  } else {
    const double radius = cand[m - 1].dist;
    for (std::uint32_t q = 0; q < ps.size(); ++q) {
      index.visit_ball(q, radius, [&](std::uint32_t id, double d) {
        if (q < id) pairs.push_back({d, q, id});
        return true;
      });
    }
    std::sort(pairs.begin(), pairs.end(), edge_less);
    pairs.resize(m);
  }
  // two-pointer count of pairs-of-pairs within tolerance
  std::size_t lo = 0;
  for (std::size_t hi = 0; hi < pairs.size(); ++hi) {
    while (pairs[hi].dist - pairs[lo].dist >= opt.tol) ++lo;
    rep.equidistant_quadruples += hi - lo;
  }

  // Longest walk along kNN edges with strictly decreasing step lengths:
  // dynamic programming over directed edges in increasing length.
  std::vector<Edge> directed;
  for (std::uint32_t q = 0; q < lists.size(); ++q) {
    for (const auto& nb : lists[q]) {
      directed.push_back({nb.dist, q, nb.id});
      directed.push_back({nb.dist, nb.id, q});
    }
  }
  std::sort(directed.begin(), directed.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.dist, x.a, x.b) < std::tie(y.dist, y.a, y.b);
  });
  directed.erase(std::unique(directed.begin(), directed.end(),
                             [](const Edge& x, const Edge& y) { return x.a == y.a && x.b == y.b; }),
                 directed.end());
  std::vector<int> best_from(ps.size(), 0);  // longest chain (in edges) leaving a vertex
  std::vector<int> pending;
  int longest = 0;
  for (std::size_t i = 0; i < directed.size();) {
    std::size_t j = i;
    while (j < directed.size() && directed[j].dist == directed[i].dist) ++j;
    pending.clear();
    for (std::size_t e = i; e < j; ++e) {
      pending.push_back(std::min(1 + best_from[directed[e].b], opt.chain_cap - 1));
    }
    for (std::size_t e = i; e < j; ++e) {
      best_from[directed[e].a] = std::max(best_from[directed[e].a], pending[e - i]);
      longest = std::max(longest, pending[e - i]);
    }
    i = j;
  }
  rep.longest_descending_chain = longest + 1;
  return rep;
}

}  // namespace

Diagnostics diagnostics(const PointSet& ps, const DiagnosticsOptions& options) {
  require(ps.size() >= 2, ErrorCode::invalid_argument, "diagnostics need at least two points");
  return dispatch_index(ps.space().kind(), [&](auto* tag) {
    using Index = std::remove_pointer_t<decltype(tag)>;
    return run_diagnostics<Index>(ps, options);
  });
}

}  // namespace balloons
