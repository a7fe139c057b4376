#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "balloons/balloon.hpp"
#include "balloons/error.hpp"
#include "oracles.hpp"

using namespace balloons;
using testing::match_checked;

namespace {

PointSet line(std::initializer_list<double> xs) {
  const double c[1] = {-100.0}, s[1] = {200.0};
  PointSet ps(Space::euclidean(1), make_box(c, s));
  for (double x : xs) ps.add(EuclideanPoint{x});
  return ps;
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t k = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++k;
  return k;
}

PointSet sample(SpaceKind kind, std::size_t n, std::uint64_t seed) {
  switch (kind) {
    case SpaceKind::euclidean: return sample_uniform_points(Space::euclidean(2), make_cube(2, 14.0), n, seed);
    case SpaceKind::hyperbolic: return sample_uniform_points(Space::hyperbolic(), DiskWindow{4.0}, n, seed);
    default: return sample_uniform_points(Space::real_tree(3), TreeBallWindow{5.5}, n, seed);
  }
}

}  // namespace

TEST_SUITE("balloon") {

TEST_CASE("trajectory on a line") {
  // (1,2) pops at 0.5, then (10,30) at 10
  const PointSet ps = line({1.0, 2.0, 10.0, 30.0});
  const MatchingResult mr = match_checked(ps);
  const Trajectory tr = compute_trajectory(ps, mr, EuclideanPoint{0.0});
  REQUIRE(tr.breakpoints.size() == 2);
  CHECK(tr.breakpoints[0].t == 0.0);
  CHECK(tr.breakpoints[0].R == 1.0);
  CHECK(tr.breakpoints[1].t == 0.5);
  CHECK(tr.breakpoints[1].R == 10.0);
  CHECK(tr.R_at(0.3) == 1.0);
  CHECK(tr.R_at(0.7) == 10.0);
  // the ball B(0, R_t + 2t) reaches the boundary at 100 once R_t = 100
  CHECK(tr.certified_until == doctest::Approx(10.0));

  const CoverReport rep = cover_report(tr, 1.0);
  CHECK_FALSE(rep.empty);
  CHECK(rep.min_ratio == doctest::Approx(1.0));
  CHECK(rep.argmin_t == doctest::Approx(10.0));
  CHECK(rep.covered_intervals.empty());

  const CoverReport early = cover_report(tr, 0.25);
  CHECK(early.max_inverse_ratio == doctest::Approx(1.0));
}

TEST_CASE("the {1, 2, 10} example") {
  const PointSet ps = line({1.0, 2.0, 10.0});
  const Trajectory tr = compute_trajectory(ps, match_checked(ps), EuclideanPoint{0.0});
  REQUIRE(!tr.breakpoints.empty());
  CHECK(tr.breakpoints[0].R == 1.0);
  // 10 is unmatched, so nothing beyond it is known and the horizon stops at the jump
  CHECK(tr.certified_until == doctest::Approx(0.5));
  const CoverReport rep = cover_report(tr, 0.25);
  CHECK(rep.min_ratio == doctest::Approx(2.0));
}

TEST_CASE("a lone point leaves no certified region") {
  const PointSet ps = line({5.0});
  const Trajectory tr = compute_trajectory(ps, match_checked(ps), EuclideanPoint{0.0});
  CHECK(tr.certified_until == 0.0);
  for (const auto& b : tr.breakpoints) CHECK(b.R == 5.0);
  CHECK(cover_report(tr, 1.0).empty);
}

TEST_CASE("cover report on a constant trajectory") {
  Trajectory tr;
  tr.breakpoints = {{0.0, 5.0}};
  tr.certified_until = 10.0;
  const CoverReport rep = cover_report(tr, 1.0);
  CHECK(rep.min_ratio == doctest::Approx(0.5));
  CHECK(rep.argmin_t == doctest::Approx(10.0));
  REQUIRE(rep.covered_intervals.size() == 1);
  CHECK(rep.covered_intervals[0].first == 5.0);
  CHECK(rep.covered_intervals[0].second == 10.0);
}

TEST_CASE("origin outside the window") {
  const PointSet ps = line({1.0, 2.0});
  try {
    (void)compute_trajectory(ps, match_checked(ps), EuclideanPoint{500.0});
    FAIL("expected outside_region");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::outside_region);
  }
}

TEST_CASE("pop times equal contact times of the balloon simulation") {
  for (auto kind : {SpaceKind::euclidean, SpaceKind::hyperbolic, SpaceKind::real_tree}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const PointSet ps = sample(kind, 200 + seed % 2, seed);
      const auto expect = testing::contact_simulation(ps);
      const auto got = pop_times(ps, match_checked(ps));
      for (std::size_t i = 0; i < ps.size(); ++i) {
        if (std::isinf(expect[i])) {
          CHECK(std::isinf(got[i]));
        } else {
          CHECK(std::abs(got[i] - expect[i]) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("trajectories are nondecreasing with breakpoints at pop times") {
  for (auto kind : {SpaceKind::euclidean, SpaceKind::hyperbolic, SpaceKind::real_tree}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const PointSet ps = sample_poisson(kind == SpaceKind::euclidean ? Space::euclidean(2)
                                         : kind == SpaceKind::hyperbolic ? Space::hyperbolic()
                                                                         : Space::real_tree(3),
                                         kind == SpaceKind::euclidean ? Window{make_cube(2, 60.0)}
                                         : kind == SpaceKind::hyperbolic ? Window{DiskWindow{7.0}}
                                                                         : Window{TreeBallWindow{10.0}},
                                         1.0, seed);
      const MatchingResult mr = match_checked(ps);
      const auto origin = window_center(ps.space(), ps.window());
      const Trajectory tr = compute_trajectory(ps, mr, origin);
      const auto pop = pop_times(ps, mr);
      std::vector<double> sorted_pops(pop.begin(), pop.end());
      std::sort(sorted_pops.begin(), sorted_pops.end());
      for (std::size_t i = 1; i < tr.breakpoints.size(); ++i) {
        CHECK(tr.breakpoints[i].R >= tr.breakpoints[i - 1].R);
        CHECK(tr.breakpoints[i].t > tr.breakpoints[i - 1].t);
        CHECK(std::binary_search(sorted_pops.begin(), sorted_pops.end(), tr.breakpoints[i].t));
      }
      // R_t agrees with a direct scan over active centers
      for (double t = 0.01; t < tr.certified_until; t += 0.37) {
        double direct = INFINITY;
        for (std::size_t i = 0; i < ps.size(); ++i)
          if (pop[i] > t) direct = std::min(direct, ps.distance_to(i, origin));
        CHECK(tr.R_at(t) == direct);
      }
      const CoverReport rep = cover_report(tr, 1.0);
      if (!rep.empty) {
        bool covered_after_t0 = false;
        for (const auto& [a, b] : rep.covered_intervals) covered_after_t0 |= b > rep.t0;
        if (rep.min_ratio < 1.0) CHECK(covered_after_t0);
        if (covered_after_t0) CHECK(rep.min_ratio <= 1.0);
      }
    }
  }
}

TEST_CASE("active balloons are disjoint") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PointSet ps = sample_poisson(Space::euclidean(2), make_cube(2, 30.0), 1.0, seed);
    const auto pop = pop_times(ps, match_checked(ps));
    for (double t : {0.1, 0.3, 0.6, 1.0, 2.0, 4.0}) {
      std::vector<std::size_t> active;
      for (std::size_t i = 0; i < ps.size(); ++i)
        if (pop[i] > t) active.push_back(i);
      std::uint64_t overlaps = 0;
      for (std::size_t a = 0; a < active.size(); ++a)
        for (std::size_t b = a + 1; b < active.size(); ++b)
          if (ps.distance(active[a], active[b]) <= 2 * t) ++overlaps;
      CHECK(overlaps == 0);
    }
  }
}

TEST_CASE("lattice field") {
  const Space e = Space::euclidean(2);
  PointSet ps(e, make_cube(2, 20.0));
  ps.add(EuclideanPoint{10.2, 10.3});
  ps.add(EuclideanPoint{15.2, 10.3});  // pop time 2.5
  const MatchingResult mr = match_checked(ps);
  const LatticeField f = lattice_field(ps, mr, EuclideanPoint{10.0, 10.0}, 8);
  const std::int64_t at0[2] = {0, 0}, at5[2] = {5, 0}, empty[2] = {3, -2};
  CHECK(f.value(at0) == 2.5);
  CHECK(f.value(at5) == 2.5);
  CHECK(f.value(empty) == 0.0);

  try {
    (void)lattice_field(sample_poisson(Space::hyperbolic(), DiskWindow{3.0}, 1.0, 1),
                        MatchingResult{}, DiskPoint({0.0, 0.0}), 2);
    FAIL("expected unsupported");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::unsupported);
  }
}

TEST_CASE("lattice field and trajectory agree up to the cell size") {
  // With x in cell n: |n|_inf <= |x|_2 + 1 and |x|_2 <= sqrt(2) (|n|_inf + 1).
  const double root2 = std::sqrt(2.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PointSet ps = sample_poisson(Space::euclidean(2), make_cube(2, 120.0), 1.0, seed);
    const MatchingResult mr = match_checked(ps);
    const MetricPoint origin = EuclideanPoint{60.0, 60.0};
    const Trajectory tr = compute_trajectory(ps, mr, origin);
    const LatticeField field = lattice_field(ps, mr, origin, 60);
    const double cu = tr.certified_until;

    double cells_all = 0.0, cells_early = 0.0;
    for (const auto& c : field.cells) {
      const std::int64_t norm = std::max(std::abs(c.n[0]), std::abs(c.n[1]));
      if (norm == 0) continue;
      cells_all = std::max(cells_all, c.value / double(norm));
      if (c.certified && c.value < cu) cells_early = std::max(cells_early, c.value / (root2 * (norm + 1.0)));
    }
    // each breakpoint b/R is bounded by its center's cell
    for (std::size_t i = 0; i < tr.breakpoints.size(); ++i) {
      const double R = tr.breakpoints[i].R;
      const double b = i + 1 < tr.breakpoints.size() ? tr.breakpoints[i + 1].t : cu;
      if (R < 3.0 || b > cu) continue;
      CHECK(b / R <= cells_all * (R + 1.0) / R + 1e-12);
    }
    // each early certified cell is seen by the trajectory
    const CoverReport rep = cover_report(tr, 1.0);
    CHECK(rep.max_inverse_ratio >= cells_early - 1e-12);
  }
}

TEST_CASE("render") {
  const Space e = Space::euclidean(2);
  PointSet two(e, make_cube(2, 10.0));
  two.add(EuclideanPoint{4.0, 5.0});
  two.add(EuclideanPoint{6.0, 5.0});
  const MatchingResult mr = match_checked(two);
  const std::string svg = render_svg(two, mr, 2.0);
  CHECK(count(svg, "class=\"popped\"") == 2);
  CHECK(count(svg, "class=\"active\"") == 0);
  CHECK(count(svg, "class=\"pair\"") == 1);
  CHECK(svg == render_svg(two, mr, 2.0));

  const PointSet many = sample_poisson(e, make_cube(2, 10.0), 1.0, 3);
  const std::string early = render_svg(many, match_checked(many), 1e-9);
  CHECK(count(early, "class=\"active\"") == many.size());
  CHECK(count(early, "class=\"pair\"") == 0);

  const PointSet hyp = sample_poisson(Space::hyperbolic(), DiskWindow{3.0}, 1.0, 3);
  const std::string hsvg = render_svg(hyp, match_checked(hyp), 0.5);
  CHECK(count(hsvg, "class=\"boundary\"") == 1);

  try {
    const PointSet tree = sample_poisson(Space::real_tree(3), TreeBallWindow{3.0}, 1.0, 1);
    (void)render_svg(tree, match_checked(tree), 1.0);
    FAIL("expected unsupported");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::unsupported);
  }
}

}  // TEST_SUITE
