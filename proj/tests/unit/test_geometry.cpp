#include <doctest.h>

#include <cmath>
#include <numbers>

#include "balloons/error.hpp"
#include "balloons/geometry.hpp"
#include "oracles.hpp"

using namespace balloons;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::io;
}

Window window_for(const Space& s, double size) {
  switch (s.kind()) {
    case SpaceKind::euclidean: return make_cube(s.dim(), size);
    case SpaceKind::hyperbolic: return DiskWindow{size};
    default: return TreeBallWindow{size};
  }
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("distance examples") {
  const Space e2 = Space::euclidean(2);
  CHECK(distance(e2, EuclideanPoint{0.0, 0.0}, EuclideanPoint{3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-15));

  const Space h = Space::hyperbolic();
  CHECK(distance(h, DiskPoint({0.0, 0.0}), DiskPoint({0.5, 0.0})) == doctest::Approx(std::log(3.0)).epsilon(1e-14));

  const Space t3 = Space::real_tree(3);
  const TreePoint a{{1, 0}, 0.5}, b{{1, 1}, 0.5};
  CHECK(distance(t3, a, b) == doctest::Approx(1.0).epsilon(1e-15));
  // child edge below (1,0) versus a midpoint on a sibling edge: 0.25 + 1 + 0.5
  const TreePoint c{{2, 1}, 0.25};
  CHECK(distance(t3, c, b) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(distance(t3, c, TreePoint::root()) == doctest::Approx(1.25).epsilon(1e-15));
}

TEST_CASE("mismatched kinds and bad arguments are rejected") {
  CHECK(code_of([] { (void)distance(Space::euclidean(2), DiskPoint({0.1, 0.0}), DiskPoint({0.2, 0.0})); }) ==
        ErrorCode::invalid_argument);
  CHECK(code_of([] { (void)ball_volume(Space::hyperbolic(), -1.0); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { (void)Space::real_tree(2); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { (void)Space::euclidean(0); }) == ErrorCode::invalid_argument);
  CHECK_THROWS_AS(DiskPoint({1.0, 0.0}), Error);
}

TEST_CASE("ball volume") {
  CHECK(ball_volume(Space::hyperbolic(), 2.0) == doctest::Approx(4 * std::numbers::pi * std::sinh(1.0) * std::sinh(1.0)));
  CHECK(ball_volume(Space::hyperbolic(), 2.0) == doctest::Approx(17.3554).epsilon(1e-5));
  CHECK(ball_volume(Space::real_tree(3), 1.0) == 3.0);
  CHECK(ball_volume(Space::euclidean(1), 2.0) == 4.0);
  CHECK(ball_volume(Space::euclidean(2), 1.0) == doctest::Approx(std::numbers::pi));
  CHECK(ball_volume(Space::euclidean(3), 1.0) == doctest::Approx(4.0 / 3.0 * std::numbers::pi));

  for (int d : {3, 4, 5}) {
    const Space t = Space::real_tree(d);
    for (int i = 0; i <= 10; ++i) {
      // d((d-1)^i - 1)/(d-2): edges of the radius-i ball, each of length one
      double edges = 0.0, level = d;
      for (int k = 0; k < i; ++k, level *= d - 1) edges += level;
      CHECK(ball_volume(t, i) == edges);
    }
  }

  for (const Space& s : {Space::euclidean(2), Space::hyperbolic(), Space::real_tree(3)}) {
    double prev = ball_volume(s, 0.0);
    for (int k = 1; k <= 4000; ++k) {
      const double x = k * 0.0025;
      const double v = ball_volume(s, x);
      CHECK(v > prev);
      // continuity: steps shrink with the grid
      CHECK(v - prev < 0.0025 * 4 * ball_volume(s, x + 1.0));
      prev = v;
    }
  }
}

TEST_CASE("triangle inequality on random triples") {
  for (const Space& s : {Space::euclidean(3), Space::hyperbolic(), Space::real_tree(3)}) {
    const Window w = window_for(s, s.kind() == SpaceKind::euclidean ? 10.0 : 5.0);
    Stream rng(11, "test.triangle");
    std::uint64_t bad = 0;
    for (int i = 0; i < 1'000'000; ++i) {
      const auto x = sample_uniform(s, w, rng), y = sample_uniform(s, w, rng), z = sample_uniform(s, w, rng);
      if (distance(s, x, z) > distance(s, x, y) + distance(s, y, z) + 1e-9) ++bad;
    }
    CHECK_MESSAGE(bad == 0, s.describe());
  }
}

TEST_CASE("distance is symmetric and vanishes on the diagonal") {
  for (const Space& s : {Space::euclidean(2), Space::hyperbolic(), Space::real_tree(4)}) {
    const Window w = window_for(s, 4.0);
    Stream rng(3, "test.symmetry");
    for (int i = 0; i < 20000; ++i) {
      const auto x = sample_uniform(s, w, rng), y = sample_uniform(s, w, rng);
      CHECK(distance(s, x, y) == distance(s, y, x));
      CHECK(distance(s, x, x) == 0.0);
    }
  }
}

TEST_CASE("hyperbolic distance is invariant under disk automorphisms") {
  const Space h = Space::hyperbolic();
  const Window w = DiskWindow{3.0};
  Stream rng(5, "test.mobius");
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    testing::Mobius f{std::polar(0.5 * rng.uniform(), 2 * std::numbers::pi * rng.uniform()),
                      2 * std::numbers::pi * rng.uniform()};
    const auto x = std::get<DiskPoint>(sample_uniform(h, w, rng)).z();
    const auto y = std::get<DiskPoint>(sample_uniform(h, w, rng)).z();
    const double before = hyperbolic_distance(x, y);
    const double after = hyperbolic_distance(f(x), f(y));
    worst = std::max(worst, std::abs(before - after));
    CHECK(before == doctest::Approx(testing::hyperbolic_distance_ref(x, y)).epsilon(1e-9));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("uniform sampling") {
  SUBCASE("unit square mean") {
    const Space e = Space::euclidean(2);
    const Window w = make_cube(2, 1.0);
    Stream rng(1, "test.sample");
    double sx = 0, sy = 0;
    for (int i = 0; i < 100000; ++i) {
      const auto p = std::get<EuclideanPoint>(sample_uniform(e, w, rng));
      sx += p[0];
      sy += p[1];
    }
    CHECK(std::abs(sx / 1e5 - 0.5) < 0.01);
    CHECK(std::abs(sy / 1e5 - 0.5) < 0.01);
  }
  SUBCASE("hyperbolic radial law") {
    const Space h = Space::hyperbolic();
    Stream rng(2, "test.sample");
    int inner = 0;
    for (int i = 0; i < 100000; ++i) {
      if (std::get<DiskPoint>(sample_uniform(h, DiskWindow{2.0}, rng)).radius() <= 1.0) ++inner;
    }
    const double expect = std::pow(std::sinh(0.5) / std::sinh(1.0), 2);
    CHECK(expect == doctest::Approx(0.1966).epsilon(1e-3));
    CHECK(std::abs(inner / 1e5 - expect) < 0.01);
  }
  SUBCASE("tree ball of radius one stays on the root edges") {
    const Space t = Space::real_tree(3);
    Stream rng(3, "test.sample");
    int per_edge[3] = {0, 0, 0};
    for (int i = 0; i < 30000; ++i) {
      const auto p = std::get<TreePoint>(sample_uniform(t, TreeBallWindow{1.0}, rng));
      REQUIRE(p.edge.depth == 1);
      REQUIRE(p.offset <= 1.0);
      ++per_edge[p.edge.index];
    }
    for (int c : per_edge) CHECK(std::abs(c - 10000) < 500);
  }
  SUBCASE("tree ball with a fractional radius follows edge length") {
    const Space t = Space::real_tree(3);
    Stream rng(4, "test.sample");
    const double R = 1.5;
    int beyond = 0;
    const int m = 60000;
    for (int i = 0; i < m; ++i) {
      const auto p = std::get<TreePoint>(sample_uniform(t, TreeBallWindow{R}, rng));
      REQUIRE(tree_root_distance(p) <= R);
      if (tree_root_distance(p) > 1.0) ++beyond;
    }
    // 3 unit edges inside radius 1, then 6 half edges
    CHECK(std::abs(beyond / double(m) - 0.5) < 0.01);
  }
}

TEST_CASE("window measure and boundary distance") {
  CHECK(measure(Space::euclidean(2), make_cube(2, 10.0)) == 100.0);
  CHECK(measure(Space::hyperbolic(), DiskWindow{3.0}) == doctest::Approx(ball_volume(Space::hyperbolic(), 3.0)));
  CHECK(measure(Space::real_tree(3), TreeBallWindow{2.0}) == 9.0);
  const Space e = Space::euclidean(2);
  CHECK(boundary_distance(e, make_cube(2, 10.0), EuclideanPoint{2.0, 7.0}) == doctest::Approx(2.0));
  CHECK(boundary_distance(Space::hyperbolic(), DiskWindow{3.0}, DiskPoint::polar(1.0, 0.3)) == doctest::Approx(2.0));
  CHECK(boundary_distance(Space::real_tree(3), TreeBallWindow{3.0}, TreePoint{{2, 4}, 0.5}) == doctest::Approx(1.5));
}

}  // TEST_SUITE
