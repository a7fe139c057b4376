#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "balloons/error.hpp"
#include "balloons/limits.hpp"
#include "oracles.hpp"

using namespace balloons;

namespace {

// brute-force max of X_n / |n|_inf over lower < |n|_inf <= L in 2 dimensions
double brute_limsup(const DenseField& f, std::int64_t L, std::int64_t lower) {
  double best = 0.0;
  for (std::int64_t a = -L; a <= L; ++a)
    for (std::int64_t b = -L; b <= L; ++b) {
      const std::int64_t norm = std::max(std::abs(a), std::abs(b));
      if (norm <= lower || norm == 0) continue;
      const std::int64_t n[2] = {a, b};
      best = std::max(best, f.at(n) / double(norm));
    }
  return best;
}

}  // namespace

TEST_SUITE("limits") {

TEST_CASE("vitali: trivial collections") {
  BallCollection one;
  one.centers = {EuclideanPoint{1.0, 2.0}};
  one.radii = {0.5};
  const auto j1 = vitali_subcover(one);
  CHECK(j1 == std::vector<std::size_t>{0});
  CHECK(check_vitali(one, j1).ok());

  BallCollection twins;
  twins.centers = {EuclideanPoint{1.0, 2.0}, EuclideanPoint{1.0, 2.0}};
  twins.radii = {0.5, 0.5};
  const auto j2 = vitali_subcover(twins);
  CHECK(j2.size() == 1);
  CHECK(check_vitali(twins, j2).ok());

  CHECK(vitali_subcover(BallCollection{}).empty());
}

TEST_CASE("vitali: random collections against a direct check") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BallCollection bc = random_balls(2, 2000, 100.0, 5.0, seed);
    const auto sel = vitali_subcover(bc);
    CHECK(check_vitali(bc, sel).ok());
    for (std::size_t a = 0; a < sel.size(); ++a) {
      // selection order is by nonincreasing radius
      if (a > 0) CHECK(bc.radii[sel[a]] <= bc.radii[sel[a - 1]]);
      for (std::size_t b = a + 1; b < sel.size(); ++b) {
        const double d = std::hypot(bc.centers[sel[a]][0] - bc.centers[sel[b]][0],
                                    bc.centers[sel[a]][1] - bc.centers[sel[b]][1]);
        CHECK(d > bc.radii[sel[a]] + bc.radii[sel[b]]);
      }
    }
    for (std::size_t i = 0; i < bc.size(); ++i) {
      bool covered = false;
      for (auto j : sel) {
        const double d = std::hypot(bc.centers[i][0] - bc.centers[j][0], bc.centers[i][1] - bc.centers[j][1]);
        if (bc.radii[j] >= bc.radii[i] && d + bc.radii[i] <= 3 * bc.radii[j] + 1e-12) covered = true;
      }
      CHECK(covered);
    }
  }
}

TEST_CASE("exact ball predicates") {
  // tangent closed balls meet
  CHECK(balls_intersect(EuclideanPoint{0.0, 0.0}, 2.0, EuclideanPoint{3.0, 4.0}, 3.0));
  CHECK_FALSE(balls_intersect(EuclideanPoint{0.0, 0.0}, 2.0, EuclideanPoint{3.0, 4.0}, 2.9999999999999));
  // 0.3 + 2.7 rounds to 3 in doubles but exceeds it exactly
  CHECK_FALSE(triple_blowup_contains(EuclideanPoint{0.0, 0.0}, 1.0, EuclideanPoint{0.3, 0.0}, 2.7));
  CHECK(triple_blowup_contains(EuclideanPoint{0.0, 0.0}, 1.0, EuclideanPoint{2.0, 0.0}, 1.0));
  CHECK(triple_blowup_contains(EuclideanPoint{0.0, 0.0}, 1.0, EuclideanPoint{0.0, 0.0}, 3.0));
  CHECK_FALSE(triple_blowup_contains(EuclideanPoint{0.0, 0.0}, 1.0, EuclideanPoint{0.0, 0.0}, 3.0000000000000004));
}

TEST_CASE("limsup estimator examples") {
  const DenseField one = constant_field(2, 100, 1.0);
  const LimsupEstimate e1 = limsup_estimator(one, 100);
  CHECK(e1.value == 1.0);
  CHECK(e1.norm == 1);
  // the bounded field decays on dyadic shells
  double prev = 2.0;
  for (std::int64_t L : {50, 100, 200, 400}) {
    const LimsupEstimate shell = limsup_estimator(constant_field(2, L, 1.0), L, L / 2);
    CHECK(shell.value < prev);
    prev = shell.value;
  }

  const DenseField sq = power_field(2, 64);
  for (std::int64_t L : {8, 16, 64}) {
    const LimsupEstimate e = limsup_estimator(sq, L);
    CHECK(e.value == double(L));
    CHECK(e.norm == L);
  }

  try {
    (void)limsup_estimator(one, 0);
    FAIL("expected invalid_argument");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::invalid_argument);
  }
}

TEST_CASE("limsup estimator against brute force") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DenseField f = pareto_field(2, 30, 1.5, seed);
    for (std::int64_t L : {1, 5, 17, 30})
      for (std::int64_t lower : {std::int64_t{0}, L / 2}) {
        const LimsupEstimate e = limsup_estimator(f, L, lower);
        CHECK(e.value == brute_limsup(f, L, lower));
        const std::int64_t norm = std::max(std::abs(e.argmax[0]), std::abs(e.argmax[1]));
        CHECK(norm == e.norm);
        CHECK(f.at(e.argmax) / double(norm) == e.value);
      }
  }
}

TEST_CASE("limsup estimator is monotone under domination") {
  Stream rng(3, "test.dominate");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DenseField f = pareto_field(2, 25, 2.0, seed);
    DenseField g = f;
    for (auto& v : g.values) v += rng.uniform() < 0.3 ? rng.uniform() * 5 : 0.0;
    for (std::int64_t L : {3, 10, 25}) CHECK(limsup_estimator(g, L).value >= limsup_estimator(f, L).value);
  }
}

TEST_CASE("pareto fields") {
  const DenseField f = pareto_field(2, 200, 1.0, 7);
  CHECK(f.values.size() == 401u * 401u);
  CHECK(*std::min_element(f.values.begin(), f.values.end()) >= 1.0);
  // P(X >= 10) = 0.1
  const double frac = double(std::count_if(f.values.begin(), f.values.end(), [](double x) { return x >= 10.0; })) /
                      double(f.values.size());
  CHECK(std::abs(frac - 0.1) < 4 * std::sqrt(0.09 / double(f.values.size())));
  CHECK(pareto_field(2, 50, 1.0, 7).values != pareto_field(2, 50, 1.0, 8).values);

  std::vector<double> med;
  for (std::int64_t L : {50, 100, 200, 400}) {
    std::vector<double> est;
    for (std::uint64_t seed = 0; seed < 15; ++seed) est.push_back(limsup_estimator(pareto_field(2, L, 1.0, seed), L).value);
    med.push_back(testing::median(est));
  }
  for (std::size_t i = 1; i < med.size(); ++i) CHECK(med[i] > med[i - 1]);
}

TEST_CASE("tail criterion") {
  CHECK(tail_criterion(3.0, 2) == TailClass::finite);
  CHECK(tail_criterion(2.0, 2) == TailClass::infinite);
  CHECK(tail_criterion(0.5, 1) == TailClass::infinite);
  CHECK(tail_criterion(1.0, 2) == TailClass::infinite);
  CHECK(tail_criterion(2.5, 2) == TailClass::finite);
}

TEST_CASE("dense copy of a balloon field") {
  const PointSet ps = sample_poisson(Space::euclidean(2), make_cube(2, 40.0), 1.0, 2);
  const MatchingResult mr = testing::match_checked(ps);
  const LatticeField lf = lattice_field(ps, mr, EuclideanPoint{20.0, 20.0}, 20);
  const DenseField df = to_dense(lf);
  CHECK(df.extent == 20);
  for (std::int64_t a = -20; a <= 20; ++a)
    for (std::int64_t b = -20; b <= 20; ++b) {
      const std::int64_t n[2] = {a, b};
      CHECK(df.at(n) == lf.value(n));
    }
}

}  // TEST_SUITE
