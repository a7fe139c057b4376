#include <doctest.h>

#include <sstream>
#include <string>

#include <json.hpp>

#include "balloons/io.hpp"
#include "oracles.hpp"

using namespace balloons;
using nlohmann::json;

TEST_SUITE("io") {

TEST_CASE("point sets round trip") {
  const PointSet sets[] = {
      sample_poisson(Space::euclidean(3), make_cube(3, 6.0), 1.0, 1),
      sample_poisson(Space::hyperbolic(), DiskWindow{4.0}, 1.0, 2),
      sample_poisson(Space::real_tree(4), TreeBallWindow{4.5}, 1.0, 3),
      PointSet(Space::euclidean(2), make_cube(2, 1.0), 9),
  };
  for (const PointSet& ps : sets) {
    const std::string text = pointset_to_json(ps);
    const PointSet back = pointset_from_json(text);
    CHECK(back == ps);
    CHECK(pointset_to_json(back) == text);
    CHECK(json::parse(text).contains("space"));
  }
}

TEST_CASE("matchings round trip") {
  const PointSet ps = sample_poisson(Space::euclidean(2), make_cube(2, 20.0), 1.0, 4);
  const MatchingResult mr = testing::match_checked(ps);
  const MatchingResult back = matching_from_json(matching_to_json(mr));
  CHECK(back.pairs == mr.pairs);
  CHECK(back.unmatched == mr.unmatched);
  CHECK(back.taint_log.size() == mr.taint_log.size());
  const json j = json::parse(matching_to_json(mr));
  REQUIRE(j["pairs"].size() == mr.pairs.size());
  const auto& first = j["pairs"][0];
  for (const char* key : {"u", "v", "round", "dist", "certified"}) CHECK(first.contains(key));
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS(pointset_from_json("{\"space\": 3}"));
  CHECK_THROWS(pointset_from_json("not json"));
  CHECK_THROWS(matching_from_json("[1, 2]"));
}

TEST_CASE("trajectory and tessellation documents") {
  const PointSet ps = sample_poisson(Space::euclidean(2), make_cube(2, 40.0), 1.0, 5);
  const MatchingResult mr = testing::match_checked(ps);
  const Trajectory tr = compute_trajectory(ps, mr, window_center(ps.space(), ps.window()));
  const json tj = json::parse(trajectory_to_json(tr, cover_report(tr, 1.0)));
  CHECK(tj["breakpoints"].size() == tr.breakpoints.size());
  CHECK(tj["certified_until"].get<double>() == tr.certified_until);

  const Tessellation tess = build_tessellation(3);
  const json xj = json::parse(tessellation_to_json(tess));
  CHECK(xj["r"].get<double>() == tess.r());
  CHECK(xj["vertices"].size() == tess.size());
}

TEST_CASE("colored edge list") {
  const ColoredMultigraph g = generate_configuration_model(50, 3, 8);
  const std::string csv = colored_edges_csv(g);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "u,v,color");
  int rows = 0;
  while (std::getline(in, line)) {
    unsigned u = 0, v = 0;
    int c = 0;
    char comma1 = 0, comma2 = 0;
    std::istringstream row(line);
    row >> u >> comma1 >> v >> comma2 >> c;
    CHECK(u < v);
    CHECK(g.partner(u, c) == v);
    ++rows;
  }
  CHECK(rows == 50 / 2 * 3);
}

}  // TEST_SUITE
