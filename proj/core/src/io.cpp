#include "balloons/io.hpp"

#include <fmt/format.h>

#include <json.hpp>

#include "balloons/error.hpp"

namespace balloons {

namespace {

using nlohmann::json;

json space_json(const Space& space, const Window& window) {
  json j;
  j["kind"] = to_string(space.kind());
  switch (space.kind()) {
    case SpaceKind::euclidean: {
      j["dim"] = space.dim();
      const auto& box = std::get<BoxWindow>(window);
      const auto corner = box.corner.coords();
      const auto sides = box.sides.coords();
      j["window"] = {{"corner", std::vector<double>(corner.begin(), corner.end())},
                     {"sides", std::vector<double>(sides.begin(), sides.end())}};
      break;
    }
    case SpaceKind::hyperbolic:
      j["window"] = {{"radius", std::get<DiskWindow>(window).radius}};
      break;
    case SpaceKind::real_tree:
      j["degree"] = space.degree();
      j["window"] = {{"radius", std::get<TreeBallWindow>(window).radius}};
      break;
  }
  return j;
}

std::pair<Space, Window> space_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const json& w = j.at("window");
  if (kind == "euclidean") {
    const auto corner = w.at("corner").get<std::vector<double>>();
    const auto sides = w.at("sides").get<std::vector<double>>();
    return {Space::euclidean(j.at("dim").get<int>()), make_box(corner, sides)};
  }
  if (kind == "hyperbolic") return {Space::hyperbolic(), DiskWindow{w.at("radius").get<double>()}};
  if (kind == "tree") return {Space::real_tree(j.at("degree").get<int>()), TreeBallWindow{w.at("radius").get<double>()}};
  fail(ErrorCode::invalid_input, "unknown space kind '" + kind + "'");
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_input, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string space_to_json(const Space& space, const Window& window) { return space_json(space, window).dump(); }

std::string pointset_to_json(const PointSet& ps) {
  json j;
  j["space"] = space_json(ps.space(), ps.window());
  j["seed"] = ps.seed();
  json pts = json::array();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    switch (ps.space().kind()) {
      case SpaceKind::euclidean: {
        const auto x = ps.coords(i);
        pts.push_back(std::vector<double>(x.begin(), x.end()));
        break;
      }
      case SpaceKind::hyperbolic:
        pts.push_back({ps.disk(i).real(), ps.disk(i).imag()});
        break;
      case SpaceKind::real_tree: {
        const auto& t = ps.tree(i);
        pts.push_back({t.edge.depth, t.edge.index, t.offset});
        break;
      }
    }
  }
  j["points"] = std::move(pts);
  return j.dump();
}

PointSet pointset_from_json(const std::string& text) {
  return guarded([&] {
    const json j = json::parse(text);
    auto [space, window] = space_from_json(j.at("space"));
    PointSet ps(space, window, j.at("seed").get<std::uint64_t>());
    const json& pts = j.at("points");
    ps.reserve(pts.size());
    for (const auto& p : pts) {
      switch (space.kind()) {
        case SpaceKind::euclidean:
          ps.add(EuclideanPoint(p.get<std::vector<double>>()));
          break;
        case SpaceKind::hyperbolic:
          ps.add(DiskPoint({p.at(0).get<double>(), p.at(1).get<double>()}));
          break;
        case SpaceKind::real_tree:
          ps.add(TreePoint{{p.at(0).get<std::uint32_t>(), p.at(1).get<std::uint64_t>()}, p.at(2).get<double>()});
          break;
      }
    }
    return ps;
  });
}

std::string matching_to_json(const MatchingResult& mr) {
  json j;
  json pairs = json::array();
  for (const auto& p : mr.pairs) {
    pairs.push_back({{"u", p.u}, {"v", p.v}, {"round", p.round}, {"dist", p.dist}, {"certified", p.certified}});
  }
  j["pairs"] = std::move(pairs);
  j["unmatched"] = mr.unmatched ? json(*mr.unmatched) : json(nullptr);
  json taint = json::array();
  for (const auto& t : mr.taint_log) taint.push_back({{"id", t.id}, {"scale", t.scale}});
  j["taint"] = std::move(taint);
  j["has_rounds"] = mr.has_rounds;
  j["has_certification"] = mr.has_certification;
  return j.dump();
}

MatchingResult matching_from_json(const std::string& text) {
  return guarded([&] {
    const json j = json::parse(text);
    MatchingResult mr;
    for (const auto& p : j.at("pairs")) {
      mr.pairs.push_back({p.at("u").get<std::uint32_t>(), p.at("v").get<std::uint32_t>(),
                          p.at("round").get<std::uint32_t>(), p.at("dist").get<double>(),
                          p.at("certified").get<bool>()});
    }
    if (!j.at("unmatched").is_null()) mr.unmatched = j.at("unmatched").get<std::uint32_t>();
    for (const auto& t : j.at("taint")) mr.taint_log.push_back({t.at("id").get<std::uint32_t>(), t.at("scale").get<double>()});
    mr.has_rounds = j.at("has_rounds").get<bool>();
    mr.has_certification = j.at("has_certification").get<bool>();
    return mr;
  });
}

std::string trajectory_to_json(const Trajectory& traj, const CoverReport& cover) {
  json j;
  json bp = json::array();
  for (const auto& b : traj.breakpoints) bp.push_back({b.t, b.R});
  j["breakpoints"] = std::move(bp);
  j["certified_until"] = traj.certified_until;
  j["strict_horizon"] = traj.strict_horizon;
  json cov = json::array();
  for (const auto& [a, b] : cover.covered_intervals) cov.push_back({a, b});
  j["cover"] = {{"intervals", std::move(cov)},
                {"t0", cover.t0},
                {"empty", cover.empty},
                {"min_ratio", cover.empty ? json(nullptr) : json(cover.min_ratio)},
                {"argmin_t", cover.argmin_t},
                {"max_inverse_ratio", cover.max_inverse_ratio}};
  return j.dump();
}

std::string tessellation_to_json(const Tessellation& tess) {
  json j;
  j["depth"] = tess.depth();
  j["r"] = tess.r();
  json verts = json::array();
  for (std::uint64_t id = 0; id < tess.size(); ++id) {
    const TreeVertex v = tess.tree().from_dense_id(id);
    const Complex z = tess.center_by_id(id);
    json ideal = json::array();
    for (const Complex& p : tess.triangle(v).ideal) ideal.push_back({p.real(), p.imag()});
    verts.push_back({{"address", tess.tree().path(v)}, {"z", {z.real(), z.imag()}}, {"ideal", std::move(ideal)}});
  }
  j["vertices"] = std::move(verts);
  return j.dump();
}

std::string colored_edges_csv(const ColoredMultigraph& g) {
  std::string out = "u,v,color\n";
  for (int c = 0; c < g.degree(); ++c) {
    for (std::uint32_t v = 0; v < g.size(); ++v) {
      const auto w = g.partner(v, c);
      if (v < w) out += fmt::format("{},{},{}\n", v, w, c);
    }
  }
  return out;
}

}  // namespace balloons
