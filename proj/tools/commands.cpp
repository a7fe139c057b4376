#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "balloons/balloon.hpp"
#include "balloons/error.hpp"
#include "balloons/hyptess.hpp"
#include "balloons/io.hpp"
#include "balloons/limits.hpp"
#include "balloons/matching.hpp"
#include "balloons/pointproc.hpp"
#include "balloons/rng.hpp"
#include "balloons/treesep.hpp"

namespace balloons::cli {

using nlohmann::json;

namespace {

// Runs f(0..count-1) on up to `jobs` threads; results come back in index order.
template <class F>
auto parallel_runs(int count, int jobs, F&& f) {
  using R = decltype(f(0));
  std::vector<std::optional<R>> slots(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        slots[static_cast<std::size_t>(i)].emplace(f(i));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int j = 1; j < std::min(jobs, count); ++j) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);
  std::vector<R> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_number(double v) { return fmt::format("{}", v); }

void check_format(const RunConfig& cfg, bool svg_allowed = false) {
  if (cfg.format == "json" || cfg.format == "csv" || (svg_allowed && cfg.format == "svg")) return;
  fail(ErrorCode::invalid_argument, "unsupported --format '" + cfg.format + "' for " + cfg.command);
}

void check_counts(const RunConfig& cfg) {
  require(cfg.seeds >= 1, ErrorCode::invalid_argument, "--seeds must be at least 1");
  require(cfg.jobs >= 1, ErrorCode::invalid_argument, "--jobs must be at least 1");
}

std::pair<Space, Window> make_space(const RunConfig& cfg) {
  if (cfg.space == "euclidean") {
    const Space s = Space::euclidean(cfg.dim);
    return {s, make_cube(cfg.dim, cfg.window)};
  }
  if (cfg.space == "hyperbolic") return {Space::hyperbolic(), DiskWindow{cfg.window}};
  if (cfg.space == "tree") return {Space::real_tree(cfg.degree), TreeBallWindow{cfg.window}};
  fail(ErrorCode::invalid_argument, "--space must be euclidean, hyperbolic or tree");
}

MatchOptions match_options(const RunConfig& cfg) {
  MatchOptions opt;
  opt.kind = cfg.oracle ? MatcherKind::naive : MatcherKind::accelerated;
  return opt;
}

MatchingResult match(const RunConfig& cfg, const PointSet& ps) {
  // the oracle runs the literal synchronous rounds, then certifies
  if (cfg.oracle && ps.size() <= kBruteForceLimit) {
    MatchingResult mr = brute_force_matching(ps);
    certify(ps, mr);
    return mr;
  }
  return greedy_stable_matching(ps, match_options(cfg));
}

// Explicit points "x,y;x,y;..." in a box padded by 1 around them.
PointSet parse_points(const std::string& text) {
  std::vector<std::pair<double, double>> pts;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    std::istringstream p(item);
    double x = 0, y = 0;
    char comma = 0;
    if (!(p >> x >> comma >> y) || comma != ',') fail(ErrorCode::invalid_argument, "points must look like x,y;x,y");
    pts.emplace_back(x, y);
  }
  require(!pts.empty(), ErrorCode::invalid_argument, "no points given");
  double x0 = pts[0].first, x1 = x0, y0 = pts[0].second, y1 = y0;
  for (const auto& [x, y] : pts) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  const double corner[2] = {x0 - 1.0, y0 - 1.0};
  const double sides[2] = {x1 - x0 + 2.0, y1 - y0 + 2.0};
  PointSet ps(Space::euclidean(2), make_box(corner, sides));
  for (const auto& [x, y] : pts) ps.add(EuclideanPoint{x, y});
  return ps;
}

}  // namespace

std::uint64_t run_seed(const RunConfig& cfg, int index) {
  return derive_seed(cfg.seed, "run", static_cast<std::uint64_t>(index));
}

CommandResult run_simulate(const RunConfig& cfg, ArtifactWriter& out) {
  check_format(cfg);
  check_counts(cfg);
  const auto [space, window] = make_space(cfg);
  const auto grid = parse_grid(cfg.t_grid);
  struct Run {
    json row;
    std::uint64_t violations;
  };
  const auto runs = parallel_runs(cfg.seeds, cfg.jobs, [&](int i) {
    const std::uint64_t seed = run_seed(cfg, i);
    const PointSet ps = sample_poisson(space, window, cfg.intensity, seed);
    const MatchingResult mr = match(cfg, ps);
    const std::uint64_t unstable = verify_stability(ps, mr);
    const Trajectory traj = compute_trajectory(ps, mr, window_center(space, window));
    const CoverReport cover = cover_report(traj, cfg.t0);
    std::uint64_t certified = 0;
    for (const auto& p : mr.pairs) certified += p.certified ? 1 : 0;
    json R = json::array();
    for (double t : grid) {
      if (t < traj.certified_until) R.push_back({t, traj.R_at(t)});
    }
    json row = {{"seed", seed},
                {"points", ps.size()},
                {"pairs", mr.pairs.size()},
                {"certified_pairs", certified},
                {"unmatched", mr.unmatched.has_value()},
                {"stability_violations", unstable},
                {"certified_until", traj.certified_until},
                {"strict_horizon", traj.strict_horizon},
                {"breakpoints", traj.breakpoints.size()},
                {"min_ratio", cover.empty ? json(nullptr) : finite_or_null(cover.min_ratio)},
                {"argmin_t", cover.argmin_t},
                {"max_inverse_ratio", cover.max_inverse_ratio},
                {"R_grid", std::move(R)}};
    return Run{std::move(row), unstable};
  });
  CommandResult res;
  json rows = json::array();
  for (const auto& r : runs) {
    rows.push_back(r.row);
    res.violations += r.violations;
  }
  if (cfg.format == "json") {
    json doc = {{"space", json::parse(space_to_json(space, window))},
                {"intensity", cfg.intensity},
                {"t0", cfg.t0},
                {"runs", rows}};
    out.add("summary.json", doc.dump(2) + "\n");
  } else {
    std::string csv = "seed,points,pairs,certified_pairs,unmatched,stability_violations,certified_until,min_ratio,"
                      "max_inverse_ratio\n";
    for (const auto& r : rows) {
      csv += fmt::format("{},{},{},{},{},{},{},{},{}\n", r["seed"].get<std::uint64_t>(), r["points"].get<std::uint64_t>(),
                         r["pairs"].get<std::uint64_t>(), r["certified_pairs"].get<std::uint64_t>(),
                         r["unmatched"].get<bool>() ? 1 : 0, r["stability_violations"].get<std::uint64_t>(),
                         csv_number(r["certified_until"].get<double>()),
                         r["min_ratio"].is_null() ? std::string("") : csv_number(r["min_ratio"].get<double>()),
                         csv_number(r["max_inverse_ratio"].get<double>()));
    }
    out.add("summary.csv", csv);
  }
  res.summary = {{"runs", rows.size()}, {"stability_violations", res.violations}};
  return res;
}

CommandResult run_render(const RunConfig& cfg, ArtifactWriter& out) {
  check_format(cfg, true);
  std::optional<PointSet> ps;
  if (!cfg.points.empty()) {
    ps.emplace(parse_points(cfg.points));
  } else {
    const auto [space, window] = make_space(cfg);
    ps.emplace(sample_poisson(space, window, cfg.intensity, run_seed(cfg, 0)));
  }
  const MatchingResult mr = match(cfg, *ps);
  CommandResult res;
  res.violations = verify_stability(*ps, mr);
  out.add("balloons.svg", render_svg(*ps, mr, cfg.t));
  const auto pop = pop_times(*ps, mr);
  std::uint64_t active = 0;
  for (double p : pop) active += p > cfg.t ? 1 : 0;
  std::uint64_t popped_pairs = 0;
  for (const auto& p : mr.pairs) popped_pairs += p.dist / 2.0 <= cfg.t ? 1 : 0;
  res.summary = {{"points", ps->size()}, {"active", active}, {"popped_pairs", popped_pairs}, {"t", cfg.t}};
  return res;
}

CommandResult run_treesep(const RunConfig& cfg, ArtifactWriter& out) {
  check_format(cfg);
  check_counts(cfg);
  require(cfg.n >= 2 && cfg.n % 2 == 0 && cfg.n <= (1u << 30), ErrorCode::invalid_argument,
          "--n must be even and at most 2^30");
  const auto ds = parse_int_range(cfg.d_range);
  const auto ts = parse_int_range(cfg.t_range);
  struct Task {
    int d, t, seed_index;
  };
  std::vector<Task> tasks;
  for (int d : ds) {
    for (int t : ts) {
      for (int s = 0; s < cfg.seeds; ++s) tasks.push_back({d, t, s});
    }
  }
  struct Row {
    int d, t;
    double alpha, margin, density, double_edges;
    bool infeasible;
    std::uint64_t seed, violations;
  };
  const auto rows = parallel_runs(static_cast<int>(tasks.size()), cfg.jobs, [&](int i) {
    const Task& task = tasks[static_cast<std::size_t>(i)];
    const std::uint64_t seed = run_seed(cfg, task.seed_index);
    const auto g = generate_configuration_model(static_cast<std::uint32_t>(cfg.n), task.d, seed);
    const Graph graph = to_graph(g);
    const auto set = greedy_max_separated(graph, task.t, seed);
    const GapResult gap = gap_margin(task.d, task.t);
    return Row{task.d,
               task.t,
               bound_density(task.d, task.t),
               gap.margin,
               static_cast<double>(set.size()) / static_cast<double>(cfg.n),
               static_cast<double>(count_double_edges(g)),
               gap.infeasible,
               seed,
               is_t_separated(graph, set, task.t) ? 0u : 1u};
  });
  CommandResult res;
  if (cfg.format == "csv") {
    std::string csv = "d,t,alpha_star,margin,greedy_density,n,seed\n";
    for (const auto& r : rows) {
      csv += fmt::format("{},{},{},{},{},{},{}\n", r.d, r.t, csv_number(r.alpha), csv_number(r.margin),
                         csv_number(r.density), cfg.n, r.seed);
    }
    out.add("treesep.csv", csv);
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"d", r.d},
                     {"t", r.t},
                     {"alpha_star", r.alpha},
                     {"margin", finite_or_null(r.margin)},
                     {"infeasible", r.infeasible},
                     {"greedy_density", r.density},
                     {"double_edges", r.double_edges},
                     {"n", cfg.n},
                     {"seed", r.seed}});
    }
    out.add("treesep.json", arr.dump(2) + "\n");
  }
  for (const auto& r : rows) res.violations += r.violations;
  res.summary = {{"rows", rows.size()}, {"separation_violations", res.violations}};
  return res;
}

CommandResult run_verify_gap(const RunConfig& cfg, ArtifactWriter& out) {
  check_format(cfg);
  CommandResult res;
  std::string csv = "d,t,alpha_star,p,H,margin,infeasible,sufficient_condition\n";
  json arr = json::array();
  std::uint64_t feasible = 0;
  for (int d : parse_int_range(cfg.d_range)) {
    for (int t : parse_int_range(cfg.t_range)) {
      const GapResult g = gap_margin(d, t);
      if (!g.infeasible) {
        ++feasible;
        if (!(g.margin > 0.0)) ++res.violations;
      }
      csv += fmt::format("{},{},{},{},{},{},{},{}\n", d, t, csv_number(g.params.alpha), csv_number(g.p),
                         csv_number(g.H), csv_number(g.margin), g.infeasible ? 1 : 0, g.sufficient_condition ? 1 : 0);
      arr.push_back({{"d", d},
                     {"t", t},
                     {"alpha_star", g.params.alpha},
                     {"p", finite_or_null(g.p)},
                     {"H", g.H},
                     {"margin", finite_or_null(g.margin)},
                     {"infeasible", g.infeasible},
                     {"sufficient_condition", g.sufficient_condition}});
    }
  }
  if (cfg.format == "csv") {
    out.add("gap.csv", csv);
  } else {
    out.add("gap.json", arr.dump(2) + "\n");
  }
  res.summary = {{"feasible_cells", feasible}, {"nonpositive_margins", res.violations}};
  return res;
}

CommandResult run_hyptess(const RunConfig& cfg, ArtifactWriter& out) {
  check_format(cfg);
  check_counts(cfg);
  require(cfg.depth >= 1, ErrorCode::invalid_argument, "--depth must be at least 1");
  const Tessellation tess = build_tessellation(cfg.depth);
  const ConstantsReport consts = verify_constants(tess);
  const DistortionReport dist = distortion_check(tess, cfg.pairs, derive_seed(cfg.seed, "distortion"));
  const double a = midpoint_distance();
  json zig = json::array();
  const auto z = zigzag_midpoints(tess, std::min(cfg.depth, 10));
  for (std::size_t i = 1; i < z.size(); ++i) {
    zig.push_back({{"ell", i + 1}, {"error", hyperbolic_distance(z[0], z[i]) - static_cast<double>(i) * a}});
  }
  CommandResult res;
  res.violations = dist.violations;
  json doc = {{"depth", cfg.depth},
              {"r", tess.r()},
              {"a", a},
              {"c", distortion_constant(tess.r())},
              {"dist_center_edge", consts.dist_center_edge},
              {"dist_midpoints", consts.dist_midpoints},
              {"max_center_edge_error", consts.max_center_edge_error},
              {"max_midpoint_error", consts.max_midpoint_error},
              {"zigzag", zig},
              {"distortion", {{"pairs", dist.pairs}, {"violations", dist.violations}, {"max_excess", dist.max_excess}}}};
  if (cfg.transience) {
    const auto grid = parse_grid(cfg.t_grid);
    const auto reports = parallel_runs(cfg.seeds, cfg.jobs, [&](int i) {
      const std::uint64_t seed = run_seed(cfg, i);
      const PointSet ps = sample_poisson(Space::hyperbolic(), DiskWindow{cfg.window}, cfg.intensity, seed);
      const MatchingResult mr = match(cfg, ps);
      return std::make_pair(seed, transience_bound_report(ps, mr, tess, grid, cfg.t0));
    });
    json runs = json::array();
    for (const auto& [seed, rep] : reports) {
      json pts = json::array();
      for (const auto& p : rep.points) {
        res.violations += p.violations;
        pts.push_back({{"t", p.t},
                       {"active", p.active},
                       {"lambda_hat", p.lambda_hat},
                       {"required_separation", p.required_separation},
                       {"pairs_checked", p.pairs_checked},
                       {"violations", p.violations}});
      }
      runs.push_back({{"seed", seed},
                      {"certified_radius", rep.certified_radius},
                      {"core_vertices", rep.core_vertices},
                      {"fitted_C", rep.fitted_C},
                      {"certified_until", rep.certified_until},
                      {"min_ratio", rep.ratio_empty ? json(nullptr) : finite_or_null(rep.min_ratio)},
                      {"argmin_t", rep.argmin_t},
                      {"grid", std::move(pts)}});
    }
    doc["transience"] = std::move(runs);
  }
  out.add("hyptess.json", doc.dump(2) + "\n");
  if (cfg.depth <= 12) out.add("tessellation.json", tessellation_to_json(tess) + "\n");
  res.summary = {{"violations", res.violations}};
  return res;
}

CommandResult run_limsup(const RunConfig& cfg, ArtifactWriter& out) {
  check_format(cfg);
  check_counts(cfg);
  const auto Ls = parse_int_list(cfg.L_list);
  const std::int64_t extent = *std::max_element(Ls.begin(), Ls.end());
  if (cfg.field != "constant" && cfg.field != "power" && cfg.field != "pareto") {
    fail(ErrorCode::invalid_argument, "--field must be constant, power or pareto");
  }
  struct Row {
    std::int64_t L;
    double estimate, shell;
    std::uint64_t seed;
  };
  const auto runs = parallel_runs(cfg.seeds, cfg.jobs, [&](int i) {
    const std::uint64_t seed = run_seed(cfg, i);
    DenseField f = cfg.field == "constant" ? constant_field(cfg.dim, extent, 1.0)
                   : cfg.field == "power"  ? power_field(cfg.dim, extent)
                                           : pareto_field(cfg.dim, extent, cfg.beta, seed);
    std::vector<Row> rows;
    for (auto L : Ls) rows.push_back({L, limsup_estimator(f, L).value, limsup_estimator(f, L, L / 2).value, seed});
    return rows;
  });
  std::string csv = "L,estimate,shell_estimate,seed,field_kind\n";
  json arr = json::array();
  for (const auto& rows : runs) {
    for (const auto& r : rows) {
      csv += fmt::format("{},{},{},{},{}\n", r.L, csv_number(r.estimate), csv_number(r.shell), r.seed, cfg.field);
      arr.push_back({{"L", r.L}, {"estimate", r.estimate}, {"shell_estimate", r.shell}, {"seed", r.seed},
                     {"field_kind", cfg.field}});
    }
  }
  if (cfg.format == "csv") {
    out.add("limsup.csv", csv);
  } else {
    out.add("limsup.json", arr.dump(2) + "\n");
  }
  CommandResult res;
  res.summary = {{"tail", cfg.field == "pareto"
                              ? (tail_criterion(cfg.beta, cfg.dim) == TailClass::infinite ? "infinite" : "finite")
                              : "bounded-or-deterministic"}};
  return res;
}

CommandResult run_vitali(const RunConfig& cfg, ArtifactWriter& out) {
  check_format(cfg);
  check_counts(cfg);
  const auto runs = parallel_runs(cfg.seeds, cfg.jobs, [&](int i) {
    const std::uint64_t seed = run_seed(cfg, i);
    const BallCollection bc = random_balls(cfg.dim, cfg.balls, cfg.window, cfg.max_radius, seed);
    const auto sel = vitali_subcover(bc);
    const VitaliCheck chk = check_vitali(bc, sel);
    return json{{"seed", seed},
                {"balls", bc.size()},
                {"selected", sel.size()},
                {"intersecting_pairs", chk.intersecting_pairs},
                {"uncovered", chk.uncovered}};
  });
  CommandResult res;
  std::string csv = "seed,balls,selected,intersecting_pairs,uncovered\n";
  for (const auto& r : runs) {
    res.violations += r["intersecting_pairs"].get<std::uint64_t>() + r["uncovered"].get<std::uint64_t>();
    csv += fmt::format("{},{},{},{},{}\n", r["seed"].get<std::uint64_t>(), r["balls"].get<std::uint64_t>(),
                       r["selected"].get<std::uint64_t>(), r["intersecting_pairs"].get<std::uint64_t>(),
                       r["uncovered"].get<std::uint64_t>());
  }
  if (cfg.format == "csv") {
    out.add("vitali.csv", csv);
  } else {
    out.add("vitali.json", json(runs).dump(2) + "\n");
  }
  res.summary = {{"collections", runs.size()}, {"violations", res.violations}};
  return res;
}

}  // namespace balloons::cli
