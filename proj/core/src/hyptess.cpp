#include "balloons/hyptess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "balloons/balloon.hpp"
#include "balloons/error.hpp"
#include "balloons/rng.hpp"

namespace balloons {

namespace {

constexpr double kPi = std::numbers::pi;

// Signed side of z relative to the geodesic pq. For a circle with center c
// and radius^2 = |c|^2 - 1, |z - c|^2 - R^2 = |z|^2 + 1 - 2 Re(z conj c); the
// expression below is that times 1 + Re(p conj q), which avoids forming c.
double side(Complex p, Complex q, Complex z) {
  const double k = 1.0 + (p * std::conj(q)).real();
  if (k < 1e-12) return (std::conj(p) * z).imag();
  return (std::norm(z) + 1.0) * k - 2.0 * (z * std::conj(p + q)).real();
}

// Isometry moving 0 to u, and its inverse.
Complex translate(Complex u, Complex w) { return (w + u) / (1.0 + std::conj(u) * w); }
Complex untranslate(Complex u, Complex z) { return (z - u) / (1.0 - std::conj(u) * z); }

// Uniform point of the hyperbolic ball of radius r about 0.
Complex sample_ball(double r, Stream& rng) {
  const double s = std::acosh(1.0 + rng.uniform() * (std::cosh(r) - 1.0));
  return std::polar(std::tanh(s / 2.0), 2.0 * kPi * rng.uniform());
}

bool in_root_triangle(Complex z) {
  static const std::array<Complex, 3> corner = {Complex(1.0, 0.0), std::polar(1.0, 2.0 * kPi / 3.0),
                                                std::polar(1.0, 4.0 * kPi / 3.0)};
  for (int e = 0; e < 3; ++e) {
    if (beyond(corner[static_cast<std::size_t>(e)], corner[static_cast<std::size_t>((e + 1) % 3)], 0.0, z)) {
      return false;
    }
  }
  return true;
}

}  // namespace

double center_edge_distance() { return 0.5 * std::log(3.0); }
double midpoint_distance() { return 2.0 * std::log(std::numbers::phi); }
double distortion_constant(double r) { return 2.0 * r + std::log(3.0) - midpoint_distance(); }

Complex reflect(Complex p, Complex q, Complex z) {
  const double k = 1.0 + (p * std::conj(q)).real();
  if (k < 1e-12) return p * p * std::conj(z);  // diameter
  const Complex c = (p + q) / k;
  const double R2 = std::norm(c) - 1.0;
  return c + R2 / std::conj(z - c);
}

Complex geodesic_foot(Complex p, Complex q, Complex u) {
  const Complex a = untranslate(u, p);
  const Complex b = untranslate(u, q);
  const Complex m = a + b;
  if (std::abs(m) < 1e-15) return u;  // geodesic through u
  // the geodesic circle has center at 1/cos(delta) along m and radius tan(delta)
  const double cosd = std::abs(m) / 2.0;
  const double sind = std::sqrt(std::max(0.0, 1.0 - cosd * cosd));
  const Complex w = m / std::abs(m) * ((1.0 - sind) / cosd);
  return translate(u, w);
}

bool beyond(Complex p, Complex q, Complex inside, Complex z) { return side(p, q, z) * side(p, q, inside) < 0.0; }

TreeVertex Tessellation::across(TreeVertex v, int e) const {
  if (v.depth == 0) return tree_.child(v, e);
  return e == 0 ? tree_.parent(v) : tree_.child(v, e - 1);
}

Tessellation build_tessellation(int depth) {
  require(depth >= 0, ErrorCode::invalid_argument, "depth must be nonnegative");
  require(depth <= kMaxTessellationDepth, ErrorCode::invalid_argument, "depth is limited to 30");
  require(depth <= kMaxStoredTessellationDepth, ErrorCode::size_guard, "stored tessellations are limited to depth 20");
  Tessellation tess;
  tess.depth_ = depth;
  tess.r_ = truncation_radius();
  const auto n = tess.tree_.ball_size(static_cast<std::uint32_t>(depth));
  tess.centers_.resize(n);
  tess.triangles_.resize(n);
  tess.centers_[0] = 0.0;
  tess.triangles_[0].ideal = {Complex(1.0, 0.0), std::polar(1.0, 2.0 * kPi / 3.0), std::polar(1.0, 4.0 * kPi / 3.0)};
  // dense ids are in breadth-first order, so parents are filled before children
  for (std::uint64_t id = 0; id < n; ++id) {
    const TreeVertex v = tess.tree_.from_dense_id(id);
    if (static_cast<int>(v.depth) == depth) continue;
    const auto& tri = tess.triangles_[id].ideal;
    const int first = v.depth == 0 ? 0 : 1;
    for (int e = first; e < 3; ++e) {
      const Complex a = tri[static_cast<std::size_t>(e)];
      const Complex b = tri[static_cast<std::size_t>((e + 1) % 3)];
      const Complex c = tri[static_cast<std::size_t>((e + 2) % 3)];
      const auto child = tess.tree_.dense_id(tess.across(v, e));
      Complex c2 = reflect(a, b, c);
      c2 /= std::abs(c2);  // back onto the unit circle
      tess.triangles_[child].ideal = {a, b, c2};
      tess.centers_[child] = reflect(a, b, tess.centers_[id]);
    }
  }
  return tess;
}

ConstantsReport verify_constants(const Tessellation& tess) {
  const double h = center_edge_distance();
  const double a = midpoint_distance();
  ConstantsReport rep;
  for (std::uint64_t id = 0; id < tess.size(); ++id) {
    const Complex u = tess.center_by_id(id);
    const TreeVertex v = tess.tree().from_dense_id(id);
    const auto& tri = tess.triangle(v).ideal;
    std::array<Complex, 3> z;
    for (std::size_t e = 0; e < 3; ++e) z[e] = geodesic_foot(tri[e], tri[(e + 1) % 3], u);
    for (std::size_t e = 0; e < 3; ++e) {
      const double dce = hyperbolic_distance(u, z[e]);
      const double dmm = hyperbolic_distance(z[e], z[(e + 1) % 3]);
      if (id == 0 && e == 0) {
        rep.dist_center_edge = dce;
        rep.dist_midpoints = dmm;
      }
      rep.max_center_edge_error = std::max(rep.max_center_edge_error, std::abs(dce - h));
      rep.max_midpoint_error = std::max(rep.max_midpoint_error, std::abs(dmm - a));
    }
  }
  return rep;
}

std::vector<Complex> zigzag_midpoints(const Tessellation& tess, int ell) {
  require(ell >= 1 && ell <= tess.depth(), ErrorCode::invalid_argument, "zig-zag length exceeds the built depth");
  const auto& tree = tess.tree();
  auto midpoint = [&](TreeVertex child) {
    const auto& tri = tess.triangle(child).ideal;
    return geodesic_foot(tri[0], tri[1], tess.center(child));
  };
  std::vector<Complex> z;
  TreeVertex v = tree.child(kTreeRoot, 0);
  z.push_back(midpoint(v));
  double last_turn = 0.0;
  for (int i = 1; i < ell; ++i) {
    const Complex c = tess.center(v);
    TreeVertex pick = tree.child(v, 0);
    for (int k = 0; k < 2; ++k) {
      const TreeVertex w = tree.child(v, k);
      const double turn = (std::conj(z.back() - c) * (midpoint(w) - c)).imag();
      if (last_turn == 0.0 || (turn > 0.0) != (last_turn > 0.0)) {
        pick = w;
        last_turn = turn;
        break;
      }
    }
    v = pick;
    z.push_back(midpoint(v));
  }
  return z;
}

double truncated_area_closed_form(double r) {
  require(r >= 0.0, ErrorCode::invalid_argument, "radius must be nonnegative");
  if (r <= center_edge_distance()) return 2.0 * kPi * (std::cosh(r) - 1.0);
  const double th = std::acos(0.5 / std::tanh(r));
  return 6.0 * (std::asin(std::sin(th) / (std::sqrt(3.0) / 2.0)) - th + (kPi / 3.0 - th) * (std::cosh(r) - 1.0));
}

double truncated_area(double r) {
  require(r >= 0.0, ErrorCode::invalid_argument, "radius must be nonnegative");
  // By symmetry, six copies of the sector between an edge foot (angle 0) and
  // an ideal corner (angle pi/3). The boundary lies at tanh(rho) = 1/(2 cos th).
  const double ch = std::cosh(r);
  auto integrand = [&](double th) {
    const double u = 0.5 / std::cos(th);
    if (u >= 1.0) return ch - 1.0;
    const double cb = 1.0 / std::sqrt(1.0 - u * u);  // cosh of the boundary distance
    return std::min(cb, ch) - 1.0;
  };
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  double total = 0.0;
  double err = 0.0;
  if (r <= center_edge_distance()) {
    total = (ch - 1.0) * kPi / 3.0;
  } else {
    // split at the kink where the boundary crosses the circle of radius r;
    // th = pi/3 - w^2 tames the inverse square root blowup at the corner
    const double th = std::acos(0.5 / std::tanh(r));
    auto smoothed = [&](double w) { return 2.0 * w * integrand(kPi / 3.0 - w * w); };
    const double w_kink = std::sqrt(std::max(0.0, kPi / 3.0 - th));
    total = Quad::integrate(smoothed, w_kink, std::sqrt(kPi / 3.0), 15, 1e-14, &err);
    total += (ch - 1.0) * w_kink * w_kink;
  }
  if (!std::isfinite(total)) fail(ErrorCode::numerical_failure, "area quadrature failed");
  return 6.0 * total;
}

double truncation_radius() {
  static const double cached = [] {
    auto f = [](double r) { return truncated_area(r) - kPi / 2.0; };
    boost::uintmax_t iters = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, center_edge_distance(), 3.0,
                                                            boost::math::tools::eps_tolerance<double>(50), iters);
    if (iters >= 200) fail(ErrorCode::numerical_failure, "truncation radius root finding did not converge");
    return (lo + hi) / 2.0;
  }();
  return cached;
}

AreaEstimate monte_carlo_truncated_area(double r, std::uint64_t samples, std::uint64_t seed) {
  require(samples > 0, ErrorCode::invalid_argument, "need at least one sample");
  Stream rng(seed, "tess.area");
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    if (in_root_triangle(sample_ball(r, rng))) ++hits;
  }
  const double ball = 2.0 * kPi * (std::cosh(r) - 1.0);
  const double f = static_cast<double>(hits) / static_cast<double>(samples);
  return {ball * f, ball * std::sqrt(f * (1.0 - f) / static_cast<double>(samples)), samples};
}

std::optional<Projection> try_project(const Tessellation& tess, Complex x) {
  require(std::abs(x) < 1.0, ErrorCode::outside_region, "point is not in the disk");
  TreeVertex v = kTreeRoot;
  for (;;) {
    const auto& tri = tess.triangle(v).ideal;
    const Complex c = tess.center(v);
    int exit = -1;
    for (int e = v.depth == 0 ? 0 : 1; e < 3; ++e) {
      if (beyond(tri[static_cast<std::size_t>(e)], tri[static_cast<std::size_t>((e + 1) % 3)], c, x)) {
        exit = e;
        break;
      }
    }
    if (exit < 0) break;
    if (static_cast<int>(v.depth) == tess.depth()) return std::nullopt;
    v = tess.across(v, exit);
  }
  const double d = hyperbolic_distance(x, tess.center(v));
  return Projection{v, d, d <= tess.r()};
}

Projection project_to_tree(const Tessellation& tess, Complex x) {
  auto p = try_project(tess, x);
  if (!p) fail(ErrorCode::outside_region, "point lies beyond the built tessellation");
  return *p;
}

DistortionReport distortion_check(const Tessellation& tess, std::uint64_t pairs, std::uint64_t seed) {
  require(tess.depth() >= 1, ErrorCode::invalid_argument, "distortion check needs depth >= 1");
  const auto& tree = tess.tree();
  const double a = midpoint_distance();
  const double c = distortion_constant(tess.r());
  Stream rng(seed, "tess.distortion");
  auto sample_near = [&](TreeVertex v) -> Complex {
    for (int attempt = 0; attempt < 10000; ++attempt) {
      const Complex x = translate(tess.center(v), sample_ball(tess.r(), rng));
      const auto p = try_project(tess, x);
      if (p && p->vertex == v && p->truncated) return x;
    }
    fail(ErrorCode::numerical_failure, "could not sample a truncated triangle");
  };
  auto random_vertex = [&] { return tree.from_dense_id(rng.below(tess.size())); };
  DistortionReport rep;
  rep.max_excess = -std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const TreeVertex v = random_vertex();
    TreeVertex w = v;
    if (i % 2 == 0) {
      w = random_vertex();
    } else {
      const int steps = 1 + static_cast<int>(rng.below(3));
      for (int k = 0; k < steps; ++k) {
        const int options = w.depth == 0 ? 3 : (static_cast<int>(w.depth) == tess.depth() ? 1 : 3);
        const int e = static_cast<int>(rng.below(static_cast<std::uint64_t>(options)));
        w = tess.across(w, e);
      }
    }
    const Complex x = sample_near(v);
    const Complex y = sample_near(w);
    const double excess = hyperbolic_distance(x, y) - (a * tree.distance(v, w) + c);
    rep.max_excess = std::max(rep.max_excess, excess);
    if (excess > 0.0) ++rep.violations;
    ++rep.pairs;
  }
  return rep;
}

TransienceReport transience_bound_report(const PointSet& ps, const MatchingResult& mr, const Tessellation& tess,
                                         std::span<const double> t_grid, double t0) {
  if (ps.space().kind() != SpaceKind::hyperbolic) fail(ErrorCode::unsupported, "transience report needs the disk");
  require(mr.has_certification, ErrorCode::invalid_argument, "transience report needs a certified matching");
  const DiskPoint origin{};
  double reach = boundary_distance(ps.space(), ps.window(), origin);
  for (const auto& w : mr.taint_log) reach = std::min(reach, ps.distance_to(w.id, origin));
  if (mr.unmatched) reach = std::min(reach, ps.distance_to(*mr.unmatched, origin));

  TransienceReport rep;
  rep.certified_radius = reach;
  const double r = tess.r();
  std::vector<std::uint8_t> core(tess.size(), 0);
  for (std::uint64_t id = 0; id < tess.size(); ++id) {
    if (hyperbolic_distance(0.0, tess.center_by_id(id)) + r < reach) {
      core[id] = 1;
      ++rep.core_vertices;
    }
  }
  if (rep.core_vertices == 0) fail(ErrorCode::infeasible, "certified region contains no truncated triangle");
  rep.core_area = kPi / 2.0 * static_cast<double>(rep.core_vertices);

  const auto pop = pop_times(ps, mr);
  const auto cert = certified_points(ps, mr);
  struct Hit {
    TreeVertex v;
    double pop;
  };
  std::vector<Hit> hits;
  for (std::uint32_t i = 0; i < ps.size(); ++i) {
    if (!cert[i] || ps.distance_to(i, origin) >= reach) continue;
    const auto p = try_project(tess, ps.disk(i));
    if (!p || !p->truncated || !core[tess.tree().dense_id(p->vertex)]) continue;
    hits.push_back({p->vertex, pop[i]});
  }

  const double a = midpoint_distance();
  const double c = distortion_constant(r);
  std::vector<TreeVertex> active;
  double log_sum = 0.0;
  int log_count = 0;
  for (double t : t_grid) {
    require(t >= 0.0, ErrorCode::invalid_argument, "times must be nonnegative");
    TransiencePoint pt;
    pt.t = t;
    active.clear();
    for (const auto& h : hits) {
      if (h.pop > t) active.push_back(h.v);
    }
    pt.active = active.size();
    pt.lambda_hat = static_cast<double>(active.size()) / rep.core_area;
    pt.required_separation = static_cast<std::int64_t>(std::floor(2.0 * (t - c) / a));
    if (pt.required_separation >= 0) {
      for (std::size_t i = 0; i < active.size(); ++i) {
        for (std::size_t j = i + 1; j < active.size(); ++j) {
          ++pt.pairs_checked;
          if (static_cast<std::int64_t>(tess.tree().distance(active[i], active[j])) <= pt.required_separation) {
            ++pt.violations;
          }
        }
      }
    }
    if (pt.lambda_hat > 0.0 && t > 0.0) {
      log_sum += std::log(pt.lambda_hat) - std::log(t) + t / a * std::log(4.0);
      ++log_count;
    }
    rep.points.push_back(pt);
  }
  rep.fitted_C = log_count > 0 ? std::exp(log_sum / log_count) : 0.0;

  const Trajectory traj = compute_trajectory(ps, mr, origin);
  const CoverReport cover = cover_report(traj, t0);
  rep.certified_until = traj.certified_until;
  rep.ratio_empty = cover.empty;
  rep.min_ratio = cover.min_ratio;
  rep.argmin_t = cover.argmin_t;
  return rep;
}

}  // namespace balloons
