#include <cmath>

#include <fmt/format.h>

#include "balloons/balloon.hpp"
#include "balloons/error.hpp"

namespace balloons {

namespace {

struct Circle {
  double x, y, r;
};

// Euclidean center and radius of the hyperbolic circle about z of radius s.
Circle disk_circle(std::complex<double> z, double s) {
  const double tau = std::tanh(s / 2.0);
  const double zz = std::norm(z);
  const double denom = 1.0 - tau * tau * zz;
  const std::complex<double> c = z * (1.0 - tau * tau) / denom;
  return {c.real(), c.imag(), tau * (1.0 - zz) / denom};
}

class Canvas {
 public:
  Canvas(double x0, double y0, double x1, double y1, double size) : x0_(x0), y1_(y1) {
    scale_ = size / std::max(x1 - x0, y1 - y0);
    width_ = (x1 - x0) * scale_;
    height_ = (y1 - y0) * scale_;
  }
  double sx(double x) const { return (x - x0_) * scale_; }
  double sy(double y) const { return (y1_ - y) * scale_; }
  double len(double r) const { return r * scale_; }
  double width() const { return width_; }
  double height() const { return height_; }

 private:
  double x0_, y1_, scale_ = 1.0, width_ = 0.0, height_ = 0.0;
};

std::string num(double v) { return fmt::format("{:.3f}", v); }

}  // namespace

std::string render_svg(const PointSet& ps, const MatchingResult& mr, double t, const RenderStyle& style) {
  require(t >= 0.0, ErrorCode::invalid_argument, "render time must be nonnegative");
  const SpaceKind kind = ps.space().kind();
  const bool hyperbolic = kind == SpaceKind::hyperbolic;
  if (!(hyperbolic || (kind == SpaceKind::euclidean && ps.space().dim() == 2))) {
    fail(ErrorCode::unsupported, "rendering needs the plane or the hyperbolic disk");
  }
  double x0 = -1, y0 = -1, x1 = 1, y1 = 1;
  if (!hyperbolic) {
    const auto& box = std::get<BoxWindow>(ps.window());
    x0 = box.corner[0];
    y0 = box.corner[1];
    x1 = x0 + box.sides[0];
    y1 = y0 + box.sides[1];
  }
  const Canvas cv(x0, y0, x1, y1, style.size_px);
  const auto pop = pop_times(ps, mr);

  auto circle = [&](std::size_t i, double s) -> Circle {
    if (hyperbolic) return disk_circle(ps.disk(i), s);
    const auto x = ps.coords(i);
    return {x[0], x[1], s};
  };
  auto center = [&](std::size_t i) -> std::pair<double, double> {
    if (hyperbolic) return {ps.disk(i).real(), ps.disk(i).imag()};
    return {ps.coords(i)[0], ps.coords(i)[1]};
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n",
      num(cv.width()), num(cv.height()), num(cv.width()), num(cv.height()));
  out += fmt::format("<title>balloons at t = {}</title>\n", t);
  out += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", num(cv.width()), num(cv.height()));
  if (hyperbolic && style.draw_disk_boundary) {
    out += fmt::format("<circle class=\"boundary\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"black\" "
                       "stroke-width=\"{}\"/>\n",
                       num(cv.sx(0)), num(cv.sy(0)), num(cv.len(1)), num(style.stroke_px));
  }

  out += fmt::format("<g fill=\"none\" stroke=\"{}\" stroke-width=\"{}\">\n", style.popped_color, num(style.stroke_px));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!(pop[i] <= t)) continue;
    const Circle c = circle(i, pop[i]);
    out += fmt::format("<circle class=\"popped\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n", num(cv.sx(c.x)),
                       num(cv.sy(c.y)), num(cv.len(c.r)));
  }
  out += "</g>\n";

  if (style.draw_edges) {
    out += fmt::format("<g fill=\"none\" stroke=\"{}\" stroke-width=\"{}\">\n", style.edge_color,
                       num(style.stroke_px));
    for (const auto& p : mr.pairs) {
      if (!(pop[p.u] <= t)) continue;
      const auto [ax, ay] = center(p.u);
      const auto [bx, by] = center(p.v);
      // hyperbolic segments are arcs of circles orthogonal to the unit circle
      const double cross = ax * by - ay * bx;
      if (hyperbolic && std::abs(cross) > 1e-9) {
        const double a2 = ax * ax + ay * ay + 1.0;
        const double b2 = bx * bx + by * by + 1.0;
        // center c solves 2 c.a = |a|^2 + 1 and 2 c.b = |b|^2 + 1
        const double cx = (a2 * by - b2 * ay) / (2.0 * cross);
        const double cy = (ax * b2 - bx * a2) / (2.0 * cross);
        const double r = std::hypot(ax - cx, ay - cy);
        const double sc = (cv.sx(bx) - cv.sx(ax)) * (cv.sy(cy) - cv.sy(ay)) -
                          (cv.sy(by) - cv.sy(ay)) * (cv.sx(cx) - cv.sx(ax));
        out += fmt::format("<path class=\"pair\" d=\"M {} {} A {} {} 0 0 {} {} {}\"/>\n", num(cv.sx(ax)),
                           num(cv.sy(ay)), num(cv.len(r)), num(cv.len(r)), sc > 0 ? 1 : 0, num(cv.sx(bx)),
                           num(cv.sy(by)));
      } else {
        out += fmt::format("<line class=\"pair\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", num(cv.sx(ax)),
                           num(cv.sy(ay)), num(cv.sx(bx)), num(cv.sy(by)));
      }
    }
    out += "</g>\n";
  }

  out += fmt::format("<g fill=\"none\" stroke=\"{}\" stroke-width=\"{}\">\n", style.active_color, num(style.stroke_px));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (pop[i] <= t) continue;
    const Circle c = circle(i, t);
    out += fmt::format("<circle class=\"active\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n", num(cv.sx(c.x)),
                       num(cv.sy(c.y)), num(cv.len(c.r)));
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace balloons
