#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "signrank/io.hpp"

namespace signrank {

namespace {

constexpr double kCanvas = 600;

struct Segment {
  double x0, y0, x1, y1;
};

// Clips a0 + a1 x + a2 y = 0 to the box (Liang-Barsky on a parametrization).
std::optional<Segment> clip_line(double a0, double a1, double a2, const BoundingBox& box) {
  const double norm2 = a1 * a1 + a2 * a2;
  if (norm2 == 0) return std::nullopt;
  // foot of the perpendicular from the origin, direction (a2, -a1)
  const double px = -a0 * a1 / norm2, py = -a0 * a2 / norm2;
  const double dx = a2, dy = -a1;
  double lo = -1e300, hi = 1e300;
  auto bound = [&](double p, double d, double mn, double mx) {
    if (d == 0) return p >= mn && p <= mx;
    double t0 = (mn - p) / d, t1 = (mx - p) / d;
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
    return true;
  };
  if (!bound(px, dx, box[0], box[2]) || !bound(py, dy, box[1], box[3]) || lo >= hi) return std::nullopt;
  return Segment{px + lo * dx, py + lo * dy, px + hi * dx, py + hi * dy};
}

BoundingBox fit_box(const Configuration& c) {
  if (c.points.empty()) return {-10, -10, 10, 10};
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const auto& p : c.points) {
    const double x = p.coords[0].to_double(), y = p.coords[1].to_double();
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  const double pad = 0.15 * std::max(x1 - x0, y1 - y0) + 1;
  return {x0 - pad, y0 - pad, x1 + pad, y1 + pad};
}

}  // namespace

std::string render_svg(const Configuration& c, std::optional<BoundingBox> bbox) {
  c.validate();
  if (c.dim != 2) throw DomainError("render: only planar configurations can be drawn");
  const BoundingBox box = bbox.value_or(fit_box(c));
  if (!(box[2] > box[0] && box[3] > box[1])) throw DomainError("render: bounding box is empty");
  const double scale = kCanvas / std::max(box[2] - box[0], box[3] - box[1]);
  const double width = (box[2] - box[0]) * scale, height = (box[3] - box[1]) * scale;
  // SVG y grows downwards
  auto sx = [&](double x) { return (x - box[0]) * scale; };
  auto sy = [&](double y) { return (box[3] - y) * scale; };

  std::string out = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.2f}\" height=\"{:.2f}\" "
      "viewBox=\"0 0 {:.2f} {:.2f}\">\n"
      "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"8\" "
      "markerHeight=\"8\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#1f5fa8\"/></marker></defs>\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      width, height, width, height);

  for (std::size_t j = 0; j < c.hyperplanes.size(); ++j) {
    const auto& h = c.hyperplanes[j];
    const auto seg = clip_line(h.coeffs[0].to_double(), h.coeffs[1].to_double(), h.coeffs[2].to_double(), box);
    if (!seg) continue;
    out += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" "
        "marker-end=\"url(#arrow)\"/>\n",
        sx(seg->x0), sy(seg->y0), sx(seg->x1), sy(seg->y1));
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"13\" fill=\"#1f5fa8\">l{}</text>\n",
                       sx(seg->x1) - 18, sy(seg->y1) - 6, j + 1);
  }
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const double x = sx(c.points[i].coords[0].to_double()), y = sy(c.points[i].coords[1].to_double());
    out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"black\"/>\n", x, y);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"13\">p{}</text>\n", x + 6, y - 6, i + 1);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace signrank
