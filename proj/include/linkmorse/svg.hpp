#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "linkmorse/catalog.hpp"
#include "linkmorse/config.hpp"

namespace linkmorse {

/// Figure style: dashed circumcircle, polygon path with an orientation
/// arrowhead on edge 1, vertex dots, one caption line.
struct RenderSpec {
  CatalogEntry entry;
  int canvas_px{480};
  bool show_circle{true};
  bool show_labels{true};
};

/// SVG filename stem for an entry: n{N}_s{signword}_w{omega} with p/m for
/// the per-edge signs.
inline std::string entry_filename(const CatalogEntry& entry) { return entry.key() + ".svg"; }

namespace detail {

inline std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace detail

/// Standalone SVG document; byte output is a pure function of the spec.
inline std::string render_svg(const RenderSpec& spec) {
  const CatalogEntry& entry = spec.entry;
  const double canvas = spec.canvas_px;
  const Vec3 center = entry.circumcenter();
  const double world_half = 1.1 * entry.radius;  // circumradius plus 10% margin
  const double scale = 0.5 * canvas / world_half;

  auto sx = [&](double x) { return 0.5 * canvas + scale * (x - center.x()); };
  auto sy = [&](double y) { return 0.5 * canvas - scale * (y - center.y()); };

  const std::vector<Vec3> pts = vertices(entry.config);
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.canvas_px) +
         "\" height=\"" + std::to_string(spec.canvas_px) + "\" viewBox=\"0 0 " +
         std::to_string(spec.canvas_px) + " " + std::to_string(spec.canvas_px) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (spec.show_circle) {
    svg += "<circle cx=\"" + detail::px(sx(center.x())) + "\" cy=\"" + detail::px(sy(center.y())) +
           "\" r=\"" + detail::px(scale * entry.radius) +
           "\" fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"6 4\"/>\n";
  }

  std::string path;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    path += (i == 0) ? "M " : " L ";
    path += detail::px(sx(pts[i].x())) + " " + detail::px(sy(pts[i].y()));
  }
  path += " Z";
  svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";

  // Orientation arrowhead at the midpoint of edge 1.
  {
    const Vec3& a = pts[0];
    const Vec3& b = pts[1 % pts.size()];
    const double mx = sx(0.5 * (a.x() + b.x()));
    const double my = sy(0.5 * (a.y() + b.y()));
    double dx = sx(b.x()) - sx(a.x());
    double dy = sy(b.y()) - sy(a.y());
    const double len = std::sqrt(dx * dx + dy * dy);
    dx /= len;
    dy /= len;
    const double nx = -dy;
    const double ny = dx;
    svg += "<polygon points=\"" + detail::px(mx + 7.0 * dx) + "," + detail::px(my + 7.0 * dy) + " " +
           detail::px(mx - 4.0 * dx + 4.0 * nx) + "," + detail::px(my - 4.0 * dy + 4.0 * ny) + " " +
           detail::px(mx - 4.0 * dx - 4.0 * nx) + "," + detail::px(my - 4.0 * dy - 4.0 * ny) +
           "\" fill=\"#cc2200\"/>\n";
  }

  for (const auto& p : pts)
    svg += "<circle cx=\"" + detail::px(sx(p.x())) + "\" cy=\"" + detail::px(sy(p.y())) +
           "\" r=\"3\" fill=\"#000000\"/>\n";

  if (spec.show_labels) {
    svg += "<text x=\"8\" y=\"" + std::to_string(spec.canvas_px - 10) +
           "\" font-family=\"monospace\" font-size=\"14\">" +
           "\xCF\x89=" + std::to_string(entry.ctype.omega) + ", e=" + std::to_string(entry.ctype.e()) +
           ", index=" + std::to_string(entry.index_combinatorial) + "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace linkmorse
