#pragma once

#include <vector>

#include "linkmorse/config.hpp"
#include "linkmorse/types.hpp"

namespace linkmorse {

// The paper-facing convention is the halved quantity everywhere: A and S,
// never 2A/2S.

/// Shoelace area 1/2 sum (x_i y_{i+1} - x_{i+1} y_i), cyclic indices.
inline double signed_area_2d(const std::vector<Vec2>& points) {
  const std::size_t n = points.size();
  if (n < 3) throw DimensionMismatch("signed_area_2d: need at least 3 points");
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = points[i];
    const Vec2& b = points[(i + 1) % n];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * twice;
}

namespace detail {

// Gauge-fixed evaluators on raw edge lists. They accept infeasible inputs
// (used for finite differencing and off-manifold iterates): vertices are
// prefix sums with p_1 = 0 and the polygon closes through the chord back to
// p_1, so the last edge never enters.
inline std::vector<Vec3> vertices_raw(const std::vector<Vec3>& edges) {
  std::vector<Vec3> pts(edges.size());
  pts[0] = Vec3::Zero();
  for (std::size_t i = 1; i < edges.size(); ++i) pts[i] = pts[i - 1] + edges[i - 1];
  return pts;
}

inline Vec3 vector_area_raw(const std::vector<Vec3>& edges) {
  const std::vector<Vec3> pts = vertices_raw(edges);
  const std::size_t n = pts.size();
  Vec3 twice = Vec3::Zero();
  for (std::size_t i = 0; i < n; ++i) twice += pts[i].cross(pts[(i + 1) % n]);
  return 0.5 * twice;
}

inline double area_S_raw(const std::vector<Vec3>& edges, const Vec3& xi) {
  return vector_area_raw(edges).dot(xi);
}

inline double signed_area_raw_2d(const std::vector<Vec2>& edges) {
  std::vector<Vec2> pts(edges.size());
  pts[0] = Vec2::Zero();
  for (std::size_t i = 1; i < edges.size(); ++i) pts[i] = pts[i - 1] + edges[i - 1];
  return signed_area_2d(pts);
}

}  // namespace detail

/// Vector area 1/2 sum p_i x p_{i+1}; translation invariant.
inline Vec3 vector_area(const DecoratedConfiguration& config) {
  return detail::vector_area_raw(config.edges());
}

/// Decorated area S = (vector area, xi).
inline double area_S(const DecoratedConfiguration& config) {
  return vector_area(config).dot(config.xi());
}

/// S via the equivalent definition: shoelace area of the projection onto the
/// plane orthogonal to xi, cooriented by xi.
inline double projected_area(const DecoratedConfiguration& config) {
  const Vec3& xi = config.xi();
  int axis = 0;
  for (int a = 1; a < 3; ++a)
    if (std::abs(xi[a]) < std::abs(xi[axis])) axis = a;
  Vec3 ref = Vec3::Zero();
  ref[axis] = 1.0;
  const Vec3 b1 = (ref - ref.dot(xi) * xi).normalized();
  const Vec3 b2 = xi.cross(b1);

  const std::vector<Vec3> pts = vertices(config);
  std::vector<Vec2> proj(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) proj[i] = Vec2(pts[i].dot(b1), pts[i].dot(b2));
  return signed_area_2d(proj);
}

/// Signed area of a planar configuration.
inline double area_planar(const PlanarConfiguration& config) {
  return signed_area_2d(vertices(config));
}

/// Exact partial derivatives of S with respect to the ambient coordinates
/// (all edge components under the p_1 = origin gauge, and xi).
struct AmbientGradient {
  std::vector<Vec3> d_edges;
  Vec3 d_xi;
};

inline AmbientGradient grad_S(const DecoratedConfiguration& config) {
  const int n = config.n();
  const std::vector<Vec3> pts = vertices(config);
  const Vec3& xi = config.xi();

  // dS/dp_i = 1/2 (p_{i+1} - p_{i-1}) x xi; p_1 is gauge-fixed. Edge a feeds
  // every vertex after it, so d_edges is a suffix sum of the vertex terms.
  std::vector<Vec3> by_vertex(static_cast<std::size_t>(n), Vec3::Zero());
  for (int i = 1; i < n; ++i) {
    const Vec3 diag = pts[static_cast<std::size_t>((i + 1) % n)] - pts[static_cast<std::size_t>(i - 1)];
    by_vertex[static_cast<std::size_t>(i)] = 0.5 * diag.cross(xi);
  }

  AmbientGradient grad;
  grad.d_edges.assign(static_cast<std::size_t>(n), Vec3::Zero());
  Vec3 suffix = Vec3::Zero();
  for (int a = n - 1; a >= 0; --a) {
    grad.d_edges[static_cast<std::size_t>(a)] = suffix;
    suffix += by_vertex[static_cast<std::size_t>(a)];
  }
  grad.d_xi = vector_area(config);
  return grad;
}

/// Same for the planar area; dA/dp_i = 1/2 G (p_{i+1} - p_{i-1}) with
/// G the 2-D determinant form.
inline std::vector<Vec2> grad_area_planar(const PlanarConfiguration& config) {
  const int n = config.n();
  const std::vector<Vec2> pts = vertices(config);
  const Mat2 g = det_form();

  std::vector<Vec2> by_vertex(static_cast<std::size_t>(n), Vec2::Zero());
  for (int i = 1; i < n; ++i) {
    const Vec2 diag = pts[static_cast<std::size_t>((i + 1) % n)] - pts[static_cast<std::size_t>(i - 1)];
    by_vertex[static_cast<std::size_t>(i)] = 0.5 * (g * diag);
  }

  std::vector<Vec2> grad(static_cast<std::size_t>(n), Vec2::Zero());
  Vec2 suffix = Vec2::Zero();
  for (int a = n - 1; a >= 0; --a) {
    grad[static_cast<std::size_t>(a)] = suffix;
    suffix += by_vertex[static_cast<std::size_t>(a)];
  }
  return grad;
}

}  // namespace linkmorse
