#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "linkmorse/errors.hpp"
#include "linkmorse/rng.hpp"
#include "linkmorse/types.hpp"

namespace linkmorse {

// Conventions used throughout:
//   * edges are the primitive representation; vertex i is the prefix sum of
//     edges 0..i-1 with the gauge p_1 = origin,
//   * edge indices are 0-based and cyclic, edge n-1 runs p_n -> p_1,
//   * mirror images are identified only through proper rotations.

/// Bar lengths of the linkage. Only the equilateral vector and its small
/// perturbations (|l_i - 1| < 0.1) are admitted; n must be odd and >= 5.
class LengthVector {
 public:
  explicit LengthVector(std::vector<double> values) : values_(std::move(values)) {
    const int n = static_cast<int>(values_.size());
    if (n < 5 || n % 2 == 0)
      throw BadParity("LengthVector: n must be odd and >= 5, got " + std::to_string(n));
    for (double v : values_) {
      if (!std::isfinite(v) || v <= 0.0)
        throw LengthViolation("LengthVector: lengths must be positive and finite");
      if (std::abs(v - 1.0) >= 0.1)
        throw LengthViolation("LengthVector: only near-equilateral lengths are supported");
    }
  }

  static LengthVector ones(int n) { return LengthVector(std::vector<double>(static_cast<std::size_t>(n), 1.0)); }

  int n() const { return static_cast<int>(values_.size()); }
  int k() const { return (n() - 1) / 2; }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return values_; }

  double total() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
  }

  bool equilateral(double tol = 1e-12) const {
    for (double v : values_)
      if (std::abs(v - 1.0) > tol) return false;
    return true;
  }

  bool operator==(const LengthVector& other) const { return values_ == other.values_; }

 private:
  std::vector<double> values_;
};

/// Deterministic length perturbation: eps_i drawn uniformly from
/// [-epsilon, epsilon], one stream per seed.
struct PerturbationSpec {
  double epsilon_magnitude{0.01};
  std::uint64_t seed{0};
};

inline LengthVector perturb_lengths(int n, const PerturbationSpec& spec) {
  if (n < 5 || n % 2 == 0) throw BadParity("perturb_lengths: n must be odd and >= 5");
  if (!(spec.epsilon_magnitude >= 0.0) || spec.epsilon_magnitude >= 0.1)
    throw LengthViolation("perturb_lengths: epsilon must lie in [0, 0.1)");
  Rng rng(spec.seed);
  std::vector<double> values(static_cast<std::size_t>(n));
  for (auto& v : values) v = 1.0 + rng.uniform(-spec.epsilon_magnitude, spec.epsilon_magnitude);
  return LengthVector(std::move(values));
}

namespace detail {

// Alternating projection onto { per-edge length } ∩ { closure }: rescale each
// edge to its prescribed length, then spread the closure defect over the
// edges with length weights. Returns the final closure residual.
inline double constraint_residual(const std::vector<Vec3>& edges, const LengthVector& lengths) {
  Vec3 defect = Vec3::Zero();
  double worst = 0.0;
  for (int i = 0; i < lengths.n(); ++i) {
    defect += edges[static_cast<std::size_t>(i)];
    worst = std::max(worst, std::abs(edges[static_cast<std::size_t>(i)].norm() - lengths[i]));
  }
  return std::max(worst, defect.norm());
}

inline double project_edges(std::vector<Vec3>& edges, const LengthVector& lengths,
                            double tol = 1e-14, int max_rounds = 200) {
  const int n = static_cast<int>(edges.size());
  const double total = lengths.total();
  double residual = constraint_residual(edges, lengths);
  for (int round = 0; round < max_rounds && residual >= tol; ++round) {
    for (int i = 0; i < n; ++i) {
      const double norm = edges[static_cast<std::size_t>(i)].norm();
      if (norm == 0.0) return 1.0;
      edges[static_cast<std::size_t>(i)] *= lengths[i] / norm;
    }
    Vec3 defect = Vec3::Zero();
    for (const auto& e : edges) defect += e;
    for (int i = 0; i < n; ++i) edges[static_cast<std::size_t>(i)] -= (lengths[i] / total) * defect;
    residual = constraint_residual(edges, lengths);
  }
  return residual;
}

inline double constraint_residual_2d(const std::vector<Vec2>& edges, const LengthVector& lengths) {
  Vec2 defect = Vec2::Zero();
  double worst = 0.0;
  for (int i = 0; i < lengths.n(); ++i) {
    defect += edges[static_cast<std::size_t>(i)];
    worst = std::max(worst, std::abs(edges[static_cast<std::size_t>(i)].norm() - lengths[i]));
  }
  return std::max(worst, defect.norm());
}

inline double project_edges_2d(std::vector<Vec2>& edges, const LengthVector& lengths,
                               double tol = 1e-14, int max_rounds = 200) {
  const int n = static_cast<int>(edges.size());
  const double total = lengths.total();
  double residual = constraint_residual_2d(edges, lengths);
  for (int round = 0; round < max_rounds && residual >= tol; ++round) {
    for (int i = 0; i < n; ++i) {
      const double norm = edges[static_cast<std::size_t>(i)].norm();
      if (norm == 0.0) return 1.0;
      edges[static_cast<std::size_t>(i)] *= lengths[i] / norm;
    }
    Vec2 defect = Vec2::Zero();
    for (const auto& e : edges) defect += e;
    for (int i = 0; i < n; ++i) edges[static_cast<std::size_t>(i)] -= (lengths[i] / total) * defect;
    residual = constraint_residual_2d(edges, lengths);
  }
  return residual;
}

}  // namespace detail

/// A spatial configuration with a decoration vector: n edge vectors summing
/// to zero with prescribed lengths, plus a unit vector xi. Immutable.
class DecoratedConfiguration {
 public:
  int n() const { return static_cast<int>(edges_.size()); }
  const std::vector<Vec3>& edges() const { return edges_; }
  const Vec3& edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }
  const Vec3& xi() const { return xi_; }
  const LengthVector& lengths() const { return lengths_; }

  friend DecoratedConfiguration make_decorated(std::vector<Vec3> edges, Vec3 xi,
                                               const LengthVector& lengths);

 private:
  DecoratedConfiguration(std::vector<Vec3> edges, Vec3 xi, LengthVector lengths)
      : edges_(std::move(edges)), xi_(std::move(xi)), lengths_(std::move(lengths)) {}

  std::vector<Vec3> edges_;
  Vec3 xi_;
  LengthVector lengths_;
};

/// Validating constructor. Accepts inputs within 1e-9 of the constraint set
/// and stores an exactly-projected copy (residuals ~1e-15), so downstream
/// identities hold at the 1e-12 level.
inline DecoratedConfiguration make_decorated(std::vector<Vec3> edges, Vec3 xi,
                                             const LengthVector& lengths) {
  const int n = lengths.n();
  if (static_cast<int>(edges.size()) != n)
    throw DimensionMismatch("make_decorated: edge count does not match length vector");
  for (const auto& e : edges)
    if (!e.allFinite()) throw LengthViolation("make_decorated: non-finite edge");
  if (!xi.allFinite()) throw BadDecoration("make_decorated: non-finite decoration");

  Vec3 sum = Vec3::Zero();
  for (const auto& e : edges) sum += e;
  if (sum.norm() > 1e-9 * n)
    throw ClosureViolation("make_decorated: edges do not close, |sum| = " + std::to_string(sum.norm()));

  for (int i = 0; i < n; ++i) {
    const double err = std::abs(edges[static_cast<std::size_t>(i)].norm() - lengths[i]) / lengths[i];
    if (err > 1e-9)
      throw LengthViolation("make_decorated: edge " + std::to_string(i) +
                            " has relative length error " + std::to_string(err));
  }

  if (std::abs(xi.norm() - 1.0) > 1e-9)
    throw BadDecoration("make_decorated: |xi| deviates from 1 by " + std::to_string(std::abs(xi.norm() - 1.0)));
  xi.normalize();

  detail::project_edges(edges, lengths);
  return DecoratedConfiguration(std::move(edges), std::move(xi), lengths);
}

/// Planar configuration (no decoration): n edge vectors in the plane.
class PlanarConfiguration {
 public:
  int n() const { return static_cast<int>(edges_.size()); }
  const std::vector<Vec2>& edges() const { return edges_; }
  const Vec2& edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }
  const LengthVector& lengths() const { return lengths_; }

  friend PlanarConfiguration make_planar(std::vector<Vec2> edges, const LengthVector& lengths);

 private:
  PlanarConfiguration(std::vector<Vec2> edges, LengthVector lengths)
      : edges_(std::move(edges)), lengths_(std::move(lengths)) {}

  std::vector<Vec2> edges_;
  LengthVector lengths_;
};

inline PlanarConfiguration make_planar(std::vector<Vec2> edges, const LengthVector& lengths) {
  const int n = lengths.n();
  if (static_cast<int>(edges.size()) != n)
    throw DimensionMismatch("make_planar: edge count does not match length vector");
  Vec2 sum = Vec2::Zero();
  for (const auto& e : edges) sum += e;
  if (sum.norm() > 1e-9 * n) throw ClosureViolation("make_planar: edges do not close");
  for (int i = 0; i < n; ++i) {
    const double err = std::abs(edges[static_cast<std::size_t>(i)].norm() - lengths[i]) / lengths[i];
    if (err > 1e-9) throw LengthViolation("make_planar: edge " + std::to_string(i) + " has wrong length");
  }
  detail::project_edges_2d(edges, lengths);
  return PlanarConfiguration(std::move(edges), lengths);
}

/// Drops the z components. The configuration must lie in the z = 0 plane.
inline PlanarConfiguration planar_slice(const DecoratedConfiguration& config) {
  std::vector<Vec2> edges;
  edges.reserve(static_cast<std::size_t>(config.n()));
  for (const auto& e : config.edges()) {
    if (std::abs(e.z()) > 1e-9) throw NotCoplanar("planar_slice: configuration is not in the z=0 plane");
    edges.emplace_back(e.x(), e.y());
  }
  return make_planar(std::move(edges), config.lengths());
}

/// Vertices p_1..p_n under the gauge p_1 = origin.
inline std::vector<Vec3> vertices(const DecoratedConfiguration& config) {
  std::vector<Vec3> pts(static_cast<std::size_t>(config.n()));
  pts[0] = Vec3::Zero();
  for (int i = 1; i < config.n(); ++i) pts[static_cast<std::size_t>(i)] = pts[static_cast<std::size_t>(i - 1)] + config.edge(i - 1);
  return pts;
}

inline std::vector<Vec2> vertices(const PlanarConfiguration& config) {
  std::vector<Vec2> pts(static_cast<std::size_t>(config.n()));
  pts[0] = Vec2::Zero();
  for (int i = 1; i < config.n(); ++i) pts[static_cast<std::size_t>(i)] = pts[static_cast<std::size_t>(i - 1)] + config.edge(i - 1);
  return pts;
}

/// Winding number of a coplanar closed polyline about `center`, in the
/// orientation induced by `plane_normal` (counterclockwise seen from the
/// normal tip counts +1).
inline int winding_number(const std::vector<Vec3>& points, const Vec3& center,
                          const Vec3& plane_normal) {
  const std::size_t n = points.size();
  if (n < 3) throw DimensionMismatch("winding_number: need at least 3 points");
  const Vec3 normal = plane_normal.normalized();

  // Right-handed in-plane frame (b1, b2, normal).
  int axis = 0;
  for (int a = 1; a < 3; ++a)
    if (std::abs(normal[a]) < std::abs(normal[axis])) axis = a;
  Vec3 ref = Vec3::Zero();
  ref[axis] = 1.0;
  const Vec3 b1 = (ref - ref.dot(normal) * normal).normalized();
  const Vec3 b2 = normal.cross(b1);

  std::vector<Vec2> radial(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 d = points[i] - center;
    if (std::abs(d.dot(normal)) > 1e-8)
      throw NotCoplanar("winding_number: point " + std::to_string(i) + " is off the plane");
    radial[i] = Vec2(d.dot(b1), d.dot(b2));
    if (radial[i].norm() < 1e-9)
      throw CenterOnPolygonVertex("winding_number: vertex " + std::to_string(i) + " coincides with the center");
  }

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = radial[i];
    const Vec2& b = radial[(i + 1) % n];
    total += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
  }
  const double w = total / kTwoPi;
  const double rounded = std::round(w);
  if (std::abs(w - rounded) >= 1e-6)
    throw NumericalError("winding_number: non-integral winding " + std::to_string(w));
  return static_cast<int>(rounded);
}

/// Replaces edge i by the fold (u_i, -u_i, u_i); the length vector is spliced
/// the same way. Vertices and the decorated area are unchanged.
inline DecoratedConfiguration threefold_embed(const DecoratedConfiguration& config, int edge_index) {
  const int n = config.n();
  if (edge_index < 0 || edge_index >= n)
    throw DimensionMismatch("threefold_embed: edge index out of range");
  std::vector<Vec3> edges;
  std::vector<double> lengths;
  edges.reserve(static_cast<std::size_t>(n + 2));
  lengths.reserve(static_cast<std::size_t>(n + 2));
  for (int i = 0; i < n; ++i) {
    const Vec3& u = config.edge(i);
    edges.push_back(u);
    lengths.push_back(config.lengths()[i]);
    if (i == edge_index) {
      edges.push_back(-u);
      edges.push_back(u);
      lengths.push_back(config.lengths()[i]);
      lengths.push_back(config.lengths()[i]);
    }
  }
  return make_decorated(std::move(edges), config.xi(), LengthVector(std::move(lengths)));
}

/// Distance modulo proper rotations: min over Q in SO(3) of
/// sqrt(sum |Q u_i - v_i|^2 + |Q xi_1 - xi_2|^2), via the orthogonal polar
/// factor of the cross-covariance (Kabsch).
inline double configuration_distance(const DecoratedConfiguration& c1,
                                     const DecoratedConfiguration& c2) {
  if (c1.n() != c2.n()) throw DimensionMismatch("configuration_distance: different n");
  for (int i = 0; i < c1.n(); ++i)
    if (std::abs(c1.lengths()[i] - c2.lengths()[i]) > 1e-12)
      throw DimensionMismatch("configuration_distance: different length vectors");

  Mat3 h = c1.xi() * c2.xi().transpose();
  for (int i = 0; i < c1.n(); ++i) h += c1.edge(i) * c2.edge(i).transpose();

  Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 d = Mat3::Identity();
  d(2, 2) = (svd.matrixV() * svd.matrixU().transpose()).determinant() > 0.0 ? 1.0 : -1.0;
  const Mat3 q = svd.matrixV() * d * svd.matrixU().transpose();

  double sq = (q * c1.xi() - c2.xi()).squaredNorm();
  for (int i = 0; i < c1.n(); ++i) sq += (q * c1.edge(i) - c2.edge(i)).squaredNorm();
  return std::sqrt(std::max(0.0, sq));
}

}  // namespace linkmorse
