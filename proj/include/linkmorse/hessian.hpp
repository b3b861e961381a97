#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linkmorse/area.hpp"
#include "linkmorse/catalog.hpp"
#include "linkmorse/config.hpp"
#include "linkmorse/errors.hpp"
#include "linkmorse/parallel.hpp"
#include "linkmorse/rng.hpp"
#include "linkmorse/types.hpp"

namespace linkmorse {

// Ambient coordinates: x = (u_1, ..., u_n, xi) in R^{3n+3} for the decorated
// space, x = (u_1, ..., u_n) in R^{2n} for the planar one. The quotient by
// rotations is never coordinatized: quotient-sensitive quantities project out
// the rotation generators instead.

namespace detail {

inline Vec pack(const std::vector<Vec3>& edges, const Vec3& xi) {
  const int n = static_cast<int>(edges.size());
  Vec x(3 * n + 3);
  for (int i = 0; i < n; ++i) x.segment<3>(3 * i) = edges[static_cast<std::size_t>(i)];
  x.segment<3>(3 * n) = xi;
  return x;
}

inline std::vector<Vec3> unpack_edges(const Vec& x, int n) {
  std::vector<Vec3> edges(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) edges[static_cast<std::size_t>(i)] = x.segment<3>(3 * i);
  return edges;
}

inline Vec grad_S_ambient_raw(const std::vector<Vec3>& edges, const Vec3& xi) {
  const int n = static_cast<int>(edges.size());
  const std::vector<Vec3> pts = vertices_raw(edges);

  std::vector<Vec3> by_vertex(static_cast<std::size_t>(n), Vec3::Zero());
  for (int i = 1; i < n; ++i) {
    const Vec3 diag = pts[static_cast<std::size_t>((i + 1) % n)] - pts[static_cast<std::size_t>(i - 1)];
    by_vertex[static_cast<std::size_t>(i)] = 0.5 * diag.cross(xi);
  }

  Vec g = Vec::Zero(3 * n + 3);
  Vec3 suffix = Vec3::Zero();
  for (int a = n - 1; a >= 0; --a) {
    g.segment<3>(3 * a) = suffix;
    suffix += by_vertex[static_cast<std::size_t>(a)];
  }
  g.segment<3>(3 * n) = vector_area_raw(edges);
  return g;
}

// Exact ambient Hessian of S. S is quadratic in the vertices and linear in
// xi; the vertex-level blocks are assembled first and chained through the
// prefix-sum Jacobian dv = T du.
inline Mat hessian_S_ambient_raw(const std::vector<Vec3>& edges, const Vec3& xi) {
  const int n = static_cast<int>(edges.size());
  const std::vector<Vec3> pts = vertices_raw(edges);
  const Mat3 x_skew = cross_matrix(xi);

  Mat w = Mat::Zero(3 * n, 3 * n);
  Mat w_xi = Mat::Zero(3 * n, 3);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    if (i > 0 && j > 0) {
      w.block<3, 3>(3 * i, 3 * j) -= x_skew;
      w.block<3, 3>(3 * j, 3 * i) += x_skew;
    }
    if (i > 0) w_xi.block<3, 3>(3 * i, 0) += cross_matrix(pts[static_cast<std::size_t>(j)]);
    if (j > 0) w_xi.block<3, 3>(3 * j, 0) -= cross_matrix(pts[static_cast<std::size_t>(i)]);
  }

  Mat t = Mat::Zero(3 * n, 3 * n);
  for (int i = 1; i < n; ++i)
    for (int a = 0; a < i; ++a) t.block<3, 3>(3 * i, 3 * a) = Mat3::Identity();

  Mat h = Mat::Zero(3 * n + 3, 3 * n + 3);
  h.topLeftCorner(3 * n, 3 * n) = 0.5 * (t.transpose() * w * t);
  h.topRightCorner(3 * n, 3) = 0.5 * (t.transpose() * w_xi);
  h.bottomLeftCorner(3, 3 * n) = h.topRightCorner(3 * n, 3).transpose();
  return h;
}

// Columns: n length gradients, 3 closure gradients, 1 decoration gradient.
inline Mat constraint_gradients_raw(const std::vector<Vec3>& edges, const Vec3& xi) {
  const int n = static_cast<int>(edges.size());
  Mat g = Mat::Zero(3 * n + 3, n + 4);
  for (int i = 0; i < n; ++i) g.block<3, 1>(3 * i, i) = edges[static_cast<std::size_t>(i)];
  for (int axis = 0; axis < 3; ++axis)
    for (int i = 0; i < n; ++i) g(3 * i + axis, n + axis) = 1.0;
  g.block<3, 1>(3 * n, n + 3) = xi;
  return g;
}

// The three elementary rotation actions (e_a x u_1, ..., e_a x u_n, e_a x xi).
inline Mat rotation_generators_raw(const std::vector<Vec3>& edges, const Vec3& xi) {
  const int n = static_cast<int>(edges.size());
  Mat r = Mat::Zero(3 * n + 3, 3);
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 e = Vec3::Zero();
    e[axis] = 1.0;
    for (int i = 0; i < n; ++i) r.block<3, 1>(3 * i, axis) = e.cross(edges[static_cast<std::size_t>(i)]);
    r.block<3, 1>(3 * n, axis) = e.cross(xi);
  }
  return r;
}

struct SplitFrame {
  Mat span;     // orthonormal basis of constraint gradients + generators
  Mat tangent;  // orthonormal basis of the orthogonal complement
};

inline SplitFrame split_frame(const Mat& columns, int expected_rank, const char* where) {
  Eigen::JacobiSVD<Mat> svd(columns, Eigen::ComputeFullU);
  const auto& sigma = svd.singularValues();
  const double top = sigma.size() > 0 ? sigma(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sigma.size(); ++i)
    if (sigma(i) > 1e-10 * top) ++rank;
  if (rank != expected_rank)
    throw RankDeficiency(std::string(where) + ": constraint/symmetry span has rank " +
                         std::to_string(rank) + ", expected " + std::to_string(expected_rank));
  const Mat u = svd.matrixU();
  return {u.leftCols(rank), u.rightCols(u.cols() - rank)};
}

inline SplitFrame decorated_frame_raw(const std::vector<Vec3>& edges, const Vec3& xi) {
  const int n = static_cast<int>(edges.size());
  Mat columns(3 * n + 3, n + 7);
  columns << constraint_gradients_raw(edges, xi), rotation_generators_raw(edges, xi);
  return split_frame(columns, n + 7, "tangent_frame");
}

inline double projected_gradient_norm_raw(const std::vector<Vec3>& edges, const Vec3& xi) {
  const SplitFrame frame = decorated_frame_raw(edges, xi);
  const Vec g = grad_S_ambient_raw(edges, xi);
  return (g - frame.span * (frame.span.transpose() * g)).norm();
}

}  // namespace detail

/// Orthonormal basis of the tangent space of the decorated constraint
/// manifold modulo rotations: 2n - 4 columns of dimension 3n + 3.
struct TangentFrame {
  Mat basis;
};

inline TangentFrame tangent_frame(const DecoratedConfiguration& config) {
  return {detail::decorated_frame_raw(config.edges(), config.xi()).tangent};
}

inline Vec grad_S_ambient(const DecoratedConfiguration& config) {
  return detail::grad_S_ambient_raw(config.edges(), config.xi());
}

inline Mat hessian_S_ambient(const DecoratedConfiguration& config) {
  return detail::hessian_S_ambient_raw(config.edges(), config.xi());
}

/// First-order optimality on the manifold: norm of grad S in the tangent
/// frame.
inline double projected_gradient_norm(const DecoratedConfiguration& config) {
  return detail::projected_gradient_norm_raw(config.edges(), config.xi());
}

/// Least-squares Lagrange multipliers over the constraint gradients.
struct Multipliers {
  Vec lambda;
  double residual{0.0};
};

inline Multipliers lagrange_multipliers(const DecoratedConfiguration& config) {
  const Mat g_mat = detail::constraint_gradients_raw(config.edges(), config.xi());
  const Vec g = grad_S_ambient(config);
  Multipliers m;
  m.lambda = g_mat.colPivHouseholderQr().solve(g);
  m.residual = (g - g_mat * m.lambda).norm();
  return m;
}

/// Ambient Hessian of the Lagrangian S - sum lambda_j g_j. Length and
/// decoration constraints contribute identity blocks; closure is linear.
inline Mat lagrangian_hessian(const DecoratedConfiguration& config, const Vec& lambda) {
  const int n = config.n();
  Mat h = hessian_S_ambient(config);
  for (int i = 0; i < n; ++i) h.block<3, 3>(3 * i, 3 * i) -= lambda(i) * Mat3::Identity();
  h.block<3, 3>(3 * n, 3 * n) -= lambda(n + 3) * Mat3::Identity();
  return h;
}

/// The (2n-4) x (2n-4) Hessian of S on the quotient manifold. Meaningful only
/// near critical points.
inline Mat projected_hessian(const DecoratedConfiguration& config) {
  if (projected_gradient_norm(config) >= 1e-6)
    throw NotNearCritical("projected_hessian: projected gradient is not small");
  const Multipliers m = lagrange_multipliers(config);
  const TangentFrame frame = tangent_frame(config);
  return frame.basis.transpose() * lagrangian_hessian(config, m.lambda) * frame.basis;
}

/// Eigenvalue signature with a relative zero threshold.
struct EigenCounts {
  int neg{0};
  int zero{0};
  int pos{0};
  double min_abs_nonzero{0.0};
  double max_abs{0.0};
};

inline EigenCounts eigen_counts(const Mat& matrix, double zero_tol = 1e-7) {
  if (matrix.rows() != matrix.cols()) throw NotSymmetric("eigen_counts: matrix is not square");
  const double scale = std::max(matrix.norm(), 1e-300);
  if ((matrix - matrix.transpose()).norm() > 1e-10 * scale)
    throw NotSymmetric("eigen_counts: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (matrix + matrix.transpose()));
  if (solver.info() != Eigen::Success) throw NumericalError("eigen_counts: eigensolver failed");
  const Vec& values = solver.eigenvalues();
  const Mat& vectors = solver.eigenvectors();

  EigenCounts counts;
  counts.max_abs = std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
  const double cutoff = zero_tol * counts.max_abs;
  counts.min_abs_nonzero = std::numeric_limits<double>::infinity();
  for (int i = 0; i < values.size(); ++i) {
    const double residual = (matrix * vectors.col(i) - values(i) * vectors.col(i)).norm();
    if (residual > 1e-10 * std::max(counts.max_abs, 1e-300))
      throw NumericalError("eigen_counts: eigenpair residual too large");
    if (std::abs(values(i)) <= cutoff) {
      ++counts.zero;
    } else {
      counts.min_abs_nonzero = std::min(counts.min_abs_nonzero, std::abs(values(i)));
      if (values(i) < 0.0) {
        ++counts.neg;
      } else {
        ++counts.pos;
      }
    }
  }
  if (!std::isfinite(counts.min_abs_nonzero)) counts.min_abs_nonzero = 0.0;
  return counts;
}

/// Signature report of the projected Hessian at one critical point.
struct HessianReport {
  int negatives{0};
  int zeros{0};
  int positives{0};
  double min_abs_nonzero{0.0};
  double gradient_residual{0.0};
  bool degenerate{false};
  bool fallback_engaged{false};
};

/// Damped Newton for the stationarity equation on the quotient manifold; each
/// accepted step strictly decreases the projected gradient norm, and every
/// iterate is re-projected onto the constraint set. Returns when the norm
/// drops below 1e-10 or the iteration budget is exhausted (convergence status
/// is carried by the result's residual).
inline DecoratedConfiguration refine_critical(const DecoratedConfiguration& config, int max_iters) {
  std::vector<Vec3> edges = config.edges();
  Vec3 xi = config.xi();
  const LengthVector& lengths = config.lengths();
  const int n = config.n();
  const int tangent_dim = 2 * n - 4;

  auto merit = [&](const std::vector<Vec3>& e, const Vec3& d) {
    return detail::projected_gradient_norm_raw(e, d);
  };

  double mu = 1e-8;
  double current = merit(edges, xi);
  for (int iter = 0; iter < max_iters && current >= 1e-10; ++iter) {
    detail::SplitFrame frame;
    try {
      frame = detail::decorated_frame_raw(edges, xi);
    } catch (const RankDeficiency&) {
      break;
    }
    const Mat& b = frame.tangent;
    const Vec g = detail::grad_S_ambient_raw(edges, xi);
    const Vec gt = b.transpose() * g;

    const Mat g_mat = detail::constraint_gradients_raw(edges, xi);
    const Vec lambda = g_mat.colPivHouseholderQr().solve(g);
    Mat h = detail::hessian_S_ambient_raw(edges, xi);
    for (int i = 0; i < n; ++i) h.block<3, 3>(3 * i, 3 * i) -= lambda(i) * Mat3::Identity();
    h.block<3, 3>(3 * n, 3 * n) -= lambda(n + 3) * Mat3::Identity();
    const Mat ht = b.transpose() * h * b;

    const double scale = std::max(ht.squaredNorm() / tangent_dim, 1e-12);
    bool accepted = false;
    for (int tries = 0; tries < 40 && !accepted; ++tries) {
      const Mat lhs = ht * ht + (mu * scale) * Mat::Identity(tangent_dim, tangent_dim);
      Vec delta = lhs.ldlt().solve(-(ht * gt));
      if (!delta.allFinite()) {
        mu *= 10.0;
        continue;
      }
      const double step_norm = delta.norm();
      if (step_norm > 0.5) delta *= 0.5 / step_norm;

      const Vec x_trial = detail::pack(edges, xi) + b * delta;
      std::vector<Vec3> trial_edges = detail::unpack_edges(x_trial, n);
      Vec3 trial_xi = x_trial.segment<3>(3 * n);
      const double xi_norm = trial_xi.norm();
      if (xi_norm < 1e-8) {
        mu *= 10.0;
        continue;
      }
      trial_xi /= xi_norm;
      if (detail::project_edges(trial_edges, lengths) > 1e-12) {
        mu *= 10.0;
        continue;
      }
      double trial_merit;
      try {
        trial_merit = merit(trial_edges, trial_xi);
      } catch (const RankDeficiency&) {
        mu *= 10.0;
        continue;
      }
      if (trial_merit < current) {
        edges = std::move(trial_edges);
        xi = trial_xi;
        current = trial_merit;
        mu = std::max(mu * 0.25, 1e-12);
        accepted = true;
      } else {
        mu *= 10.0;
      }
    }
    if (!accepted) break;
  }
  return make_decorated(std::move(edges), xi, lengths);
}

namespace detail {

inline HessianReport report_at(const DecoratedConfiguration& input) {
  DecoratedConfiguration config = input;
  double residual = projected_gradient_norm(config);
  if (residual >= 1e-8) {
    config = refine_critical(config, 50);
    residual = projected_gradient_norm(config);
  }
  if (residual >= 1e-6)
    throw NotNearCritical("numeric_index: point is not critical, residual " + std::to_string(residual));
  const Multipliers m = lagrange_multipliers(config);
  const TangentFrame frame = tangent_frame(config);
  const Mat ht = frame.basis.transpose() * lagrangian_hessian(config, m.lambda) * frame.basis;
  const EigenCounts counts = eigen_counts(ht, 1e-7);
  HessianReport report;
  report.negatives = counts.neg;
  report.zeros = counts.zero;
  report.positives = counts.pos;
  report.min_abs_nonzero = counts.min_abs_nonzero;
  report.gradient_residual = residual;
  report.degenerate = counts.zero > 0;
  return report;
}

}  // namespace detail

/// Certified Morse index of a catalog entry. A degenerate equilateral Hessian
/// (zero eigenvalues at the relative 1e-7 threshold) triggers the length
/// perturbation fallback (eps = 1e-3, three fixed seeds); degeneracy that
/// survives all seeds is surfaced as PersistentDegeneracy, never dropped.
inline HessianReport numeric_index(const CatalogEntry& entry) {
  const HessianReport direct = detail::report_at(entry.config);
  if (!direct.degenerate) return direct;

  std::optional<HessianReport> stabilized;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const LengthVector perturbed = perturb_lengths(entry.ctype.n(), {1e-3, seed});
    const CatalogEntry moved = build_cyclic(entry.ctype, perturbed);
    const HessianReport report = detail::report_at(moved.config);
    if (report.degenerate) continue;
    if (stabilized && stabilized->negatives != report.negatives)
      throw PersistentDegeneracy("numeric_index: perturbation seeds disagree at " + entry.key());
    stabilized = report;
  }
  if (!stabilized)
    throw PersistentDegeneracy("numeric_index: Hessian degenerate across 3 perturbation seeds at " +
                               entry.key());
  stabilized->fallback_engaged = true;
  return *stabilized;
}

// ---------------------------------------------------------------------------
// Planar mode: the area A on M_2(n). Ambient dimension 2n, constraint span
// n + 3 (lengths, closure, one rotation), tangent dimension n - 3.

namespace detail {

inline Vec pack_2d(const std::vector<Vec2>& edges) {
  const int n = static_cast<int>(edges.size());
  Vec x(2 * n);
  for (int i = 0; i < n; ++i) x.segment<2>(2 * i) = edges[static_cast<std::size_t>(i)];
  return x;
}

inline Mat constraint_gradients_2d(const std::vector<Vec2>& edges) {
  const int n = static_cast<int>(edges.size());
  Mat g = Mat::Zero(2 * n, n + 2);
  for (int i = 0; i < n; ++i) g.block<2, 1>(2 * i, i) = edges[static_cast<std::size_t>(i)];
  for (int axis = 0; axis < 2; ++axis)
    for (int i = 0; i < n; ++i) g(2 * i + axis, n + axis) = 1.0;
  return g;
}

inline Mat rotation_generator_2d(const std::vector<Vec2>& edges) {
  const int n = static_cast<int>(edges.size());
  Mat r = Mat::Zero(2 * n, 1);
  for (int i = 0; i < n; ++i) {
    const Vec2& u = edges[static_cast<std::size_t>(i)];
    r(2 * i, 0) = -u.y();
    r(2 * i + 1, 0) = u.x();
  }
  return r;
}

inline SplitFrame planar_frame_raw(const std::vector<Vec2>& edges) {
  const int n = static_cast<int>(edges.size());
  Mat columns(2 * n, n + 3);
  columns << constraint_gradients_2d(edges), rotation_generator_2d(edges);
  return split_frame(columns, n + 3, "planar_tangent_frame");
}

inline Vec grad_area_ambient_2d(const PlanarConfiguration& config) {
  const std::vector<Vec2> grad = grad_area_planar(config);
  return pack_2d(grad);
}

inline Mat hessian_area_ambient_2d(const PlanarConfiguration& config) {
  const int n = config.n();
  const Mat2 g = det_form();

  Mat w = Mat::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    if (i > 0 && j > 0) {
      w.block<2, 2>(2 * i, 2 * j) += g;
      w.block<2, 2>(2 * j, 2 * i) += g.transpose();
    }
  }
  Mat t = Mat::Zero(2 * n, 2 * n);
  for (int i = 1; i < n; ++i)
    for (int a = 0; a < i; ++a) t.block<2, 2>(2 * i, 2 * a) = Mat2::Identity();
  return 0.5 * (t.transpose() * w * t);
}

}  // namespace detail

/// Orthonormal basis of T M_2(n): n - 3 columns of dimension 2n.
struct PlanarTangentFrame {
  Mat basis;
};

inline PlanarTangentFrame planar_tangent_frame(const PlanarConfiguration& config) {
  return {detail::planar_frame_raw(config.edges()).tangent};
}

inline double planar_projected_gradient_norm(const PlanarConfiguration& config) {
  const detail::SplitFrame frame = detail::planar_frame_raw(config.edges());
  const Vec g = detail::grad_area_ambient_2d(config);
  return (g - frame.span * (frame.span.transpose() * g)).norm();
}

inline Mat planar_projected_hessian(const PlanarConfiguration& config) {
  if (planar_projected_gradient_norm(config) >= 1e-6)
    throw NotNearCritical("planar_projected_hessian: projected gradient is not small");
  const int n = config.n();
  const Mat g_mat = detail::constraint_gradients_2d(config.edges());
  const Vec g = detail::grad_area_ambient_2d(config);
  const Vec lambda = g_mat.colPivHouseholderQr().solve(g);
  Mat h = detail::hessian_area_ambient_2d(config);
  for (int i = 0; i < n; ++i) h.block<2, 2>(2 * i, 2 * i) -= lambda(i) * Mat2::Identity();
  const detail::SplitFrame frame = detail::planar_frame_raw(config.edges());
  return frame.tangent.transpose() * h * frame.tangent;
}

/// Morse data of a catalog entry in planar mode (the polygon alone, area A).
inline HessianReport planar_numeric_index(const CatalogEntry& entry) {
  const PlanarConfiguration planar = planar_slice(entry.config);
  const double residual = planar_projected_gradient_norm(planar);
  if (residual >= 1e-6)
    throw NotNearCritical("planar_numeric_index: entry is not planar-critical");
  const EigenCounts counts = eigen_counts(planar_projected_hessian(planar), 1e-7);
  HessianReport report;
  report.negatives = counts.neg;
  report.zeros = counts.zero;
  report.positives = counts.pos;
  report.min_abs_nonzero = counts.min_abs_nonzero;
  report.gradient_residual = residual;
  report.degenerate = counts.zero > 0;
  return report;
}

// ---------------------------------------------------------------------------
// Random-restart search for critical points and the two-class classifier.

enum class Classification { PlanarCyclic, NonPlanarCandidate, NotConverged };

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::PlanarCyclic: return "PlanarCyclic";
    case Classification::NonPlanarCandidate: return "NonPlanarCandidate";
    default: return "NotConverged";
  }
}

/// Raw diagnostics of the non-planar critical-candidate conditions; reported
/// as values, never as a pass/fail verdict.
struct NonPlanarDiagnostics {
  double xi_parallel_defect{0.0};  // |xi x S| / |S|
  double concyclicity_rms{0.0};    // radius spread of the projected vertices
  double coplanarity_max{0.0};     // max_i |det(T_i, S, d_i)|
};

struct SearchResult {
  DecoratedConfiguration found;
  double residual{0.0};
  std::optional<std::string> matched_entry;
  double match_distance{std::numeric_limits<double>::infinity()};
  Classification classification{Classification::NotConverged};
  std::optional<NonPlanarDiagnostics> diagnostics;
};

namespace detail {

inline NonPlanarDiagnostics nonplanar_diagnostics(const DecoratedConfiguration& config) {
  NonPlanarDiagnostics diag;
  const std::vector<Vec3> pts = vertices(config);
  const int n = config.n();
  const Vec3 s_vec = vector_area(config);
  const double s_norm = std::max(s_vec.norm(), 1e-300);
  diag.xi_parallel_defect = config.xi().cross(s_vec).norm() / s_norm;

  // Concyclicity of the projection onto the plane orthogonal to S.
  const Vec3 normal = s_vec / s_norm;
  int axis = 0;
  for (int a = 1; a < 3; ++a)
    if (std::abs(normal[a]) < std::abs(normal[axis])) axis = a;
  Vec3 ref = Vec3::Zero();
  ref[axis] = 1.0;
  const Vec3 b1 = (ref - ref.dot(normal) * normal).normalized();
  const Vec3 b2 = normal.cross(b1);
  Mat lhs(n, 3);
  Vec rhs(n);
  for (int i = 0; i < n; ++i) {
    const Vec2 q(pts[static_cast<std::size_t>(i)].dot(b1), pts[static_cast<std::size_t>(i)].dot(b2));
    lhs(i, 0) = 2.0 * q.x();
    lhs(i, 1) = 2.0 * q.y();
    lhs(i, 2) = 1.0;
    rhs(i) = q.squaredNorm();
  }
  const Vec fit = lhs.colPivHouseholderQr().solve(rhs);
  const Vec2 center(fit(0), fit(1));
  double mean_r = 0.0;
  std::vector<double> radii(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Vec2 q(pts[static_cast<std::size_t>(i)].dot(b1), pts[static_cast<std::size_t>(i)].dot(b2));
    radii[static_cast<std::size_t>(i)] = (q - center).norm();
    mean_r += radii[static_cast<std::size_t>(i)];
  }
  mean_r /= n;
  double var = 0.0;
  for (double r : radii) var += (r - mean_r) * (r - mean_r);
  diag.concyclicity_rms = std::sqrt(var / n);

  // Coplanarity of (T_i, S, d_i) with T_i the triangle vector area and d_i
  // the short diagonal.
  for (int i = 0; i < n; ++i) {
    const Vec3& prev = pts[static_cast<std::size_t>((i + n - 1) % n)];
    const Vec3& here = pts[static_cast<std::size_t>(i)];
    const Vec3& next = pts[static_cast<std::size_t>((i + 1) % n)];
    const Vec3 tri = 0.5 * (here - prev).cross(next - here);
    const Vec3 diag_i = next - prev;
    const double det = tri.dot(s_vec.cross(diag_i));
    diag.coplanarity_max = std::max(diag.coplanarity_max, std::abs(det));
  }
  return diag;
}

}  // namespace detail

/// Sorts a converged candidate into the two classes of critical points:
/// planar cyclic pairs (matched against the catalog modulo rotation) and
/// non-planar candidates, which carry their raw condition diagnostics.
inline SearchResult classify_candidate(const DecoratedConfiguration& config, const Catalog& catalog,
                                       double tol) {
  SearchResult result{config, projected_gradient_norm(config), std::nullopt,
                      std::numeric_limits<double>::infinity(), Classification::NotConverged,
                      std::nullopt};
  if (result.residual >= 1e-8) return result;

  const std::vector<Vec3> pts = vertices(config);
  Vec3 centroid = Vec3::Zero();
  for (const auto& p : pts) centroid += p;
  centroid /= static_cast<double>(pts.size());
  double planarity = 0.0;
  for (const auto& p : pts) planarity = std::max(planarity, std::abs((p - centroid).dot(config.xi())));

  if (planarity <= tol) {
    const auto [entry, dist] = catalog.best_match(config);
    if (entry != nullptr && dist <= tol) {
      result.classification = Classification::PlanarCyclic;
      result.matched_entry = entry->key();
      result.match_distance = dist;
      return result;
    }
  }
  result.classification = Classification::NonPlanarCandidate;
  result.diagnostics = detail::nonplanar_diagnostics(config);
  return result;
}

/// Random feasible start: uniform edge directions and decoration, projected
/// onto the constraint set by alternating projection.
inline DecoratedConfiguration random_configuration(const LengthVector& lengths, Rng& rng) {
  const int n = lengths.n();
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<Vec3> edges(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) edges[static_cast<std::size_t>(i)] = lengths[i] * rng.unit_vector3();
    if (detail::project_edges(edges, lengths, 1e-14, 200) <= 1e-12)
      return make_decorated(std::move(edges), rng.unit_vector3(), lengths);
  }
  throw NumericalError("random_configuration: projection stalled repeatedly");
}

/// Random-restart critical search. Deterministic for fixed (n, restarts,
/// seed): restart r uses the derived seed (seed XOR r) and results are merged
/// in restart order regardless of scheduling.
inline std::vector<SearchResult> random_search(int n, int restarts, std::uint64_t seed) {
  if (n < 5 || n % 2 == 0) throw BadParity("random_search: n must be odd and >= 5");
  if (restarts < 1) throw std::invalid_argument("random_search: restarts must be >= 1");
  const LengthVector lengths = LengthVector::ones(n);
  const Catalog catalog = build_catalog(n);

  std::vector<std::optional<SearchResult>> slots(static_cast<std::size_t>(restarts));
  parallel_for(restarts, [&](int r) {
    Rng rng(seed ^ static_cast<std::uint64_t>(r));
    const DecoratedConfiguration start = random_configuration(lengths, rng);
    const DecoratedConfiguration refined = refine_critical(start, 300);
    const double residual = projected_gradient_norm(refined);
    if (residual < 1e-9) {
      slots[static_cast<std::size_t>(r)] = classify_candidate(refined, catalog, 1e-6);
    } else {
      slots[static_cast<std::size_t>(r)] =
          SearchResult{refined, residual, std::nullopt, std::numeric_limits<double>::infinity(),
                       Classification::NotConverged, std::nullopt};
    }
  });

  std::vector<SearchResult> results;
  results.reserve(static_cast<std::size_t>(restarts));
  for (auto& s : slots) results.push_back(std::move(*s));
  return results;
}

/// Certifies every entry of a catalog; results in entry order.
inline std::vector<HessianReport> certify_catalog(const Catalog& catalog) {
  std::vector<HessianReport> reports(catalog.entries.size());
  parallel_for(static_cast<int>(catalog.entries.size()),
               [&](int i) { reports[static_cast<std::size_t>(i)] = numeric_index(catalog.entries[static_cast<std::size_t>(i)]); });
  return reports;
}

/// Max relative deviation between the analytic gradient of S and central
/// finite differences (step 1e-5) over seeded random configurations;
/// deviations are measured against max(1, |grad S|).
inline double max_fd_gradient_error(int n, int samples, std::uint64_t seed) {
  if (n < 5 || n % 2 == 0) throw BadParity("max_fd_gradient_error: n must be odd and >= 5");
  if (samples < 1) throw std::invalid_argument("max_fd_gradient_error: samples must be >= 1");
  const LengthVector lengths = LengthVector::ones(n);
  const double h = 1e-5;

  std::vector<double> errors(static_cast<std::size_t>(samples), 0.0);
  parallel_for(samples, [&](int s) {
    Rng rng(seed ^ static_cast<std::uint64_t>(s));
    const DecoratedConfiguration config = random_configuration(lengths, rng);
    const Vec analytic = grad_S_ambient(config);
    const double denom = std::max(1.0, analytic.norm());

    Vec x = detail::pack(config.edges(), config.xi());
    double worst = 0.0;
    for (int c = 0; c < x.size(); ++c) {
      const double saved = x(c);
      x(c) = saved + h;
      const double up = detail::area_S_raw(detail::unpack_edges(x, n), x.segment<3>(3 * n));
      x(c) = saved - h;
      const double down = detail::area_S_raw(detail::unpack_edges(x, n), x.segment<3>(3 * n));
      x(c) = saved;
      const double fd = (up - down) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - analytic(c)) / denom);
    }
    errors[static_cast<std::size_t>(s)] = worst;
  });
  double max_err = 0.0;
  for (double e : errors) max_err = std::max(max_err, e);
  return max_err;
}

}  // namespace linkmorse
