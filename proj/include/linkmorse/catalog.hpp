#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "linkmorse/area.hpp"
#include "linkmorse/config.hpp"
#include "linkmorse/errors.hpp"
#include "linkmorse/parallel.hpp"
#include "linkmorse/types.hpp"

namespace linkmorse {

/// Combinatorial code of a critical pair: one sign per edge (+1 =
/// counterclockwise in the orientation induced by xi) and the signed winding
/// number about the circumcenter.
struct CyclicType {
  std::vector<int> signs;
  int omega{0};

  int n() const { return static_cast<int>(signs.size()); }
  int k() const { return (n() - 1) / 2; }

  /// Number of counterclockwise edges.
  int e() const {
    int c = 0;
    for (int s : signs) c += (s > 0) ? 1 : 0;
    return c;
  }

  int sign_sum() const {
    int s = 0;
    for (int v : signs) s += v;
    return s;
  }

  /// Edges on the minority side.
  int minority_count() const { return std::min(e(), n() - e()); }

  bool operator==(const CyclicType& other) const {
    return omega == other.omega && signs == other.signs;
  }
};

inline bool admissible(const CyclicType& t) {
  const int n = t.n();
  if (n < 5 || n % 2 == 0) return false;
  for (int s : t.signs)
    if (s != 1 && s != -1) return false;
  const int sum = t.sign_sum();
  if (t.omega == 0 || (t.omega > 0) != (sum > 0)) return false;
  return std::abs(t.omega) <= t.k() - t.minority_count();
}

inline void require_admissible(const CyclicType& t, const char* where) {
  if (!admissible(t)) throw Inadmissible(std::string(where) + ": inadmissible cyclic type");
}

/// Canonical key, also the SVG filename stem: "n5_sppppm_w1"
/// (p = +1, m = -1).
inline std::string type_key(const CyclicType& t) {
  std::string key = "n" + std::to_string(t.n()) + "_s";
  for (int s : t.signs) key += (s > 0) ? 'p' : 'm';
  key += "_w" + std::to_string(t.omega);
  return key;
}

/// The involution partner (-signs, -omega): the same polygon with the
/// opposite decoration.
inline CyclicType mirrored(const CyclicType& t) {
  CyclicType m = t;
  for (int& s : m.signs) s = -s;
  m.omega = -t.omega;
  return m;
}

/// Type of the three-fold embedding at edge i: s_i is replaced by the triple
/// (s_i, -s_i, s_i); omega is unchanged.
inline CyclicType threefold_type(const CyclicType& t, int edge_index) {
  CyclicType r;
  r.omega = t.omega;
  for (int i = 0; i < t.n(); ++i) {
    const int s = t.signs[static_cast<std::size_t>(i)];
    r.signs.push_back(s);
    if (i == edge_index) {
      r.signs.push_back(-s);
      r.signs.push_back(s);
    }
  }
  return r;
}

/// All admissible (signs, omega), lexicographic in signs (-1 before +1),
/// then omega ascending. Count: 2 * sum_{c=0}^{k-1} C(n,c) (k-c).
inline std::vector<CyclicType> enumerate_types(int n) {
  if (n < 5 || n % 2 == 0) throw BadParity("enumerate_types: n must be odd and >= 5");
  const int k = (n - 1) / 2;
  std::vector<CyclicType> out;
  for (std::uint64_t word = 0; word < (std::uint64_t{1} << n); ++word) {
    CyclicType t;
    t.signs.resize(static_cast<std::size_t>(n));
    int e = 0;
    for (int i = 0; i < n; ++i) {
      const bool plus = (word >> (n - 1 - i)) & 1u;
      t.signs[static_cast<std::size_t>(i)] = plus ? 1 : -1;
      e += plus ? 1 : 0;
    }
    const int minority = std::min(e, n - e);
    const int max_abs_omega = k - minority;
    if (max_abs_omega < 1) continue;
    if (2 * e > n) {
      for (int w = 1; w <= max_abs_omega; ++w) {
        t.omega = w;
        out.push_back(t);
      }
    } else {
      for (int w = -max_abs_omega; w <= -1; ++w) {
        t.omega = w;
        out.push_back(t);
      }
    }
  }
  return out;
}

/// Circumradius and the central angle of a unit-length edge.
struct CircleSolve {
  double theta{0.0};
  double radius{0.0};
};

namespace detail {

// Angular closing defect at circumradius r.
inline double closing_defect(const LengthVector& lengths, const std::vector<int>& signs,
                             int omega, double r) {
  double sum = 0.0;
  for (int i = 0; i < lengths.n(); ++i)
    sum += signs[static_cast<std::size_t>(i)] * 2.0 * std::asin(lengths[i] / (2.0 * r));
  return sum - kTwoPi * omega;
}

}  // namespace detail

/// Solves sum s_i * 2 asin(l_i / 2R) = 2 pi omega for the circumradius.
/// Equilateral types take the closed form theta = 2 pi |omega| / |sum s|;
/// perturbed ones run safeguarded Newton inside a sign-change bracket.
inline CircleSolve central_angle(const LengthVector& lengths, const std::vector<int>& signs,
                                 int omega) {
  CyclicType t{signs, omega};
  require_admissible(t, "central_angle");
  if (lengths.n() != t.n()) throw DimensionMismatch("central_angle: length/sign size mismatch");

  if (lengths.equilateral()) {
    const double theta = kTwoPi * std::abs(omega) / std::abs(t.sign_sum());
    return {theta, 1.0 / (2.0 * std::sin(0.5 * theta))};
  }

  double max_len = 0.0;
  for (int i = 0; i < lengths.n(); ++i) max_len = std::max(max_len, lengths[i]);
  double lo = 0.5 * max_len + 1e-15;
  double hi = 1e3;
  double f_lo = detail::closing_defect(lengths, signs, omega, lo);
  double f_hi = detail::closing_defect(lengths, signs, omega, hi);
  if (f_lo == 0.0) return {2.0 * std::asin(1.0 / (2.0 * lo)), lo};
  if ((f_lo > 0.0) == (f_hi > 0.0))
    throw NoRoot("central_angle: no circumradius in bracket (perturbation too large)");

  const double theta0 = kTwoPi * std::abs(omega) / std::abs(t.sign_sum());
  double r = std::clamp(1.0 / (2.0 * std::sin(0.5 * theta0)), lo, hi);
  double f = detail::closing_defect(lengths, signs, omega, r);
  for (int iter = 0; iter < 200 && std::abs(f) >= 1e-12; ++iter) {
    if ((f > 0.0) == (f_lo > 0.0)) {
      lo = r;
    } else {
      hi = r;
    }
    double slope = 0.0;
    for (int i = 0; i < lengths.n(); ++i) {
      const double x = lengths[i] / (2.0 * r);
      slope -= signs[static_cast<std::size_t>(i)] * lengths[i] /
               (r * r * std::sqrt(std::max(1e-300, 1.0 - x * x)));
    }
    double next = (slope != 0.0) ? r - f / slope : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    r = next;
    f = detail::closing_defect(lengths, signs, omega, r);
  }
  if (std::abs(f) >= 1e-12) throw NoRoot("central_angle: root finder did not reach 1e-12");
  return {2.0 * std::asin(1.0 / (2.0 * r)), r};
}

/// One realized critical pair. The polygon lives in the z = 0 plane with
/// xi = +z; the partner with the opposite decoration is represented by the
/// mirrored type, never by storing xi = -z.
struct CatalogEntry {
  CyclicType ctype;
  double theta{0.0};
  double radius{0.0};
  DecoratedConfiguration config;
  double s_value{0.0};
  int index_combinatorial{0};
  std::optional<int> index_numeric;

  /// Circumcenter in the p_1 = origin gauge (vertex 1 sits at polar angle 0).
  Vec3 circumcenter() const { return {-radius, 0.0, 0.0}; }

  std::string key() const { return type_key(ctype); }
};

/// Morse index of the decorated pair: 2e - 2 omega - 2.
inline int combinatorial_index(const CyclicType& t) {
  require_admissible(t, "combinatorial_index");
  return 2 * t.e() - 2 * t.omega - 2;
}

/// Morse index of the planar polygon for the area A: e - 2 omega - 1 on the
/// positive-winding branch; the negative branch takes the complement in
/// dim M_2(n) = n - 3.
inline int planar_index(const CyclicType& t) {
  require_admissible(t, "planar_index");
  if (t.omega > 0) return t.e() - 2 * t.omega - 1;
  const CyclicType m = mirrored(t);
  return (t.n() - 3) - (m.e() - 2 * m.omega - 1);
}

/// Realizes a type on its circle: vertex 1 at polar angle 0, vertex angles
/// advancing by s_i * theta_i, xi = +z.
inline CatalogEntry build_cyclic(const CyclicType& ctype, const LengthVector& lengths) {
  require_admissible(ctype, "build_cyclic");
  if (lengths.n() != ctype.n()) throw DimensionMismatch("build_cyclic: length/type size mismatch");
  const int n = ctype.n();
  const CircleSolve circle = central_angle(lengths, ctype.signs, ctype.omega);
  const double r = circle.radius;

  std::vector<double> phi(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    const double theta_i = 2.0 * std::asin(lengths[i] / (2.0 * r));
    phi[static_cast<std::size_t>(i) + 1] = phi[static_cast<std::size_t>(i)] +
                                           ctype.signs[static_cast<std::size_t>(i)] * theta_i;
  }

  std::vector<Vec3> edges(static_cast<std::size_t>(n));
  auto on_circle = [&](double a) { return Vec3(r * std::cos(a), r * std::sin(a), 0.0); };
  for (int i = 0; i < n; ++i)
    edges[static_cast<std::size_t>(i)] = on_circle(phi[static_cast<std::size_t>(i) + 1]) -
                                         on_circle(phi[static_cast<std::size_t>(i)]);

  CatalogEntry entry{ctype,
                     circle.theta,
                     r,
                     make_decorated(std::move(edges), Vec3(0.0, 0.0, 1.0), lengths),
                     0.0,
                     combinatorial_index(ctype),
                     std::nullopt};
  entry.s_value = area_S(entry.config);

  // Realization checks: vertices on the circle, prescribed winding, S-sign.
  const std::vector<Vec3> pts = vertices(entry.config);
  const Vec3 center = entry.circumcenter();
  for (const auto& p : pts)
    if (std::abs((p - center).norm() - r) > 1e-10)
      throw NumericalError("build_cyclic: vertex off the circumscribed circle");
  if (winding_number(pts, center, Vec3(0.0, 0.0, 1.0)) != ctype.omega)
    throw NumericalError("build_cyclic: realized winding disagrees with the type");
  if ((entry.s_value > 0.0) != (ctype.omega > 0))
    throw NumericalError("build_cyclic: S-value sign disagrees with the winding");
  return entry;
}

/// All critical pairs for one length vector, in enumeration order (already
/// deterministic; realization is parallel with results placed by index).
struct Catalog {
  int n{0};
  LengthVector lengths{LengthVector::ones(5)};
  std::vector<CatalogEntry> entries;

  const CatalogEntry* find(const std::string& key) const {
    for (const auto& e : entries)
      if (e.key() == key) return &e;
    return nullptr;
  }

  /// Closest entry by configuration_distance.
  std::pair<const CatalogEntry*, double> best_match(const DecoratedConfiguration& config) const {
    const CatalogEntry* best = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& e : entries) {
      const double d = configuration_distance(config, e.config);
      if (d < best_dist) {
        best_dist = d;
        best = &e;
      }
    }
    return {best, best_dist};
  }
};

inline Catalog build_catalog(int n, const LengthVector& lengths) {
  if (lengths.n() != n) throw DimensionMismatch("build_catalog: n does not match length vector");
  const std::vector<CyclicType> types = enumerate_types(n);
  Catalog catalog{n, lengths, {}};
  std::vector<std::optional<CatalogEntry>> slots(types.size());
  parallel_for(static_cast<int>(types.size()), [&](int i) {
    slots[static_cast<std::size_t>(i)] = build_cyclic(types[static_cast<std::size_t>(i)], lengths);
  });
  catalog.entries.reserve(types.size());
  for (auto& s : slots) catalog.entries.push_back(std::move(*s));
  return catalog;
}

inline Catalog build_catalog(int n) { return build_catalog(n, LengthVector::ones(n)); }

}  // namespace linkmorse
