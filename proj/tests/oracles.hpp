#pragma once

// Test-only oracles, kept independent of the implementation paths they check.

#include <cstdint>
#include <vector>

#include "linkmorse/config.hpp"
#include "linkmorse/rng.hpp"
#include "linkmorse/types.hpp"

namespace oracle {

using linkmorse::Mat3;
using linkmorse::Rng;
using linkmorse::Vec2;
using linkmorse::Vec3;

/// Pascal-triangle binomial.
inline std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
  return row[static_cast<std::size_t>(r)];
}

/// Number of admissible cyclic types by a direct loop over all sign words
/// and winding numbers.
inline std::uint64_t count_types_brute(int n) {
  const int k = (n - 1) / 2;
  std::uint64_t count = 0;
  for (std::uint64_t word = 0; word < (std::uint64_t{1} << n); ++word) {
    int plus = 0;
    for (int i = 0; i < n; ++i) plus += (word >> i) & 1u;
    const int minority = std::min(plus, n - plus);
    for (int w = -k; w <= k; ++w) {
      if (w == 0) continue;
      if ((w > 0) != (2 * plus > n)) continue;
      if (std::abs(w) <= k - minority) ++count;
    }
  }
  return count;
}

/// Closed-form circumradius of the regular polygon with n unit sides, winding
/// omega: R = 1 / (2 sin(pi omega / n)).
inline double regular_radius(int n, int omega) {
  return 1.0 / (2.0 * std::sin(linkmorse::kPi * omega / n));
}

/// Area of the regular star polygon as n central isoceles triangles.
inline double regular_star_area(int n, int omega) {
  const double r = regular_radius(n, omega);
  return 0.5 * n * r * r * std::sin(linkmorse::kTwoPi * omega / n);
}

/// Uniform random rotation from a normalized quaternion.
inline Mat3 random_rotation(Rng& rng) {
  double q[4];
  double norm = 0.0;
  for (double& c : q) {
    // Box-Muller pair per component; the second value is discarded.
    double u1 = rng.uniform01();
    while (u1 <= 1e-300) u1 = rng.uniform01();
    const double u2 = rng.uniform01();
    c = std::sqrt(-2.0 * std::log(u1)) * std::cos(linkmorse::kTwoPi * u2);
    norm += c * c;
  }
  norm = std::sqrt(norm);
  Eigen::Quaterniond quat(q[0] / norm, q[1] / norm, q[2] / norm, q[3] / norm);
  return quat.toRotationMatrix();
}

inline linkmorse::DecoratedConfiguration rotate(const linkmorse::DecoratedConfiguration& config,
                                                const Mat3& q) {
  std::vector<Vec3> edges;
  edges.reserve(static_cast<std::size_t>(config.n()));
  for (const auto& e : config.edges()) edges.push_back(q * e);
  return linkmorse::make_decorated(std::move(edges), q * config.xi(), config.lengths());
}

/// Edge vectors of the regular star polygon realized around the origin,
/// vertex 1 at angle 0, in the z = 0 plane.
inline std::vector<Vec3> regular_star_edges(int n, int omega) {
  const double r = regular_radius(n, omega);
  const double step = linkmorse::kTwoPi * omega / n;
  std::vector<Vec3> edges;
  for (int i = 0; i < n; ++i) {
    const double a = step * i;
    const double b = step * (i + 1);
    edges.emplace_back(r * (std::cos(b) - std::cos(a)), r * (std::sin(b) - std::sin(a)), 0.0);
  }
  return edges;
}

}  // namespace oracle
