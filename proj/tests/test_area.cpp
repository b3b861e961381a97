#include <catch2/catch_amalgamated.hpp>

#include "linkmorse/area.hpp"
#include "linkmorse/catalog.hpp"
#include "linkmorse/hessian.hpp"
#include "oracles.hpp"

using namespace linkmorse;

namespace {

DecoratedConfiguration regular(int n, int omega) {
  return make_decorated(oracle::regular_star_edges(n, omega), Vec3(0, 0, 1), LengthVector::ones(n));
}

// Area of the unit-side regular pentagon: (1/4) sqrt(25 + 10 sqrt 5).
const double kPentagonArea = 0.25 * std::sqrt(25.0 + 10.0 * std::sqrt(5.0));

}  // namespace

TEST_CASE("shoelace on squares and the regular pentagon", "[area]") {
  const std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  REQUIRE(signed_area_2d(square) == 1.0);
  const std::vector<Vec2> reversed{{0, 1}, {1, 1}, {1, 0}, {0, 0}};
  REQUIRE(signed_area_2d(reversed) == -1.0);

  const auto pts3 = vertices(regular(5, 1));
  std::vector<Vec2> pts;
  for (const auto& p : pts3) pts.emplace_back(p.x(), p.y());
  REQUIRE(std::abs(signed_area_2d(pts) - kPentagonArea) < 1e-12);
  REQUIRE(std::abs(kPentagonArea - 1.720477) < 1e-6);
}

TEST_CASE("vector area: pentagon value, translation invariance, fold", "[area]") {
  const auto convex = regular(5, 1);
  const Vec3 va = vector_area(convex);
  REQUIRE((va - Vec3(0, 0, kPentagonArea)).norm() < 1e-12);

  // Translating every vertex leaves 1/2 sum p_i x p_{i+1} unchanged.
  const auto pts = vertices(convex);
  const Vec3 shift(0.3, -1.7, 2.5);
  Vec3 translated = Vec3::Zero();
  for (std::size_t i = 0; i < pts.size(); ++i)
    translated += 0.5 * (pts[i] + shift).cross(pts[(i + 1) % pts.size()] + shift);
  REQUIRE((translated - va).norm() < 1e-12);

  for (int i = 0; i < 5; ++i)
    REQUIRE((vector_area(threefold_embed(convex, i)) - va).norm() < 1e-12);
}

TEST_CASE("decorated area values and antisymmetry", "[area]") {
  const auto convex = regular(5, 1);
  REQUIRE(std::abs(area_S(convex) - kPentagonArea) < 1e-12);

  const auto flipped = make_decorated(convex.edges(), Vec3(0, 0, -1), convex.lengths());
  REQUIRE(area_S(flipped) == -area_S(convex));

  // Pentagram: five central triangles, S = 5 R^2 sin(4 pi / 5) / 2.
  const auto star = regular(5, 2);
  const double expected = oracle::regular_star_area(5, 2);
  REQUIRE(std::abs(expected - 0.4061496) < 1e-7);
  REQUIRE(std::abs(area_S(star) - expected) < 1e-12);
  REQUIRE(std::abs(projected_area(star) - expected) < 1e-12);
}

TEST_CASE("projected area agrees with the scalar-product definition", "[area]") {
  const auto convex = regular(5, 1);
  REQUIRE(std::abs(projected_area(convex) - area_S(convex)) < 1e-12);

  Rng rng(314);
  for (int trial = 0; trial < 100; ++trial) {
    const auto cfg = random_configuration(LengthVector::ones(7), rng);
    REQUIRE(std::abs(projected_area(cfg) - area_S(cfg)) < 1e-10);
  }

  // xi inside the polygon plane collapses the projection to a segment.
  const auto sideways = make_decorated(convex.edges(), Vec3(1, 0, 0), convex.lengths());
  REQUIRE(std::abs(area_S(sideways)) < 1e-10);
  REQUIRE(std::abs(projected_area(sideways)) < 1e-10);
}

TEST_CASE("area is invariant under simultaneous rotation", "[area]") {
  Rng rng(5891);
  const auto star = regular(5, 2);
  const double s = area_S(star);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rotated = oracle::rotate(star, oracle::random_rotation(rng));
    REQUIRE(std::abs(area_S(rotated) - s) < 1e-12);
  }
}

TEST_CASE("analytic gradient of S", "[area]") {
  Rng rng(777);
  const double h = 1e-5;
  for (int trial = 0; trial < 20; ++trial) {
    const auto cfg = random_configuration(LengthVector::ones(5), rng);
    const AmbientGradient grad = grad_S(cfg);

    REQUIRE((grad.d_xi - vector_area(cfg)).norm() < 1e-12);

    const double denom = std::max(1.0, grad_S_ambient(cfg).norm());
    for (int a = 0; a < 5; ++a) {
      for (int c = 0; c < 3; ++c) {
        auto up = cfg.edges();
        auto down = cfg.edges();
        up[static_cast<std::size_t>(a)][c] += h;
        down[static_cast<std::size_t>(a)][c] -= h;
        const double fd = (detail::area_S_raw(up, cfg.xi()) - detail::area_S_raw(down, cfg.xi())) / (2 * h);
        REQUIRE(std::abs(fd - grad.d_edges[static_cast<std::size_t>(a)][c]) / denom < 1e-6);
      }
    }
    for (int c = 0; c < 3; ++c) {
      Vec3 up = cfg.xi(), down = cfg.xi();
      up[c] += h;
      down[c] -= h;
      const double fd = (detail::area_S_raw(cfg.edges(), up) - detail::area_S_raw(cfg.edges(), down)) / (2 * h);
      REQUIRE(std::abs(fd - grad.d_xi[c]) / denom < 1e-6);
    }
  }
}

TEST_CASE("planar gradient vanishes exactly at cyclic polygons", "[area]") {
  for (int omega : {1, 2}) {
    const auto planar = planar_slice(regular(5, omega));
    REQUIRE(planar_projected_gradient_norm(planar) < 1e-12);
  }
  // ... and not at a generic configuration.
  Rng rng(31337);
  const auto cfg = random_configuration(LengthVector::ones(5), rng);
  const auto pts = vertices(cfg);
  (void)pts;
  REQUIRE(projected_gradient_norm(cfg) > 1e-3);
}
