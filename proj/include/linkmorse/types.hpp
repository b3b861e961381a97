#pragma once

#include <Eigen/Dense>

namespace linkmorse {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Skew matrix of v: cross_matrix(v) * w == v.cross(w).
inline Mat3 cross_matrix(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return m;
}

/// 2-D "cross" form: a.dot(det_form() * b) == a.x()*b.y() - a.y()*b.x().
inline Mat2 det_form() {
  Mat2 g;
  g << 0.0, 1.0, -1.0, 0.0;
  return g;
}

}  // namespace linkmorse
