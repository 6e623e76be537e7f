#include "s2track/geometry.hpp"

#include <cmath>
#include <string>

namespace s2track {

Mat3 hat(const Vec3& r) {
  Mat3 m;
  m << 0.0, -r.z(), r.y(),
       r.z(), 0.0, -r.x(),
      -r.y(), r.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) {
  const double defect = (m + m.transpose()).norm();
  if (defect > tol_skew) {
    throw NotSkewError("vee: matrix is not skew-symmetric (defect " +
                       std::to_string(defect) + ")");
  }
  return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

UnitVec3 UnitVec3::from_unit(const Vec3& v) {
  if (std::abs(v.norm() - 1.0) > tol_unit) {
    throw DegenerateError("UnitVec3: vector is not unit norm");
  }
  return UnitVec3(v);
}

UnitVec3 UnitVec3::normalized(const Vec3& v) {
  const double n = v.norm();
  if (n < 1e-12) {
    throw DegenerateError("UnitVec3: cannot normalize a near-zero vector");
  }
  return UnitVec3(v / n);
}

Rotation Rotation::identity() { return Rotation(Mat3::Identity()); }

Rotation Rotation::from_matrix(const Mat3& m) {
  const double orth_defect = (m.transpose() * m - Mat3::Identity()).norm();
  if (orth_defect > tol_orth || std::abs(m.determinant() - 1.0) > tol_orth) {
    throw DegenerateError("Rotation: matrix is not proper orthogonal");
  }
  return Rotation(m);
}

Rotation exp_rodrigues(const UnitVec3& axis, double angle) {
  const Mat3 k = hat(axis.vec());
  const Mat3 m = Mat3::Identity() + k * std::sin(angle) +
                 (k * k) * (1.0 - std::cos(angle));
  return Rotation::unchecked(m);
}

Rotation reorthonormalize(const Mat3& m) {
  if (m.determinant() <= 1e-6) {
    throw DegenerateError("reorthonormalize: determinant not positive");
  }
  Mat3 x = m;
  for (int iter = 0; iter < 60; ++iter) {
    const double defect = (x.transpose() * x - Mat3::Identity()).norm();
    if (defect < 1e-14) {
      return Rotation::unchecked(x);
    }
    x = 0.5 * (x + x.inverse().transpose());
  }
  // Newton on the polar factor converges quadratically for det > 0; reaching
  // this means the input was numerically hostile.
  throw DegenerateError("reorthonormalize: polar iteration did not converge");
}

}  // namespace s2track
