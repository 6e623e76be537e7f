#pragma once

#include <Eigen/Dense>

#include "s2track/errors.hpp"

namespace s2track {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

// Shared tolerances. Downstream modules import these instead of redefining.
inline constexpr double tol_orth = 1e-9;       // ‖RᵀR − I‖_F for a valid Rotation
inline constexpr double tol_skew = 1e-9;       // ‖m + mᵀ‖_F for vee()
inline constexpr double tol_unit = 1e-12;      // |‖v‖ − 1| for a UnitVec3
inline constexpr double eps_antipodal = 1e-9;  // excluded zone around qᵀq_d = −1

/// Skew-symmetric matrix of r, so that hat(r)·w = r × w.
Mat3 hat(const Vec3& r);

/// Inverse of hat(). Throws NotSkewError if ‖m + mᵀ‖_F > tol_skew.
Vec3 vee(const Mat3& m);

/// Unit-norm 3-vector. Value type; immutable.
class UnitVec3 {
 public:
  /// Validates ‖v‖ = 1 within tol_unit.
  static UnitVec3 from_unit(const Vec3& v);
  /// Normalizes v; throws DegenerateError on a near-zero vector.
  static UnitVec3 normalized(const Vec3& v);

  const Vec3& vec() const { return v_; }

 private:
  explicit UnitVec3(const Vec3& v) : v_(v) {}
  Vec3 v_;
};

/// Proper orthogonal 3×3 matrix. Value type; immutable.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}
  static Rotation identity();
  /// Validates mᵀm = I and det m = 1 within tol_orth.
  static Rotation from_matrix(const Mat3& m);

  const Mat3& matrix() const { return m_; }
  Rotation transposed() const { return Rotation(m_.transpose()); }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }
  Rotation operator*(const Rotation& o) const { return Rotation(m_ * o.m_); }

  /// Internal fast path for results that are rotations by construction
  /// (exponential map output, products of rotations, polar factors).
  static Rotation unchecked(const Mat3& m) { return Rotation(m); }

 private:
  explicit Rotation(const Mat3& m) : m_(m) {}
  Mat3 m_;
};

/// Rodrigues form of the exponential map:
///   exp(ε ξ^×) = I + ξ^× sin ε + (ξ^×)² (1 − cos ε).
Rotation exp_rodrigues(const UnitVec3& axis, double angle);

/// Nearest rotation in the Frobenius sense (symmetric polar factor), via the
/// Newton averaging iteration m ← (m + m⁻ᵀ)/2. Idempotent on exact rotations.
/// Throws DegenerateError if det(m) ≤ 1e-6.
Rotation reorthonormalize(const Mat3& m);

}  // namespace s2track
