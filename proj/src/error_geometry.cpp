#include "s2track/error_geometry.hpp"

#include <cmath>

namespace s2track {

namespace {

/// qᵀq_d with the antipodal exclusion applied.
double checked_cosine(const Vec3& q, const Vec3& qd) {
  const double c = q.dot(qd);
  if (c <= -1.0 + eps_antipodal) {
    throw AntipodalError(
        "error geometry is singular: pointing directions are antipodal");
  }
  return c;
}

}  // namespace

UnitVec3 pointing_direction(const Rotation& R, const UnitVec3& r_body) {
  // A rotation preserves the norm; skip revalidation.
  return UnitVec3::from_unit(R * r_body.vec());
}

double attitude_error_psi(const UnitVec3& q, const UnitVec3& qd) {
  const double c = checked_cosine(q.vec(), qd.vec());
  return 2.0 - std::sqrt(2.0 * (1.0 + c));
}

Vec3 config_error(const Rotation& Q, const Rotation& Qd, const UnitVec3& r_body) {
  const Vec3 q = Q * r_body.vec();
  const Vec3 qd = Qd * r_body.vec();
  const double c = checked_cosine(q, qd);
  return Q.matrix().transpose() * qd.cross(q) / std::sqrt(2.0 * (1.0 + c));
}

Vec3 velocity_error(const BodyState& state, const ReferenceState& ref) {
  return state.w_b - state.Q.matrix().transpose() * (ref.Qd.matrix() * ref.wd_b);
}

ErrorKinematics error_kinematics(const Rotation& Q, const Rotation& Qd,
                                 const UnitVec3& r_body) {
  const Vec3 q = Q * r_body.vec();
  const Vec3 qd = Qd * r_body.vec();
  const double c = checked_cosine(q, qd);
  const double denom = 2.0 * (1.0 + c);
  const Vec3 e_q = Q.matrix().transpose() * qd.cross(q) / std::sqrt(denom);

  ErrorKinematics k;
  k.E = (e_q * qd.transpose()) * hat(q) * Q.matrix() / denom +
        Q.matrix().transpose() * (c * Mat3::Identity() - qd * q.transpose()) *
            Q.matrix() / std::sqrt(denom);
  k.Xi = ((e_q * qd.transpose()) * hat(q) + (e_q * q.transpose()) * hat(qd)) *
         Qd.matrix() / denom;
  return k;
}

Vec3 eq_dot(const BodyState& state, const ReferenceState& ref,
            const UnitVec3& r_body) {
  const ErrorKinematics k = error_kinematics(state.Q, ref.Qd, r_body);
  return k.E * velocity_error(state, ref) + k.Xi * ref.wd_b;
}

Vec3 feedforward_d(const BodyState& state, const ReferenceState& ref) {
  const Mat3 rel = state.Q.matrix().transpose() * ref.Qd.matrix();
  return state.w_b.cross(rel * ref.wd_b) - rel * ref.wd_dot_b;
}

Vec3 feedforward_d_alt(const BodyState& state, const ReferenceState& ref) {
  const Mat3 rel = state.Q.matrix().transpose() * ref.Qd.matrix();
  const Vec3 wd_body = rel * ref.wd_b;
  return -wd_body.cross(velocity_error(state, ref)) - rel * ref.wd_dot_b;
}

ErrorState compute_error_state(const BodyState& state, const ReferenceState& ref,
                               const UnitVec3& r_body) {
  const Vec3 q = state.Q * r_body.vec();
  const Vec3 qd = ref.Qd * r_body.vec();
  const double c = checked_cosine(q, qd);
  const double denom = 2.0 * (1.0 + c);
  const double u = std::sqrt(denom);

  ErrorState err;
  err.psi = 2.0 - u;
  err.e_q = state.Q.matrix().transpose() * qd.cross(q) / u;
  err.e_w = velocity_error(state, ref);
  err.E = (err.e_q * qd.transpose()) * hat(q) * state.Q.matrix() / denom +
          state.Q.matrix().transpose() *
              (c * Mat3::Identity() - qd * q.transpose()) * state.Q.matrix() / u;
  err.Xi = ((err.e_q * qd.transpose()) * hat(q) +
            (err.e_q * q.transpose()) * hat(qd)) *
           ref.Qd.matrix() / denom;
  return err;
}

}  // namespace s2track
