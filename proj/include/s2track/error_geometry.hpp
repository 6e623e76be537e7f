#pragma once

#include "s2track/geometry.hpp"

namespace s2track {

/// Body attitude (body→world) plus body-frame angular velocity.
struct BodyState {
  Rotation Q = Rotation::identity();
  Vec3 w_b = Vec3::Zero();  // ᵇω [rad/s]
};

/// Desired attitude curve sample with its angular velocity profile.
struct ReferenceState {
  Rotation Qd = Rotation::identity();
  Vec3 wd_b = Vec3::Zero();      // ᵇω_d [rad/s]
  Vec3 wd_dot_b = Vec3::Zero();  // ᵇω̇_d [rad/s²]
};

/// The full S² tracking-error layer at one instant.
struct ErrorState {
  double psi = 0.0;  // Ψ ∈ [0, 2)
  Vec3 e_q = Vec3::Zero();
  Vec3 e_w = Vec3::Zero();
  Mat3 E = Mat3::Zero();
  Mat3 Xi = Mat3::Zero();
};

/// World-frame pointing direction q = R·r_body.
UnitVec3 pointing_direction(const Rotation& R, const UnitVec3& r_body);

/// Attitude error function Ψ = 2 − √(2(1 + qᵀq_d)).
/// Zero iff q = q_d; throws AntipodalError when qᵀq_d ≤ −1 + eps_antipodal.
double attitude_error_psi(const UnitVec3& q, const UnitVec3& qd);

/// Configuration error vector ᵇe_q = Qᵀ(q_d × q)/√(2(1 + qᵀq_d)),
/// body frame, with ‖ᵇe_q‖² = (1 − qᵀq_d)/2.
Vec3 config_error(const Rotation& Q, const Rotation& Qd, const UnitVec3& r_body);

/// Angular velocity error ᵇe_ω = ᵇω − QᵀQ_d ᵇω_d.
Vec3 velocity_error(const BodyState& state, const ReferenceState& ref);

struct ErrorKinematics {
  Mat3 E;
  Mat3 Xi;
};

/// The kinematic matrices of the configuration-error derivative:
///   E  = (ᵇe_q q_dᵀ)(q)^× Q / (2(1+qᵀq_d)) + Qᵀ(q_dᵀq I − q_d qᵀ)Q / √(2(1+qᵀq_d))
///   Ξ  = ((ᵇe_q q_dᵀ)(q)^× + (ᵇe_q qᵀ)(q_d)^×) Q_d / (2(1+qᵀq_d))
ErrorKinematics error_kinematics(const Rotation& Q, const Rotation& Qd,
                                 const UnitVec3& r_body);

/// ᵇė_q = E ᵇe_ω + Ξ ᵇω_d.
Vec3 eq_dot(const BodyState& state, const ReferenceState& ref,
            const UnitVec3& r_body);

/// Feedforward d = (ᵇω)^× QᵀQ_d ᵇω_d − QᵀQ_d ᵇω̇_d.
Vec3 feedforward_d(const BodyState& state, const ReferenceState& ref);

/// Algebraically identical alternative d = −(QᵀQ_d ᵇω_d)^× ᵇe_ω − QᵀQ_d ᵇω̇_d.
Vec3 feedforward_d_alt(const BodyState& state, const ReferenceState& ref);

/// Evaluates the full error layer (Ψ, ᵇe_q, ᵇe_ω, E, Ξ) in one pass.
ErrorState compute_error_state(const BodyState& state, const ReferenceState& ref,
                               const UnitVec3& r_body);

}  // namespace s2track
