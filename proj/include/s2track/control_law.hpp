#pragma once

#include "s2track/error_geometry.hpp"
#include "s2track/geometry.hpp"

namespace s2track {

/// True plant parameters alongside the controller's estimates. The plant side
/// is (J, c, tau); the controller side is (J_hat, c, tau_hat). The control law
/// must never read the plant side.
struct InertiaModel {
  Mat3 J = Mat3::Identity();      // true inertia [kg·m²], SPD
  Mat3 J_hat = Mat3::Identity();  // estimated inertia Ĵ [kg·m²], SPD
  double c = 0.0;                 // rotational damping [N·m·s]
  Vec3 tau = Vec3::Zero();        // exogenous torque τ [N·m]
  Vec3 tau_hat = Vec3::Zero();    // controller's model of τ [N·m]

  /// Validates both inertias SPD (min eigenvalue > 1e-12·‖·‖) and symmetrizes.
  static InertiaModel make(const Mat3& J, const Mat3& J_hat, double c,
                           const Vec3& tau, const Vec3& tau_hat);

  /// True if the estimate side equals the plant side exactly (Ĵ = J, τ̂ = τ).
  bool perfect_knowledge() const { return J_hat == J && tau_hat == tau; }
};

/// Controller gains. Only (Λ, η, γ1, γ2, γ4, γ5) are free; γ3 = γ4 + γ5,
/// γ = γ1 + γ2 + γ3 and κ = 2ηΛ(γ2 + γ3)λ_J are derived so the sum structure
/// cannot be violated.
struct Gains {
  double Lambda = 1.0;
  double eta = 1.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double gamma4 = 1.0;
  double gamma5 = 1.0;
  // derived
  double gamma3 = 2.0;
  double gamma = 4.0;
  double kappa = 0.0;

  /// Builds the derived fields; throws InvalidGainError unless every entry is
  /// strictly positive (and lambda_J > 0).
  static Gains derive(double Lambda, double eta, double gamma1, double gamma2,
                      double gamma4, double gamma5, double lambda_J);
};

struct ControlOutput {
  Vec3 u = Vec3::Zero();      // ᵇu [N·m]
  Vec3 s = Vec3::Zero();      // sliding surface value
  Vec3 f_hat = Vec3::Zero();  // f̂ [rad/s²]
  Vec3 d = Vec3::Zero();      // feedforward [rad/s²]
};

/// Drift f = J⁻¹((Jᵇω)^×(ᵇω) − cᵇω + τ). Evaluated with (J, c, τ) it is the
/// plant truth; with (Ĵ, c, τ̂) it is the controller's estimate f̂.
Vec3 drift_f(const Mat3& inertia, double c, const Vec3& tau, const Vec3& w_b);

/// Sliding surface s = (Λ + Ψ)ᵇe_q + ηᵇe_ω.
Vec3 sliding_surface(double psi, const Vec3& e_q, const Vec3& e_w,
                     const Gains& gains);

/// The control moment
///   ᵇu = η⁻¹Ĵ(−η(f̂ + d) − (Λ+Ψ)ᵇė_q − Ψ̇ᵇe_q − γs),
/// with Ψ̇ computed analytically as ᵇe_qᵀᵇe_ω and ᵇė_q from the error
/// kinematics at the measured state. Reads only the estimate side of `model`.
ControlOutput control_moment(const BodyState& state, const ReferenceState& ref,
                             const InertiaModel& model, const Gains& gains,
                             const UnitVec3& r_body);

}  // namespace s2track
