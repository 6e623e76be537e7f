#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "s2track/certification.hpp"
#include "s2track/control_law.hpp"
#include "s2track/lyapunov.hpp"

namespace s2track {

struct PlantParams {
  InertiaModel model;
  UnitVec3 r_body = UnitVec3::from_unit(Vec3::UnitZ());
};

enum class ProfileKind { constant_spin, sinusoid, ramp_then_hold };

/// Reference angular-velocity profile about a fixed body axis:
///   constant_spin    ᵇω_d(t) = m·a
///   sinusoid         ᵇω_d(t) = m sin(2πνt)·a
///   ramp_then_hold   ᵇω_d(t) = m min(t/T, 1)·a
/// ᵇω_d and ᵇω̇_d are evaluated analytically, never by differencing. Because
/// the axis is fixed, the attitude advance Q_d ← Q_d·exp_rodrigues(a, ΔΘ) with
/// the exact angle increment ΔΘ = ∫‖ᵇω_d‖ is exact for all three kinds.
struct ReferenceProfile {
  ProfileKind kind = ProfileKind::constant_spin;
  Rotation Qd0 = Rotation::identity();
  UnitVec3 axis = UnitVec3::from_unit(Vec3::UnitZ());
  double magnitude = 0.0;  // rad/s
  double frequency = 0.0;  // Hz (sinusoid)
  double ramp_time = 1.0;  // s (ramp_then_hold)

  Vec3 omega_at(double t) const;
  Vec3 omega_dot_at(double t) const;
  /// Signed rotation angle accumulated about `axis` between t0 and t1.
  double angle_increment(double t0, double t1) const;
  /// Peak ‖ᵇω_d‖ and ‖ᵇω̇_d‖ over all t, for envelope validation.
  double sup_omega() const;
  double sup_omega_dot() const;
};

/// Walks the reference attitude forward with the exponential map.
class ReferenceGenerator {
 public:
  explicit ReferenceGenerator(const ReferenceProfile& profile)
      : profile_(profile), Qd_(profile.Qd0) {}

  ReferenceState state_at(double t) const {
    return ReferenceState{Qd_, profile_.omega_at(t), profile_.omega_dot_at(t)};
  }
  void advance(double t0, double t1) {
    Qd_ = Qd_ * exp_rodrigues(profile_.axis, profile_.angle_increment(t0, t1));
  }

 private:
  ReferenceProfile profile_;
  Rotation Qd_;
};

struct PlantDerivative {
  Mat3 Qdot;
  Vec3 wdot;
};

/// Open-loop plant: Q̇ = Q(ᵇω)^×, ᵇω̇ = J⁻¹((Jᵇω)^×ᵇω − cᵇω + τ + ᵇu).
PlantDerivative plant_derivative(const BodyState& state, const Vec3& u,
                                 const PlantParams& params);

/// One classical RK4 step of the plant with the moment u frozen across the
/// step (zero-order hold); the attitude is reorthonormalized afterwards.
BodyState rk4_plant(const BodyState& state, const Vec3& u,
                    const PlantParams& params, double dt);

/// Closed-loop step: control evaluated once at the step start, then rk4_plant.
BodyState rk4_step(const BodyState& state, const ReferenceState& ref,
                   const PlantParams& params, const Gains& gains, double dt);

/// Initial condition as an (axis, angle) perturbation from the reference
/// attitude; w0 unset means the body starts at the reference velocity
/// (zero initial velocity error).
struct InitialPerturbation {
  Vec3 axis = Vec3::UnitX();
  double angle = 0.0;  // rad
  std::optional<Vec3> w0;
};

struct Scenario {
  InertiaModel model;
  UnitVec3 r_body = UnitVec3::from_unit(Vec3::UnitZ());
  GainParams gains;
  Envelope envelope;
  ReferenceProfile profile;
  InitialPerturbation initial;
  double dt = 1e-3;       // s, must be in (0, 0.01]
  double duration = 10.0; // s
  int bound_samples = 20000;
  std::uint64_t seed = 42;
};

struct TrajectoryRecord {
  double t = 0.0;
  Mat3 Q = Mat3::Identity();
  Vec3 w_b = Vec3::Zero();
  Mat3 Qd = Mat3::Identity();
  Vec3 wd_b = Vec3::Zero();
  Vec3 u = Vec3::Zero();
  double psi = 0.0;
  Vec3 e_q = Vec3::Zero();
  Vec3 e_w = Vec3::Zero();
  Vec3 s = Vec3::Zero();
  double V = 0.0;
  double sandwich_lo = 0.0;
  double sandwich_hi = 0.0;
  double Vdot_fd = 0.0;
};

struct RunSummary {
  bool certified = false;
  double radius = 0.0;
  double decay_rate = 0.0;
  std::optional<double> fitted_rate;  // perfect-knowledge runs only
  double max_zq_settled = 0.0;        // max ‖z_q‖ over the last 20%
  long envelope_violations = 0;
  int exit_status = 0;
};

struct RunResult {
  std::vector<TrajectoryRecord> records;
  RunSummary summary;
  CertificationReport report;
};

/// Deterministic closed-loop run. Throws SimulationAbort on an antipodal or
/// non-finite state; ValidationError on a malformed scenario. Certification
/// is recomputed unless a precomputed report is supplied.
RunResult run_scenario(const Scenario& scenario);
RunResult run_scenario(const Scenario& scenario,
                       const CertificationReport& report);

}  // namespace s2track
