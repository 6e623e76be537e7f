#pragma once

#include <vector>

#include "s2track/certification.hpp"
#include "s2track/control_law.hpp"

namespace s2track {

/// One monitor sample along a trajectory.
struct LyapunovSample {
  double t = 0.0;
  double V = 0.0;
  double z_q_norm = 0.0;  // ‖[‖ᵇe_q‖; ‖ᵇe_ω‖]‖
  double s_norm = 0.0;
  double psi = 0.0;
  double sandwich_lo = 0.0;  // z_qᵀ W1 z_q at the instantaneous Ψ
  double sandwich_hi = 0.0;  // z_qᵀ W2 z_q
  double Vdot_fd = 0.0;      // filled by vdot_finite_difference
};

// Tolerance for the sandwich chain: quadratic forms at double precision near
// machine-zero states need both an absolute and a relative allowance.
inline constexpr double sandwich_tol_abs = 1e-9;
inline constexpr double sandwich_tol_rel = 1e-9;

/// Lyapunov candidate V = ½sᵀs + κΨ.
double lyapunov_value(const Vec3& s, double psi, double kappa);

struct SandwichResult {
  double lo = 0.0;
  double V = 0.0;
  double hi = 0.0;
  bool ok = false;
};

/// Evaluates λ_min(W1)‖z_q‖² ≤ z_qᵀW1z_q ≤ V ≤ z_qᵀW2z_q ≤ λ_max(W2)‖z_q‖²
/// at the instantaneous Ψ. A violation is reported, not thrown.
SandwichResult sandwich_check(const ErrorState& err, const Gains& gains,
                              double lambda_J);

/// Comparison-lemma envelope V(0)·e^(−decay_rate·t).
double decay_envelope(double V0, double decay_rate, double t);

/// Central finite differences of V on a uniform time grid (one-sided at the
/// ends), written into each sample's Vdot_fd. Throws TooFewSamplesError for
/// fewer than three samples.
void vdot_finite_difference(std::vector<LyapunovSample>& trace);

}  // namespace s2track
