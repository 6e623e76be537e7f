#include "s2track/lyapunov.hpp"

#include <cmath>

namespace s2track {

double lyapunov_value(const Vec3& s, double psi, double kappa) {
  return 0.5 * s.squaredNorm() + kappa * psi;
}

SandwichResult sandwich_check(const ErrorState& err, const Gains& gains,
                              double lambda_J) {
  const Vec2 z(err.e_q.norm(), err.e_w.norm());
  const WMatrices w = w_matrices(gains, lambda_J, err.psi);
  const Vec3 s = sliding_surface(err.psi, err.e_q, err.e_w, gains);

  SandwichResult r;
  r.lo = z.dot(w.W1 * z);
  r.V = lyapunov_value(s, err.psi, gains.kappa);
  r.hi = z.dot(w.W2 * z);

  const double tol = sandwich_tol_abs + sandwich_tol_rel * std::abs(r.V);
  const double z2 = z.squaredNorm();
  const Vec2 e1 = eig2_sym(w.W1);
  const Vec2 e2 = eig2_sym(w.W2);
  r.ok = e1(0) * z2 <= r.lo + tol && r.lo <= r.V + tol && r.V <= r.hi + tol &&
         r.hi <= e2(1) * z2 + tol;
  return r;
}

double decay_envelope(double V0, double decay_rate, double t) {
  return V0 * std::exp(-decay_rate * t);
}

void vdot_finite_difference(std::vector<LyapunovSample>& trace) {
  const std::size_t n = trace.size();
  if (n < 3) {
    throw TooFewSamplesError(
        "vdot_finite_difference: need at least three samples");
  }
  const double dt = trace[1].t - trace[0].t;
  trace[0].Vdot_fd = (trace[1].V - trace[0].V) / dt;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    trace[i].Vdot_fd = (trace[i + 1].V - trace[i - 1].V) / (2.0 * dt);
  }
  trace[n - 1].Vdot_fd = (trace[n - 1].V - trace[n - 2].V) / dt;
}

}  // namespace s2track
