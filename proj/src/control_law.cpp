#include "s2track/control_law.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace s2track {

namespace {

void require_spd(const Mat3& m, const char* name) {
  if ((m - m.transpose()).norm() > 1e-9 * (1.0 + m.norm())) {
    throw SingularInertiaError(std::string(name) + ": inertia not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eigs(m);
  if (eigs.eigenvalues().minCoeff() <= 1e-12 * m.norm()) {
    throw SingularInertiaError(std::string(name) +
                               ": inertia not positive definite at tolerance");
  }
}

}  // namespace

InertiaModel InertiaModel::make(const Mat3& J, const Mat3& J_hat, double c,
                                const Vec3& tau, const Vec3& tau_hat) {
  require_spd(J, "J");
  require_spd(J_hat, "J_hat");
  InertiaModel m;
  m.J = 0.5 * (J + J.transpose());
  m.J_hat = 0.5 * (J_hat + J_hat.transpose());
  m.c = c;
  m.tau = tau;
  m.tau_hat = tau_hat;
  return m;
}

Gains Gains::derive(double Lambda, double eta, double gamma1, double gamma2,
                    double gamma4, double gamma5, double lambda_J) {
  if (!(Lambda > 0.0 && eta > 0.0 && gamma1 > 0.0 && gamma2 > 0.0 &&
        gamma4 > 0.0 && gamma5 > 0.0)) {
    throw InvalidGainError("Gains: Lambda, eta, gamma1, gamma2, gamma4, gamma5 "
                           "must all be strictly positive");
  }
  if (!(lambda_J > 0.0)) {
    throw InvalidGainError("Gains: lambda_J must be strictly positive");
  }
  Gains g;
  g.Lambda = Lambda;
  g.eta = eta;
  g.gamma1 = gamma1;
  g.gamma2 = gamma2;
  g.gamma4 = gamma4;
  g.gamma5 = gamma5;
  g.gamma3 = gamma4 + gamma5;
  g.gamma = gamma1 + gamma2 + g.gamma3;
  g.kappa = 2.0 * eta * Lambda * (gamma2 + g.gamma3) * lambda_J;
  return g;
}

Vec3 drift_f(const Mat3& inertia, double c, const Vec3& tau, const Vec3& w_b) {
  require_spd(inertia, "drift_f");
  const Vec3 rhs = (inertia * w_b).cross(w_b) - c * w_b + tau;
  return inertia.llt().solve(rhs);
}

Vec3 sliding_surface(double psi, const Vec3& e_q, const Vec3& e_w,
                     const Gains& gains) {
  return (gains.Lambda + psi) * e_q + gains.eta * e_w;
}

ControlOutput control_moment(const BodyState& state, const ReferenceState& ref,
                             const InertiaModel& model, const Gains& gains,
                             const UnitVec3& r_body) {
  const ErrorState err = compute_error_state(state, ref, r_body);

  ControlOutput out;
  out.d = feedforward_d(state, ref);
  out.f_hat = drift_f(model.J_hat, model.c, model.tau_hat, state.w_b);
  out.s = sliding_surface(err.psi, err.e_q, err.e_w, gains);

  const Vec3 eq_dot = err.E * err.e_w + err.Xi * ref.wd_b;
  const double psi_dot = err.e_q.dot(err.e_w);

  const Vec3 inner = -gains.eta * (out.f_hat + out.d) -
                     (gains.Lambda + err.psi) * eq_dot - psi_dot * err.e_q -
                     gains.gamma * out.s;
  out.u = model.J_hat * inner / gains.eta;
  return out;
}

}  // namespace s2track
