#include "s2track/sim.hpp"

#include <cmath>
#include <string>

namespace s2track {

namespace {

double signed_rate(const ReferenceProfile& p, double t) {
  switch (p.kind) {
    case ProfileKind::constant_spin:
      return p.magnitude;
    case ProfileKind::sinusoid:
      return p.magnitude * std::sin(2.0 * M_PI * p.frequency * t);
    case ProfileKind::ramp_then_hold:
      return p.magnitude * (t < p.ramp_time ? t / p.ramp_time : 1.0);
  }
  return 0.0;
}

double signed_rate_dot(const ReferenceProfile& p, double t) {
  switch (p.kind) {
    case ProfileKind::constant_spin:
      return 0.0;
    case ProfileKind::sinusoid:
      return p.magnitude * 2.0 * M_PI * p.frequency *
             std::cos(2.0 * M_PI * p.frequency * t);
    case ProfileKind::ramp_then_hold:
      return t < p.ramp_time ? p.magnitude / p.ramp_time : 0.0;
  }
  return 0.0;
}

/// ∫₀ᵗ signed rate, in closed form per kind.
double rate_integral(const ReferenceProfile& p, double t) {
  switch (p.kind) {
    case ProfileKind::constant_spin:
      return p.magnitude * t;
    case ProfileKind::sinusoid: {
      const double w = 2.0 * M_PI * p.frequency;
      if (w == 0.0) return 0.0;
      return p.magnitude * (1.0 - std::cos(w * t)) / w;
    }
    case ProfileKind::ramp_then_hold:
      if (t < p.ramp_time) {
        return p.magnitude * t * t / (2.0 * p.ramp_time);
      }
      return p.magnitude * (p.ramp_time / 2.0 + (t - p.ramp_time));
  }
  return 0.0;
}

}  // namespace

Vec3 ReferenceProfile::omega_at(double t) const {
  return signed_rate(*this, t) * axis.vec();
}

Vec3 ReferenceProfile::omega_dot_at(double t) const {
  return signed_rate_dot(*this, t) * axis.vec();
}

double ReferenceProfile::angle_increment(double t0, double t1) const {
  return rate_integral(*this, t1) - rate_integral(*this, t0);
}

double ReferenceProfile::sup_omega() const { return std::abs(magnitude); }

double ReferenceProfile::sup_omega_dot() const {
  switch (kind) {
    case ProfileKind::constant_spin:
      return 0.0;
    case ProfileKind::sinusoid:
      return std::abs(magnitude) * 2.0 * M_PI * frequency;
    case ProfileKind::ramp_then_hold:
      return std::abs(magnitude) / ramp_time;
  }
  return 0.0;
}

PlantDerivative plant_derivative(const BodyState& state, const Vec3& u,
                                 const PlantParams& params) {
  const InertiaModel& m = params.model;
  const Vec3 rhs = (m.J * state.w_b).cross(state.w_b) - m.c * state.w_b +
                   m.tau + u;
  return PlantDerivative{state.Q.matrix() * hat(state.w_b),
                         m.J.llt().solve(rhs)};
}

BodyState rk4_plant(const BodyState& state, const Vec3& u,
                    const PlantParams& params, double dt) {
  const InertiaModel& m = params.model;
  const auto j_llt = m.J.llt();
  const auto wdot = [&](const Vec3& w) -> Vec3 {
    return j_llt.solve((m.J * w).cross(w) - m.c * w + m.tau + u);
  };

  const Mat3& Q0 = state.Q.matrix();
  const Vec3& w0 = state.w_b;

  const Mat3 kq1 = Q0 * hat(w0);
  const Vec3 kw1 = wdot(w0);
  const Mat3 q2 = Q0 + 0.5 * dt * kq1;
  const Vec3 v2 = w0 + 0.5 * dt * kw1;
  const Mat3 kq2 = q2 * hat(v2);
  const Vec3 kw2 = wdot(v2);
  const Mat3 q3 = Q0 + 0.5 * dt * kq2;
  const Vec3 v3 = w0 + 0.5 * dt * kw2;
  const Mat3 kq3 = q3 * hat(v3);
  const Vec3 kw3 = wdot(v3);
  const Mat3 q4 = Q0 + dt * kq3;
  const Vec3 v4 = w0 + dt * kw3;
  const Mat3 kq4 = q4 * hat(v4);
  const Vec3 kw4 = wdot(v4);

  const Mat3 Qn = Q0 + (dt / 6.0) * (kq1 + 2.0 * kq2 + 2.0 * kq3 + kq4);
  const Vec3 wn = w0 + (dt / 6.0) * (kw1 + 2.0 * kw2 + 2.0 * kw3 + kw4);
  return BodyState{reorthonormalize(Qn), wn};
}

BodyState rk4_step(const BodyState& state, const ReferenceState& ref,
                   const PlantParams& params, const Gains& gains, double dt) {
  if (!(dt > 0.0 && dt <= 0.01)) {
    throw ValidationError("rk4_step: dt must lie in (0, 0.01] s");
  }
  const ControlOutput ctrl =
      control_moment(state, ref, params.model, gains, params.r_body);
  return rk4_plant(state, ctrl.u, params, dt);
}

namespace {

bool finite(const Vec3& v) { return v.allFinite(); }
bool finite(const Mat3& m) { return m.allFinite(); }

std::optional<double> fit_rate(const std::vector<TrajectoryRecord>& recs) {
  // Least-squares slope of ln V against t, over samples still above the
  // numerical floor relative to V(0).
  const double v0 = recs.front().V;
  if (!(v0 > 0.0)) return std::nullopt;
  const double floor = v0 * 1e-12;
  double st = 0.0, sv = 0.0, stt = 0.0, stv = 0.0;
  long n = 0;
  for (const auto& r : recs) {
    if (r.V <= floor) break;
    const double lv = std::log(r.V);
    st += r.t;
    sv += lv;
    stt += r.t * r.t;
    stv += r.t * lv;
    ++n;
  }
  if (n < 2) return std::nullopt;
  const double denom = n * stt - st * st;
  if (denom == 0.0) return std::nullopt;
  return -(n * stv - st * sv) / denom;
}

}  // namespace

RunResult run_scenario(const Scenario& sc) {
  const CertificationReport report =
      certify(sc.model, sc.gains, sc.envelope, sc.bound_samples, sc.seed);
  return run_scenario(sc, report);
}

RunResult run_scenario(const Scenario& sc, const CertificationReport& report) {
  if (!(sc.dt > 0.0 && sc.dt <= 0.01)) {
    throw ValidationError("scenario.integration.dt must lie in (0, 0.01] s");
  }
  const long steps = std::lround(sc.duration / sc.dt);
  if (steps < 2) {
    throw ValidationError("scenario.integration.duration must cover at least "
                          "two steps");
  }

  const double lambda_J = report.lambda_J;
  const Gains gains = derive_gains(sc.gains, lambda_J);
  const PlantParams plant{sc.model, sc.r_body};

  ReferenceGenerator ref_gen(sc.profile);

  BodyState state;
  if (sc.initial.angle != 0.0) {
    const UnitVec3 axis = UnitVec3::normalized(sc.initial.axis);
    state.Q = sc.profile.Qd0 * exp_rodrigues(axis, sc.initial.angle);
  } else {
    state.Q = sc.profile.Qd0;
  }
  if (sc.initial.w0.has_value()) {
    state.w_b = *sc.initial.w0;
  } else {
    state.w_b = state.Q.matrix().transpose() *
                (sc.profile.Qd0.matrix() * sc.profile.omega_at(0.0));
  }

  RunResult result;
  result.report = report;
  result.records.reserve(static_cast<std::size_t>(steps) + 1);

  const double viol_slack = 1e-12;
  long violations = 0;

  for (long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * sc.dt;
    const ReferenceState ref = ref_gen.state_at(t);

    if (!finite(state.Q.matrix()) || !finite(state.w_b)) {
      throw SimulationAbort("state left the finite range at t = " +
                                std::to_string(t) + " s",
                            t);
    }

    ErrorState err;
    ControlOutput ctrl;
    try {
      err = compute_error_state(state, ref, sc.r_body);
      ctrl = control_moment(state, ref, sc.model, gains, sc.r_body);
    } catch (const AntipodalError&) {
      throw SimulationAbort("pointing error reached the antipodal "
                            "singularity at t = " + std::to_string(t) + " s",
                            t);
    }
    if (!finite(ctrl.u)) {
      throw SimulationAbort("control moment left the finite range at t = " +
                                std::to_string(t) + " s",
                            t);
    }

    const SandwichResult sw = sandwich_check(err, gains, lambda_J);

    TrajectoryRecord rec;
    rec.t = t;
    rec.Q = state.Q.matrix();
    rec.w_b = state.w_b;
    rec.Qd = ref.Qd.matrix();
    rec.wd_b = ref.wd_b;
    rec.u = ctrl.u;
    rec.psi = err.psi;
    rec.e_q = err.e_q;
    rec.e_w = err.e_w;
    rec.s = ctrl.s;
    rec.V = sw.V;
    rec.sandwich_lo = sw.lo;
    rec.sandwich_hi = sw.hi;
    result.records.push_back(rec);

    if (err.psi > sc.envelope.psi_max + viol_slack ||
        state.w_b.norm() > sc.envelope.w_max + viol_slack ||
        ref.wd_b.norm() > sc.envelope.wd_max + viol_slack ||
        ref.wd_dot_b.norm() > sc.envelope.wd_dot_max + viol_slack) {
      ++violations;
    }

    if (k < steps) {
      try {
        state = rk4_plant(state, ctrl.u, plant, sc.dt);
      } catch (const DegenerateError&) {
        throw SimulationAbort(
            "attitude update degenerated (state left the finite range) at "
            "t = " + std::to_string(t) + " s",
            t);
      }
      ref_gen.advance(t, static_cast<double>(k + 1) * sc.dt);
    }
  }

  // Monitor columns.
  std::vector<LyapunovSample> trace(result.records.size());
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    trace[i].t = result.records[i].t;
    trace[i].V = result.records[i].V;
  }
  vdot_finite_difference(trace);
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    result.records[i].Vdot_fd = trace[i].Vdot_fd;
  }

  RunSummary& sum = result.summary;
  sum.certified = report.certified;
  sum.radius = report.thresholds_valid ? report.thresholds.radius : 0.0;
  sum.decay_rate =
      report.thresholds_valid ? report.thresholds.decay_rate : 0.0;
  sum.envelope_violations = violations;
  sum.exit_status = 0;

  // Ultimate-bound summary over the settling window (last 20% of the run;
  // the proof gives no transient estimate for the mismatched case).
  const std::size_t n = result.records.size();
  const std::size_t settle_begin = n - std::max<std::size_t>(1, n / 5);
  double max_zq = 0.0;
  for (std::size_t i = settle_begin; i < n; ++i) {
    const auto& r = result.records[i];
    max_zq = std::max(max_zq, std::hypot(r.e_q.norm(), r.e_w.norm()));
  }
  sum.max_zq_settled = max_zq;

  if (sc.model.perfect_knowledge()) {
    sum.fitted_rate = fit_rate(result.records);
  }
  return result;
}

}  // namespace s2track
