#include "s2track/control_law.hpp"

#include <cmath>

#include "doctest.h"
#include "support/oracles.hpp"

using namespace s2track;

namespace {

const UnitVec3 kE3 = UnitVec3::from_unit(Vec3::UnitZ());

Gains test_gains(double lambda_J = 1.0) {
  return Gains::derive(1.0, 1.0, 1.0, 1.0, 1.0, 0.5, lambda_J);
}

}  // namespace

TEST_CASE("gain derivation enforces the sum structure") {
  const Gains g = Gains::derive(1.0, 2.0, 0.5, 0.6, 0.7, 0.8, 1.1);
  CHECK(g.gamma3 == 0.7 + 0.8);
  CHECK(g.gamma == 0.5 + 0.6 + g.gamma3);
  CHECK(g.kappa ==
        doctest::Approx(2.0 * 2.0 * 1.0 * (0.6 + g.gamma3) * 1.1).epsilon(1e-15));
  CHECK_THROWS_AS(Gains::derive(1, 1, -1, 1, 1, 1, 1), InvalidGainError);
  CHECK_THROWS_AS(Gains::derive(0, 1, 1, 1, 1, 1, 1), InvalidGainError);
  CHECK_THROWS_AS(Gains::derive(1, 1, 1, 1, 1, 1, 0), InvalidGainError);
}

TEST_CASE("drift_f worked values") {
  const Mat3 J = Vec3(1, 2, 3).asDiagonal();
  CHECK(drift_f(J, 0.0, Vec3::Zero(), Vec3::Zero()).norm() == 0.0);

  const Vec3 tau0(0.3, -0.6, 0.9);
  const Vec3 only_tau = drift_f(J, 0.0, tau0, Vec3::Zero());
  CHECK((only_tau - Vec3(0.3, -0.3, 0.3)).norm() < 1e-15);

  // (Jw) x w for w = (1,1,1): (1,2,3) x (1,1,1) = (-1, 2, -1)
  const Vec3 f = drift_f(J, 0.0, Vec3::Zero(), Vec3::Ones());
  CHECK((f - Vec3(-1.0, 1.0, -1.0 / 3.0)).norm() < 1e-14);
}

TEST_CASE("drift_f brute-force oracle on random inputs") {
  auto g = oracles::rng(301);
  for (int i = 0; i < 100; ++i) {
    Mat3 a = Mat3::Random();
    const Mat3 J = a * a.transpose() + 0.5 * Mat3::Identity();
    const double c = oracles::uniform(g, 0.0, 0.2);
    const Vec3 tau = oracles::random_vec(g, 0.1);
    const Vec3 w = oracles::random_vec(g, 2.0);
    const Vec3 expected = J.inverse() * ((J * w).cross(w) - c * w + tau);
    CHECK((drift_f(J, c, tau, w) - expected).norm() <
          1e-12 * (1.0 + expected.norm()));
  }
}

TEST_CASE("drift_f rejects non-SPD inertia") {
  Mat3 indefinite = Vec3(1, -1, 1).asDiagonal();
  CHECK_THROWS_AS(drift_f(indefinite, 0.0, Vec3::Zero(), Vec3::Ones()),
                  SingularInertiaError);
  CHECK_THROWS_AS(InertiaModel::make(indefinite, Mat3::Identity(), 0.0,
                                     Vec3::Zero(), Vec3::Zero()),
                  SingularInertiaError);
}

TEST_CASE("sliding surface worked values") {
  const Gains g = test_gains();
  CHECK(sliding_surface(0.3, Vec3::Zero(), Vec3::Zero(), g) == Vec3::Zero());

  // psi = 0: Lambda e_q + eta e_w
  CHECK((sliding_surface(0.0, Vec3(1, 0, 0), Vec3(0, 2, 0), g) -
         Vec3(1, 2, 0))
            .norm() < 1e-15);

  const Gains g2 = Gains::derive(1.0, 2.0, 1.0, 1.0, 1.0, 0.5, 1.0);
  const Vec3 s =
      sliding_surface(0.5, Vec3(0.1, 0, 0), Vec3(0, 0.3, 0), g2);
  CHECK((s - Vec3(0.15, 0.6, 0)).norm() < 1e-15);
}

TEST_CASE("control moment vanishes at the matched equilibrium") {
  const InertiaModel model = InertiaModel::make(
      Vec3(0.02, 0.02, 0.04).asDiagonal(), Vec3(0.02, 0.02, 0.04).asDiagonal(),
      0.0, Vec3::Zero(), Vec3::Zero());
  const ControlOutput out = control_moment(BodyState{}, ReferenceState{}, model,
                                           test_gains(), kE3);
  CHECK(out.u.norm() == 0.0);
  CHECK(out.s.norm() == 0.0);
}

TEST_CASE("controller cancels a modeled exogenous torque at equilibrium") {
  const Vec3 tau0(0.05, -0.02, 0.01);
  const Mat3 J = Vec3(0.02, 0.02, 0.04).asDiagonal();
  const InertiaModel model = InertiaModel::make(J, J, 0.0, tau0, tau0);
  const ControlOutput out = control_moment(BodyState{}, ReferenceState{}, model,
                                           test_gains(), kE3);
  CHECK((out.u + tau0).norm() < 1e-15);
}

TEST_CASE("homogeneity in the inertia pair") {
  auto g = oracles::rng(302);
  const double alpha = 3.7;
  for (int i = 0; i < 50; ++i) {
    Mat3 a = Mat3::Random();
    const Mat3 J = a * a.transpose() + 0.5 * Mat3::Identity();
    Mat3 b = Mat3::Random();
    const Mat3 Jh = J + 0.05 * (b * b.transpose());
    const double c = 0.02;
    const Vec3 tau = oracles::random_vec(g, 0.05);
    const Vec3 tau_hat = oracles::random_vec(g, 0.05);

    BodyState st;
    ReferenceState ref;
    oracles::random_nonantipodal_pair(g, Vec3::UnitZ(), st.Q, ref.Qd);
    st.w_b = oracles::random_vec(g);
    ref.wd_b = oracles::random_vec(g);
    ref.wd_dot_b = oracles::random_vec(g);

    const InertiaModel m1 = InertiaModel::make(J, Jh, c, tau, tau_hat);
    const InertiaModel m2 = InertiaModel::make(alpha * J, alpha * Jh, alpha * c,
                                               alpha * tau, alpha * tau_hat);
    const Gains gains = test_gains();
    const Vec3 u1 = control_moment(st, ref, m1, gains, kE3).u;
    const Vec3 u2 = control_moment(st, ref, m2, gains, kE3).u;
    CHECK((u2 - alpha * u1).norm() < 1e-12 * (1.0 + u2.norm()));
  }
}

TEST_CASE("the control moment is continuous on the non-antipodal domain") {
  auto g = oracles::rng(304);
  const Mat3 J = Vec3(0.02, 0.02, 0.04).asDiagonal();
  const InertiaModel model =
      InertiaModel::make(J, 1.05 * J, 0.01, Vec3::Zero(), Vec3::Zero());
  const Gains gains = test_gains(1.05);
  for (int i = 0; i < 40; ++i) {
    BodyState st;
    ReferenceState ref;
    oracles::random_nonantipodal_pair(g, Vec3::UnitZ(), st.Q, ref.Qd, 2.5);
    st.w_b = oracles::random_vec(g, 0.5);
    ref.wd_b = oracles::random_vec(g, 0.3);
    ref.wd_dot_b = oracles::random_vec(g, 0.2);

    const Vec3 u0 = control_moment(st, ref, model, gains, kE3).u;
    const double eps = 1e-7;
    BodyState st2{st.Q * exp_rodrigues(UnitVec3::normalized(
                                           oracles::random_unit(g)),
                                       eps),
                  st.w_b + eps * oracles::random_unit(g)};
    const Vec3 u1 = control_moment(st2, ref, model, gains, kE3).u;
    // a perturbation of size eps moves u by O(eps), never by a jump
    CHECK((u1 - u0).norm() < 1e-3 * (1.0 + u0.norm()));
  }
}

TEST_CASE("perfect knowledge gives s_dot = -gamma s along the closed loop") {
  auto g = oracles::rng(303);
  const Mat3 J = Vec3(0.02, 0.02, 0.04).asDiagonal();
  const double c = 0.01;
  const Vec3 tau(0.001, -0.002, 0.0005);
  const InertiaModel model = InertiaModel::make(J, J, c, tau, tau);
  const Gains gains = test_gains();
  const double delta = 1e-7;

  for (int i = 0; i < 60; ++i) {
    BodyState st;
    ReferenceState ref;
    oracles::random_nonantipodal_pair(g, Vec3::UnitZ(), st.Q, ref.Qd, 2.5);
    st.w_b = oracles::random_vec(g, 0.5);
    ref.wd_b = oracles::random_vec(g, 0.3);
    ref.wd_dot_b = oracles::random_vec(g, 0.2);

    const ControlOutput ctrl = control_moment(st, ref, model, gains, kE3);
    const Vec3 wdot =
        drift_f(J, c, tau, st.w_b) + Mat3(J).llt().solve(ctrl.u);

    const auto s_at = [&](double sg) {
      Rotation Qs = st.Q, Qds = ref.Qd;
      oracles::flow_frozen(st.Q, st.w_b, ref.Qd, ref.wd_b, sg, Qs, Qds);
      BodyState st2{Qs, st.w_b + sg * wdot};
      ReferenceState ref2{Qds, ref.wd_b + sg * ref.wd_dot_b, ref.wd_dot_b};
      const ErrorState err = compute_error_state(st2, ref2, kE3);
      return sliding_surface(err.psi, err.e_q, err.e_w, gains);
    };
    const Vec3 s_dot = (s_at(delta) - s_at(-delta)) / (2.0 * delta);
    const double lhs = ctrl.s.dot(s_dot);
    const double rhs = -gains.gamma * ctrl.s.squaredNorm();
    CHECK(std::abs(lhs - rhs) < 1e-5 * (1.0 + ctrl.s.squaredNorm()));
  }
}
