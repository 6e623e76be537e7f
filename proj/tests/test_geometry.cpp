#include "s2track/geometry.hpp"

#include "doctest.h"
#include "support/oracles.hpp"

using namespace s2track;

TEST_CASE("hat matches the stated pattern") {
  const Mat3 m = hat(Vec3(1, 2, 3));
  Mat3 expected;
  expected << 0, -3, 2, 3, 0, -1, -2, 1, 0;
  CHECK((m - expected).norm() == 0.0);
  CHECK(hat(Vec3::Zero()).norm() == 0.0);
}

TEST_CASE("hat(r) w equals the cross product for random inputs") {
  auto g = oracles::rng(101);
  for (int i = 0; i < 200; ++i) {
    const Vec3 r = oracles::random_vec(g, 5.0);
    const Vec3 w = oracles::random_vec(g, 5.0);
    CHECK((hat(r) * w - r.cross(w)).norm() == 0.0);
    // antisymmetry of the pairing
    CHECK((hat(r) * w + hat(w) * r).norm() == 0.0);
  }
}

TEST_CASE("vee inverts hat exactly") {
  auto g = oracles::rng(102);
  for (int i = 0; i < 100; ++i) {
    const Vec3 r = oracles::random_vec(g, 10.0);
    CHECK(vee(hat(r)) == r);
  }
  CHECK(vee(Mat3::Zero()) == Vec3::Zero());
}

TEST_CASE("hat of vee recovers a skew matrix") {
  auto g = oracles::rng(103);
  for (int i = 0; i < 50; ++i) {
    const Mat3 s = hat(oracles::random_vec(g, 3.0));
    CHECK((hat(vee(s)) - s).norm() == 0.0);
  }
}

TEST_CASE("vee rejects symmetric contamination above tolerance") {
  Mat3 bad = hat(Vec3(1, 2, 3));
  Mat3 sym;
  sym << 1, 2, 0, 2, 0, 1, 0, 1, 1;
  bad += 1e-6 * sym;
  CHECK_THROWS_AS(vee(bad), NotSkewError);
}

TEST_CASE("hat squared identity used by the exponential map") {
  auto g = oracles::rng(104);
  for (int i = 0; i < 100; ++i) {
    const Vec3 r = oracles::random_vec(g, 2.0);
    const Mat3 lhs = hat(r) * hat(r);
    const Mat3 rhs = r * r.transpose() - r.squaredNorm() * Mat3::Identity();
    CHECK((lhs - rhs).norm() < 1e-13 * (1.0 + r.squaredNorm()));
  }
}

TEST_CASE("exp_rodrigues basics") {
  const UnitVec3 e3 = UnitVec3::from_unit(Vec3::UnitZ());
  CHECK((exp_rodrigues(e3, 0.0).matrix() - Mat3::Identity()).norm() == 0.0);

  // quarter turn about e3 sends e1 to e2
  const Vec3 turned = exp_rodrigues(e3, M_PI / 2.0) * Vec3::UnitX();
  CHECK((turned - Vec3::UnitY()).norm() < 1e-12);
}

TEST_CASE("exp_rodrigues agrees with the truncated matrix exponential") {
  auto g = oracles::rng(105);
  for (int i = 0; i < 100; ++i) {
    const Vec3 axis = oracles::random_unit(g);
    const double angle = oracles::uniform(g, -M_PI, M_PI);
    const Mat3 r = exp_rodrigues(UnitVec3::from_unit(axis), angle).matrix();
    CHECK((r - oracles::expm_series(axis, angle)).norm() < 1e-12);
  }
}

TEST_CASE("exp_rodrigues output satisfies the rotation invariants") {
  auto g = oracles::rng(106);
  for (int i = 0; i < 200; ++i) {
    const Mat3 r = oracles::random_rotation(g).matrix();
    CHECK((r.transpose() * r - Mat3::Identity()).norm() < 1e-12);
    CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("same-axis rotations compose by angle addition") {
  auto g = oracles::rng(107);
  for (int i = 0; i < 100; ++i) {
    const UnitVec3 axis = UnitVec3::normalized(oracles::random_unit(g));
    const double a = oracles::uniform(g, -2.0, 2.0);
    const double b = oracles::uniform(g, -2.0, 2.0);
    const Mat3 lhs = (exp_rodrigues(axis, a) * exp_rodrigues(axis, b)).matrix();
    const Mat3 rhs = exp_rodrigues(axis, a + b).matrix();
    CHECK((lhs - rhs).norm() < 1e-11);
  }
}

TEST_CASE("reorthonormalize is a bitwise fixed point on exact rotations") {
  auto g = oracles::rng(108);
  for (int i = 0; i < 20; ++i) {
    const Mat3 r = oracles::random_rotation(g).matrix();
    const Mat3 fixed = reorthonormalize(r).matrix();
    CHECK(fixed == r);
  }
}

TEST_CASE("reorthonormalize repairs a perturbed rotation") {
  auto g = oracles::rng(109);
  Mat3 sym;
  sym << 0.4, -0.2, 0.1, -0.2, 0.7, 0.3, 0.1, 0.3, -0.5;
  for (int i = 0; i < 20; ++i) {
    const Mat3 r = oracles::random_rotation(g).matrix();
    const Mat3 noisy = r * (Mat3::Identity() + 1e-6 * sym);
    const Mat3 repaired = reorthonormalize(noisy).matrix();
    CHECK((repaired - r).norm() < 2e-6);
    CHECK((repaired.transpose() * repaired - Mat3::Identity()).norm() < 1e-12);
  }
}

TEST_CASE("reorthonormalize rejects degenerate matrices") {
  Mat3 singular;
  singular << 1, 0, 0, 0, 1, 0, 1, 1, 0;
  CHECK_THROWS_AS(reorthonormalize(singular), DegenerateError);
  CHECK_THROWS_AS(reorthonormalize(-Mat3::Identity()), DegenerateError);
}

TEST_CASE("UnitVec3 validation") {
  CHECK_THROWS_AS(UnitVec3::from_unit(Vec3(1, 1, 0)), DegenerateError);
  CHECK_THROWS_AS(UnitVec3::normalized(Vec3::Zero()), DegenerateError);
  CHECK(UnitVec3::normalized(Vec3(0, 0, 2)).vec() == Vec3::UnitZ());
}

TEST_CASE("Rotation validation") {
  CHECK_THROWS_AS(Rotation::from_matrix(Mat3::Identity() * 1.1),
                  DegenerateError);
  Mat3 reflect = Mat3::Identity();
  reflect(2, 2) = -1.0;
  CHECK_THROWS_AS(Rotation::from_matrix(reflect), DegenerateError);

  auto g = oracles::rng(110);
  const Mat3 r = oracles::random_rotation(g).matrix();
  CHECK(Rotation::from_matrix(r).matrix() == r);
}
