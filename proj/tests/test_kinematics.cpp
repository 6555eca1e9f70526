#include <cmath>
#include <random>

#include "doctest.h"
#include "ergopose/body_model.hpp"
#include "ergopose/error.hpp"
#include "ergopose/kinematics.hpp"
#include "ergopose/units.hpp"
#include "oracles.hpp"

using namespace ergopose;
using doctest::Approx;

namespace {

const BodyParams kBody{1.75, 70.0};
constexpr double kUpper = 0.186 * 1.75;
constexpr double kLower = 0.146 * 1.75 + 0.10;

Posture planar(double shoulder_deg, double elbow_deg) {
  Posture q = Posture::zeros(5);
  q[arm::kShoulderFlexion] = deg_to_rad(shoulder_deg);
  q[arm::kElbowFlexion] = deg_to_rad(elbow_deg);
  return q;
}

Eigen::VectorXd lower_limits(const KinematicChain& c) {
  Eigen::VectorXd v(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Eigen::Index>(i)) = c.joint(i).lower;
  return v;
}

Eigen::VectorXd upper_limits(const KinematicChain& c) {
  Eigen::VectorXd v(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Eigen::Index>(i)) = c.joint(i).upper;
  return v;
}

}  // namespace

TEST_CASE("forward kinematics matches the planar two-link formula") {
  const KinematicChain c = build_arm_chain(kBody);
  for (auto [s, e] : {std::pair{30.0, 90.0}, {0.0, 0.0}, {90.0, 0.0}, {45.0, 120.0}, {-30.0, 20.0}}) {
    const Eigen::Vector3d expect =
        oracle::planar_grip(kUpper, kLower, deg_to_rad(s), deg_to_rad(e));
    const Eigen::Vector3d got = forward_kinematics(c, planar(s, e)).position;
    CHECK((got - expect).norm() < 1e-12);
  }
}

TEST_CASE("positive abduction moves the hand to the right") {
  const KinematicChain c = build_arm_chain(kBody);
  Posture q = Posture::zeros(5);
  q[arm::kShoulderAbduction] = deg_to_rad(90.0);
  const Eigen::Vector3d p = forward_kinematics(c, q).position;
  CHECK(p.y() == Approx(-(kUpper + kLower)).epsilon(1e-12));
  CHECK(std::abs(p.z()) < 1e-12);
}

TEST_CASE("random postures: orientation orthonormal, reach bounded") {
  const KinematicChain c = build_arm_chain(kBody);
  std::mt19937_64 rng(7);
  for (int n = 0; n < 100; ++n) {
    const Posture q{oracle::random_in(rng, lower_limits(c), upper_limits(c))};
    const Pose p = forward_kinematics(c, q);
    CHECK((p.orientation.transpose() * p.orientation - Eigen::Matrix3d::Identity()).norm() < 1e-9);
    CHECK(p.orientation.determinant() == Approx(1.0).epsilon(1e-9));
    CHECK(p.position.norm() <= kUpper + kLower + 1e-12);
  }
}

TEST_CASE("jacobian position block matches central differences") {
  const KinematicChain c = build_arm_chain(kBody);
  std::mt19937_64 rng(11);
  const double eps = 1e-6;
  for (int n = 0; n < 100; ++n) {
    const Posture q{oracle::random_in(rng, lower_limits(c), upper_limits(c))};
    const Jacobian j = jacobian(c, q);
    for (std::size_t i = 0; i < 5; ++i) {
      Posture a = q, b = q;
      a[i] += eps;
      b[i] -= eps;
      const Eigen::Vector3d fd =
          (forward_kinematics(c, a).position - forward_kinematics(c, b).position) / (2 * eps);
      CHECK((j.block<3, 1>(0, static_cast<Eigen::Index>(i)) - fd).norm() < 1e-6);
    }
  }
}

TEST_CASE("jacobian at the reference pose") {
  // Arm hanging along -z with total length L: flexion joints sweep the hand
  // forward with lever arms L (shoulder) and h_f + offset (elbow), abduction
  // sweeps it right, and the two axial rotations do not move it.
  const KinematicChain c = build_arm_chain(kBody);
  const Jacobian j = jacobian(c, Posture::zeros(5));
  const double total = kUpper + kLower;
  CHECK((j.block<3, 1>(0, 0) - Eigen::Vector3d(total, 0, 0)).norm() < 1e-12);
  CHECK((j.block<3, 1>(0, 1) - Eigen::Vector3d(0, -total, 0)).norm() < 1e-12);
  CHECK(j.block<3, 1>(0, 2).norm() < 1e-12);
  CHECK((j.block<3, 1>(0, 3) - Eigen::Vector3d(kLower, 0, 0)).norm() < 1e-12);
  CHECK(j.block<3, 1>(0, 4).norm() < 1e-12);
  CHECK((j.block<3, 1>(3, 0) - Eigen::Vector3d(0, -1, 0)).norm() < 1e-12);
  CHECK(std::abs(std::abs(j(5, 2)) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(j(5, 4)) - 1.0) < 1e-12);
}

TEST_CASE("jacobian rank drops at singular postures") {
  const KinematicChain c = build_arm_chain(kBody);
  CHECK(numerical_rank(jacobian(c, planar(30, 90))) == 5);
  CHECK(numerical_rank(jacobian(c, planar(30, 0))) < 5);
  CHECK(numerical_rank(jacobian(c, planar(30, 180))) < 5);
}

TEST_CASE("posture validation") {
  const KinematicChain c = build_arm_chain(kBody);
  CHECK_THROWS_AS(forward_kinematics(c, Posture::zeros(4)), InvalidParameter);
  Posture q = Posture::zeros(5);
  q[0] = NAN;
  CHECK_THROWS_AS(forward_kinematics(c, q), InvalidParameter);
}

TEST_CASE("limit checks") {
  const KinematicChain c = build_arm_chain(kBody);
  CHECK(within_limits(c, planar(30, 90)));
  const Posture out = planar(30, -10);
  CHECK_FALSE(within_limits(c, out));
  const Eigen::VectorXd v = limit_violations(c, out);
  CHECK(v(arm::kElbowFlexion) == Approx(deg_to_rad(10.0)));
  CHECK(v(arm::kShoulderFlexion) == 0.0);
}

TEST_CASE("planar reach round trip with both elbow branches") {
  ArmChainConfig cfg;
  cfg.overrides["elbow_flexion"] = {-145.0, 145.0, 0.0, {}};
  const KinematicChain c = build_arm_chain(kBody, cfg);
  const auto sols = planar_ik(c, 0.5, 0.0);
  REQUIRE(sols.size() == 2);
  CHECK(sols[0][arm::kElbowFlexion] == Approx(-sols[1][arm::kElbowFlexion]).epsilon(1e-9));
  CHECK(sols[0][arm::kElbowFlexion] > 0.0);
  for (const auto& q : sols) {
    CHECK((forward_kinematics(c, q).position - Eigen::Vector3d(0.5, 0, 0)).norm() < 1e-9);
  }
}

TEST_CASE("default elbow limits keep only the flexed branch") {
  const KinematicChain c = build_arm_chain(kBody);
  const auto sols = planar_ik(c, 0.5, 0.0);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0][arm::kElbowFlexion] > 0.0);
  CHECK((forward_kinematics(c, sols[0]).position - Eigen::Vector3d(0.5, 0, 0)).norm() < 1e-9);
}

TEST_CASE("planar reach round trip across the workspace") {
  const KinematicChain c = build_arm_chain(kBody);
  for (double d = 0.2; d <= 0.68; d += 0.02) {
    for (double drop : {0.0, 0.1, -0.1}) {
      for (const auto& q : planar_ik(c, d, drop)) {
        CHECK(within_limits(c, q));
        CHECK((forward_kinematics(c, q).position - sagittal_target(c, d, drop)).norm() < 1e-9);
      }
    }
  }
}

TEST_CASE("planar reach at full extension and out of reach") {
  const KinematicChain c = build_arm_chain(kBody);
  const auto edge = planar_ik(c, kUpper + kLower, 0.0);
  REQUIRE(edge.size() == 1);
  CHECK(std::abs(edge[0][arm::kElbowFlexion]) < 1e-6);
  CHECK(edge[0][arm::kShoulderFlexion] == Approx(std::numbers::pi / 2).epsilon(1e-6));
  CHECK(planar_ik(c, 10.0, 0.0).empty());
}

TEST_CASE("planar reach keeps pinned joints") {
  const KinematicChain c = build_arm_chain(kBody);
  Posture pinned = Posture::zeros(5);
  pinned[arm::kForearmRotation] = deg_to_rad(40.0);
  const auto sols = planar_ik(c, 0.5, 0.0, pinned);
  REQUIRE_FALSE(sols.empty());
  CHECK(sols[0][arm::kForearmRotation] == Approx(deg_to_rad(40.0)));
}
