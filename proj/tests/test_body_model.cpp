#include <cmath>

#include "doctest.h"
#include "ergopose/body_model.hpp"
#include "ergopose/error.hpp"
#include "ergopose/kinematics.hpp"
#include "ergopose/units.hpp"

using namespace ergopose;
using doctest::Approx;

TEST_CASE("segment dimensions for a 1.75 m, 70 kg body") {
  const SegmentSet s = derive_segments({1.75, 70.0});
  CHECK(s.forearm.length == Approx(0.2555).epsilon(1e-12));
  CHECK(s.upper_arm.length == Approx(0.3255).epsilon(1e-12));
  CHECK(s.forearm.mass == Approx(1.6101).epsilon(1e-4));
  // 0.549 * 0.051 * 70
  CHECK(s.upper_arm.mass == Approx(1.959930).epsilon(1e-12));
  CHECK(s.forearm.mass + s.upper_arm.mass == Approx(3.570).epsilon(1e-12));
  CHECK(s.forearm.radius == Approx(0.125 * 0.2555).epsilon(1e-12));
  CHECK(s.forearm.inertia(2, 2) == Approx(8.21e-4).epsilon(1e-3));
  CHECK(s.forearm.com_offset == Approx(0.2555 / 2).epsilon(1e-12));
}

TEST_CASE("cylinder inertia entries") {
  const double m = 1.6101, r = 0.0319375, h = 0.2555;
  const Eigen::Matrix3d i = cylinder_inertia(m, r, h);
  const double transverse = m * r * r / 4 + m * h * h / 12;
  CHECK(i(0, 0) == Approx(transverse).epsilon(1e-12));
  CHECK(i(1, 1) == Approx(transverse).epsilon(1e-12));
  CHECK(i(2, 2) == Approx(m * r * r / 2).epsilon(1e-12));
  CHECK(i(0, 1) == 0.0);
  CHECK((i.diagonal().array() > 0).all());
}

TEST_CASE("segments scale linearly with stature and mass") {
  const SegmentSet a = derive_segments({1.6, 55.0});
  const SegmentSet b = derive_segments({3.2, 110.0});
  for (auto [x, y] : {std::pair{&a.forearm, &b.forearm}, std::pair{&a.upper_arm, &b.upper_arm}}) {
    CHECK(y->length == Approx(2 * x->length).epsilon(1e-12));
    CHECK(y->radius == Approx(2 * x->radius).epsilon(1e-12));
    CHECK(y->mass == Approx(2 * x->mass).epsilon(1e-12));
  }
}

TEST_CASE("non-positive body parameters are rejected") {
  CHECK_THROWS_AS(derive_segments({0.0, 70.0}), InvalidParameter);
  CHECK_THROWS_AS(derive_segments({1.75, -1.0}), InvalidParameter);
  CHECK_THROWS_AS(derive_segments({NAN, 70.0}), InvalidParameter);
}

TEST_CASE("default arm chain") {
  const KinematicChain c = build_arm_chain({});
  REQUIRE(c.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(c.joint(i).name == arm::kJointNames[i]);
    CHECK(c.joint(i).lower == Approx(deg_to_rad(arm::kDefaultLimitsDeg[i][0])));
    CHECK(c.joint(i).upper == Approx(deg_to_rad(arm::kDefaultLimitsDeg[i][1])));
    CHECK(c.joint(i).neutral == Approx(0.5 * (c.joint(i).lower + c.joint(i).upper)));
    CHECK(c.joint(i).gamma == 1.0);
  }
  // Segment lengths live in the link offsets.
  CHECK(c.joint(2).dh.link_offset == Approx(0.3255));
  CHECK(c.joint(4).dh.link_offset == Approx(0.2555));
  CHECK(c.end_effector_offset().translation().z() == Approx(0.10));
  CHECK(c.index_of("elbow_flexion") == std::optional<std::size_t>(3));
  CHECK_FALSE(c.index_of("wrist").has_value());
}

TEST_CASE("reference pose hangs straight down") {
  const KinematicChain c = build_arm_chain({});
  const Pose p = forward_kinematics(c, Posture::zeros(5));
  CHECK(std::abs(p.position.x()) < 1e-12);
  CHECK(std::abs(p.position.y()) < 1e-12);
  CHECK(p.position.z() == Approx(-(0.3255 + 0.2555 + 0.10)).epsilon(1e-12));
}

TEST_CASE("joint overrides") {
  ArmChainConfig cfg;
  cfg.overrides["elbow_flexion"] = {0.0, 120.0, 10.0, 2.5};
  const KinematicChain c = build_arm_chain({}, cfg);
  CHECK(c.joint(3).upper == Approx(deg_to_rad(120.0)));
  CHECK(c.joint(3).neutral == Approx(deg_to_rad(10.0)));
  CHECK(c.joint(3).gamma == 2.5);

  ArmChainConfig bad;
  bad.overrides["wrist"] = {};
  CHECK_THROWS_AS(build_arm_chain({}, bad), InvalidParameter);
  ArmChainConfig inverted;
  inverted.overrides["elbow_flexion"] = {100.0, 50.0, {}, {}};
  CHECK_THROWS_AS(build_arm_chain({}, inverted), InvalidParameter);
  ArmChainConfig neg_gamma;
  neg_gamma.overrides["elbow_flexion"].gamma = -1.0;
  CHECK_THROWS_AS(build_arm_chain({}, neg_gamma), InvalidParameter);
}

TEST_CASE("chain construction is deterministic") {
  const KinematicChain a = build_arm_chain({1.8, 80.0});
  const KinematicChain b = build_arm_chain({1.8, 80.0});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.joint(i).dh.link_offset == b.joint(i).dh.link_offset);
    CHECK(a.joint(i).dh.twist == b.joint(i).dh.twist);
    CHECK(a.joint(i).lower == b.joint(i).lower);
  }
  CHECK(a.base_frame().matrix() == b.base_frame().matrix());
}
