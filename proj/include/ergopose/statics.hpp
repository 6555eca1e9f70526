#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ergopose/body_model.hpp"
#include "ergopose/kinematics.hpp"
#include "ergopose/units.hpp"

namespace ergopose {

/// Force and moment applied to the hand at the grasp point, world frame.
struct ExternalWrench {
  Eigen::Vector3d force = Eigen::Vector3d::Zero();   // [N]
  Eigen::Vector3d moment = Eigen::Vector3d::Zero();  // [N m]

  Eigen::Matrix<double, 6, 1> stacked() const {
    Eigen::Matrix<double, 6, 1> w;
    w << force, moment;
    return w;
  }
};

/// Joint torques [N m]. Positive = torque the joint actuator must supply, in
/// the direction of +q, to hold the posture against the loads.
using JointTorques = Eigen::VectorXd;

/// Lumped mass rigidly attached to a joint frame.
struct PointMass {
  std::size_t frame = 0;
  Eigen::Vector3d local_com = Eigen::Vector3d::Zero();
  double mass = 0.0;
};

/// Upper arm on the humeral-rotation frame, forearm+hand on the
/// forearm-rotation frame of build_arm_chain.
std::vector<PointMass> arm_mass_distribution(const SegmentSet& segments);

double potential_energy(const KinematicChain& chain, std::span<const PointMass> masses,
                        const Posture& posture, double g = kStandardGravity);

/// Holding torques against segment weights, accumulated from the distal end.
/// Equals dU/dq.
JointTorques gravity_torques(const KinematicChain& chain, std::span<const PointMass> masses,
                             const Posture& posture, double g = kStandardGravity);
JointTorques gravity_torques(const KinematicChain& chain, const SegmentSet& segments,
                             const Posture& posture, double g = kStandardGravity);

/// Holding torques against a wrench applied at the grasp point: -J^T w.
JointTorques load_torques(const KinematicChain& chain, const Posture& posture,
                          const ExternalWrench& wrench);

/// Static inverse dynamics (zero velocity and acceleration).
JointTorques static_joint_torques(const KinematicChain& chain, const SegmentSet& segments,
                                  const Posture& posture, const ExternalWrench& wrench,
                                  double g = kStandardGravity);

}  // namespace ergopose
