#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "ergopose/body_model.hpp"

namespace ergopose {

/// Joint angles [rad], one per chain joint.
struct Posture {
  Eigen::VectorXd q;

  static Posture zeros(std::size_t n) { return {Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))}; }
  std::size_t size() const { return static_cast<std::size_t>(q.size()); }
  double operator[](std::size_t i) const { return q(static_cast<Eigen::Index>(i)); }
  double& operator[](std::size_t i) { return q(static_cast<Eigen::Index>(i)); }
};

struct Pose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Matrix3d orientation = Eigen::Matrix3d::Identity();
};

using Jacobian = Eigen::Matrix<double, 6, Eigen::Dynamic>;

/// Throws InvalidParameter on a length mismatch or non-finite angle.
void check_posture(const KinematicChain& chain, const Posture& posture);

/// World transform of every joint frame (frame i rotates about its own z by q_i).
std::vector<Eigen::Isometry3d> joint_frames(const KinematicChain& chain, const Posture& posture);

/// Grasp-point pose in world coordinates.
Pose forward_kinematics(const KinematicChain& chain, const Posture& posture);

/// Geometric Jacobian at the grasp point. Column i = [z_i x (p - p_i); z_i].
Jacobian jacobian(const KinematicChain& chain, const Posture& posture);

/// Number of singular values above tol * largest singular value.
std::size_t numerical_rank(const Jacobian& j, double tol = 1e-9);

bool within_limits(const KinematicChain& chain, const Posture& posture, double tol = 1e-12);

/// Per-joint signed excess over the nearest violated limit [rad], 0 when inside.
Eigen::VectorXd limit_violations(const KinematicChain& chain, const Posture& posture);

/// World point at horizontal (anterior) distance and vertical drop from the
/// shoulder, in the sagittal plane.
Eigen::Vector3d sagittal_target(const KinematicChain& chain, double distance, double drop);

/// Sagittal-plane reach for the five-joint arm of build_arm_chain. Shoulder
/// flexion and elbow flexion are solved; the remaining joints keep the values
/// from `pinned` (zeros when empty). Returns 0, 1 or 2 postures, elbow
/// flexion descending; solutions outside the joint limits or with a
/// grasp-point residual above 1e-9 m are dropped.
std::vector<Posture> planar_ik(const KinematicChain& chain, double distance, double drop,
                               const Posture& pinned = {});

}  // namespace ergopose
