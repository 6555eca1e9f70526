#pragma once

#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "ergopose/body_model.hpp"
#include "ergopose/kinematics.hpp"
#include "ergopose/statics.hpp"

namespace ergopose {

struct FatigueMeasureParams {
  double exponent = 2.0;  // p > 0
};

/// Sum over joints of (|torque_i| / capacity_i)^p.
/// Throws InvalidState when a capacity is not positive.
double fatigue_measure(const JointTorques& torques, const Eigen::VectorXd& capacity,
                       const FatigueMeasureParams& params = {});

struct DiscomfortJoint {
  double lower = 0.0;    // [rad]
  double upper = 0.0;    // [rad]
  double neutral = 0.0;  // [rad]
  double gamma = 1.0;
};

struct DiscomfortParams {
  double penalty_constant = 1e6;  // G
  std::vector<DiscomfortJoint> joints;
};

DiscomfortParams discomfort_params(const KinematicChain& chain, double penalty_constant = 1e6);

/// The limit penalties use the normalized distance to the limit, clamped to
/// [0, kPenaltyRatioCap]. Past the cap the sinusoid would turn back up, so
/// the penalty is held at its minimum there.
inline constexpr double kPenaltyRatioCap = std::numbers::pi / 5.0;

struct LimitPenalties {
  double upper = 0.0;  // QU
  double lower = 0.0;  // QL
};

/// Throws InvalidParameter unless lower < upper.
LimitPenalties limit_penalties(double q, double upper, double lower);

/// (1/G) * sum_i [gamma_i * dq_i^2 + G * QU_i + G * QL_i], with dq_i the
/// displacement from neutral divided by the joint range.
double discomfort_measure(const Posture& posture, const DiscomfortParams& params);

/// Largest single QU/QL term of the posture.
double max_limit_penalty(const Posture& posture, const DiscomfortParams& params);

/// One evaluated posture with both objective values.
struct ObjectivePoint {
  double f_fatigue = 0.0;
  double f_discomfort = 0.0;
  Posture posture;
  double distance = 0.0;  // generating reach distance [m]
};

}  // namespace ergopose
